#pragma once

// Z-periodic piecewise linear functions on the real line with rational
// breakpoints, possibly discontinuous at breakpoints.
//
// A function is stored over the fundamental domain [0, 1): sorted breakpoints
// starting at 0 and, at every breakpoint, the triple (left limit, value,
// right limit). Slopes of the open pieces are derived from neighbouring
// triples; the last piece runs from the last breakpoint to 1 and ends at the
// left limit stored at 0.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "groupcut/error.hpp"
#include "groupcut/rat.hpp"

namespace groupcut {

enum class Side { Left, At, Right };

struct LimitTriple {
  Rat left;
  Rat value;
  Rat right;

  bool continuous() const { return left == value && value == right; }
  friend bool operator==(const LimitTriple&, const LimitTriple&) = default;
};

class PwlPeriodic {
 public:
  /// Validates ordering and range constraints, then derives the slopes.
  PwlPeriodic(Rat f, std::vector<Rat> breakpoints, std::vector<LimitTriple> limits)
      : f_(std::move(f)), breakpoints_(std::move(breakpoints)), limits_(std::move(limits)) {
    if (f_ <= Rat(0) || f_ >= Rat(1)) throw InputError("f must lie in (0, 1), got " + f_.str());
    if (breakpoints_.size() != limits_.size())
      throw InputError("breakpoint and limit lists differ in length");
    if (breakpoints_.empty() || !breakpoints_.front().is_zero())
      throw InputError("breakpoints must start with 0");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
      if (breakpoints_[i] < Rat(0) || breakpoints_[i] >= Rat(1))
        throw InputError("breakpoint " + breakpoints_[i].str() + " outside [0, 1)");
      if (i > 0 && breakpoints_[i] <= breakpoints_[i - 1])
        throw InputError("breakpoints must be strictly increasing");
    }
    derive_slopes();
  }

  /// Same as above but also checks caller-supplied slopes against the ones
  /// implied by the limit triples.
  PwlPeriodic(Rat f, std::vector<Rat> breakpoints, std::vector<LimitTriple> limits, const std::vector<Rat>& slopes)
      : PwlPeriodic(std::move(f), std::move(breakpoints), std::move(limits)) {
    if (slopes != slopes_) throw InputError("slopes are inconsistent with the limit values");
  }

  /// Continuous interpolation through (x_i, y_i) with 0 = x_0 < ... < x_n = 1
  /// and y_n = y_0.
  static PwlPeriodic interpolate(Rat f, const std::vector<std::pair<Rat, Rat>>& points) {
    if (points.size() < 2 || !points.front().first.is_zero() || points.back().first != Rat(1))
      throw InputError("interpolation points must span [0, 1]");
    if (points.back().second != points.front().second)
      throw InputError("interpolation values at 0 and 1 must agree");
    std::vector<Rat> bps;
    std::vector<LimitTriple> lims;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
      bps.push_back(points[i].first);
      lims.push_back({points[i].second, points[i].second, points[i].second});
    }
    return PwlPeriodic(std::move(f), std::move(bps), std::move(lims)).canonical();
  }

  const Rat& f() const { return f_; }
  const std::vector<Rat>& breakpoints() const { return breakpoints_; }
  const std::vector<LimitTriple>& limits() const { return limits_; }
  /// slopes()[i] is the slope on (b_i, b_{i+1}), with b_n = 1.
  const std::vector<Rat>& slopes() const { return slopes_; }
  std::size_t size() const { return breakpoints_.size(); }

  /// Right end of piece i (1 for the last piece).
  Rat piece_end(std::size_t i) const { return i + 1 < size() ? breakpoints_[i + 1] : Rat(1); }

  bool is_continuous() const {
    return std::all_of(limits_.begin(), limits_.end(), [](const LimitTriple& t) { return t.continuous(); });
  }

  /// Index of the breakpoint equal to t (t in [0,1)), if any.
  std::optional<std::size_t> breakpoint_index(const Rat& t) const {
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
    if (it != breakpoints_.end() && *it == t) return static_cast<std::size_t>(it - breakpoints_.begin());
    return std::nullopt;
  }

  /// Index of the piece [b_i, b_{i+1}) containing t in [0, 1).
  std::size_t piece_index(const Rat& t) const {
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  }

  Rat eval(const Rat& x) const {
    Rat t = x.frac();
    std::size_t i = piece_index(t);
    if (breakpoints_[i] == t) return limits_[i].value;
    return limits_[i].right + slopes_[i] * (t - breakpoints_[i]);
  }

  Rat limit(const Rat& x, Side side) const {
    if (side == Side::At) return eval(x);
    Rat t = x.frac();
    if (auto bi = breakpoint_index(t)) return side == Side::Left ? limits_[*bi].left : limits_[*bi].right;
    return eval(t);
  }

  /// Inserts extra breakpoints (reduced mod 1) without changing the function.
  PwlPeriodic refined(const std::vector<Rat>& points) const {
    std::set<Rat> all(breakpoints_.begin(), breakpoints_.end());
    for (const auto& p : points) all.insert(p.frac());
    if (all.size() == breakpoints_.size()) return *this;
    std::vector<Rat> bps(all.begin(), all.end());
    std::vector<LimitTriple> lims;
    lims.reserve(bps.size());
    for (const auto& b : bps) lims.push_back({limit(b, Side::Left), eval(b), limit(b, Side::Right)});
    return PwlPeriodic(f_, std::move(bps), std::move(lims));
  }

  /// Drops breakpoints other than 0 where the function is continuous and the
  /// neighbouring slopes agree.
  PwlPeriodic canonical() const {
    std::vector<Rat> bps{breakpoints_.front()};
    std::vector<LimitTriple> lims{limits_.front()};
    for (std::size_t i = 1; i < size(); ++i) {
      if (limits_[i].continuous() && slopes_[i - 1] == slopes_[i]) continue;
      bps.push_back(breakpoints_[i]);
      lims.push_back(limits_[i]);
    }
    if (bps.size() == size()) return *this;
    return PwlPeriodic(f_, std::move(bps), std::move(lims));
  }

  PwlPeriodic with_f(Rat f) const { return PwlPeriodic(std::move(f), breakpoints_, limits_); }

  /// Structural equality of canonical forms.
  friend bool operator==(const PwlPeriodic& a, const PwlPeriodic& b) {
    PwlPeriodic ca = a.canonical(), cb = b.canonical();
    return ca.f_ == cb.f_ && ca.breakpoints_ == cb.breakpoints_ && ca.limits_ == cb.limits_;
  }

 private:
  void derive_slopes() {
    slopes_.clear();
    slopes_.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
      const Rat& start = limits_[i].right;
      const Rat& end = i + 1 < size() ? limits_[i + 1].left : limits_[0].left;
      slopes_.push_back((end - start) / (piece_end(i) - breakpoints_[i]));
    }
  }

  Rat f_;
  std::vector<Rat> breakpoints_;
  std::vector<LimitTriple> limits_;
  std::vector<Rat> slopes_;
};

inline PwlPeriodic make_pwl(Rat f, std::vector<Rat> breakpoints, std::vector<LimitTriple> limits) {
  return PwlPeriodic(std::move(f), std::move(breakpoints), std::move(limits));
}

inline Rat eval(const PwlPeriodic& fn, const Rat& x) { return fn.eval(x); }
inline Rat limit(const PwlPeriodic& fn, const Rat& x, Side side) { return fn.limit(x, side); }

/// Least common denominator of the breakpoints and of f.
inline mpz_class breakpoint_denominator(const PwlPeriodic& fn) {
  mpz_class q = fn.f().den();
  for (const auto& b : fn.breakpoints()) q = lcm(q, b.den());
  return q;
}

/// a*fn1 + b*fn2 on the merged breakpoint set; f is shared.
inline PwlPeriodic affine_combine(const Rat& a, const PwlPeriodic& fn1, const Rat& b, const PwlPeriodic& fn2) {
  if (fn1.f() != fn2.f()) throw InputError("affine_combine requires equal f (" + fn1.f().str() + " vs " + fn2.f().str() + ")");
  std::set<Rat> all(fn1.breakpoints().begin(), fn1.breakpoints().end());
  all.insert(fn2.breakpoints().begin(), fn2.breakpoints().end());
  std::vector<Rat> bps(all.begin(), all.end());
  std::vector<LimitTriple> lims;
  lims.reserve(bps.size());
  for (const auto& x : bps) {
    lims.push_back({a * fn1.limit(x, Side::Left) + b * fn2.limit(x, Side::Left),
                    a * fn1.eval(x) + b * fn2.eval(x),
                    a * fn1.limit(x, Side::Right) + b * fn2.limit(x, Side::Right)});
  }
  return PwlPeriodic(fn1.f(), std::move(bps), std::move(lims)).canonical();
}

/// Continuous piecewise affine map on [0, 1] given by its vertices. Used as
/// the inner argument of a composition; inner(1) - inner(0) must be an
/// integer so the composition stays Z-periodic.
struct InnerMap {
  std::vector<Rat> xs;  // 0 = xs[0] < ... < xs.back() = 1
  std::vector<Rat> ys;

  static InnerMap linear(const Rat& slope) { return {{Rat(0), Rat(1)}, {Rat(0), slope}}; }

  void validate() const {
    if (xs.size() < 2 || xs.size() != ys.size()) throw InputError("inner map needs at least two vertices");
    if (!xs.front().is_zero() || xs.back() != Rat(1)) throw InputError("inner map must be defined on [0, 1]");
    for (std::size_t i = 1; i < xs.size(); ++i)
      if (xs[i] <= xs[i - 1]) throw InputError("inner map vertices must be strictly increasing");
    if (!(ys.back() - ys.front()).is_integer())
      throw InputError("inner map must satisfy inner(1) - inner(0) in Z");
  }

  Rat slope(std::size_t piece) const { return (ys[piece + 1] - ys[piece]) / (xs[piece + 1] - xs[piece]); }

  Rat operator()(const Rat& x) const {
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = it == xs.end() ? xs.size() - 2 : static_cast<std::size_t>(it - xs.begin()) - 1;
    return ys[i] + slope(i) * (x - xs[i]);
  }
};

/// outer(inner(x)) for x in [0, 1), extended periodically.
///
/// The result's f is `f` when given, otherwise the smallest x in (0, 1) with
/// inner(x) = outer.f (mod 1).
inline PwlPeriodic compose_pwl(const PwlPeriodic& outer, const InnerMap& inner, std::optional<Rat> f = std::nullopt) {
  inner.validate();
  std::set<Rat> pts(inner.xs.begin(), inner.xs.end() - 1);
  std::optional<Rat> smallest_f;
  auto preimages = [&](std::size_t j, const Rat& target, auto&& sink) {
    const Rat& y0 = inner.ys[j];
    const Rat& y1 = inner.ys[j + 1];
    if (y0 == y1) return;
    Rat lo = min(y0, y1), hi = max(y0, y1);
    mpz_class kmin = (lo - target).floor();
    mpz_class kmax = (hi - target).floor();
    for (mpz_class k = kmin; k <= kmax; ++k) {
      Rat y = target + Rat(k, 1);
      if (y < lo || y > hi) continue;
      sink(inner.xs[j] + (y - y0) / inner.slope(j));
    }
  };
  for (std::size_t j = 0; j + 1 < inner.xs.size(); ++j) {
    for (const auto& b : outer.breakpoints())
      preimages(j, b, [&](const Rat& x) {
        if (x < Rat(1)) pts.insert(x);
      });
    if (!f)
      preimages(j, outer.f(), [&](const Rat& x) {
        if (x > Rat(0) && x < Rat(1) && (!smallest_f || x < *smallest_f)) smallest_f = x;
      });
  }
  Rat result_f;
  if (f) {
    result_f = *f;
  } else if (smallest_f) {
    result_f = *smallest_f;
  } else {
    throw InputError("composition has no point mapping to f; pass f explicitly");
  }

  std::size_t last = inner.xs.size() - 2;
  auto side_value = [&](const Rat& y, const Rat& slope, bool from_left) {
    if (slope.is_zero()) return outer.eval(y);
    bool increasing_towards = (slope.sign() > 0) == from_left;
    return outer.limit(y, increasing_towards ? Side::Left : Side::Right);
  };
  std::vector<Rat> bps(pts.begin(), pts.end());
  std::vector<LimitTriple> lims;
  lims.reserve(bps.size());
  for (const auto& x : bps) {
    Rat y = inner(x);
    // Piece on the left of x; at x = 0 that is the last piece ending at 1.
    std::size_t left_piece;
    Rat y_left = y;
    if (x.is_zero()) {
      left_piece = last;
      y_left = inner.ys.back();
    } else {
      auto it = std::lower_bound(inner.xs.begin(), inner.xs.end(), x);
      left_piece = static_cast<std::size_t>(it - inner.xs.begin()) - 1;
    }
    std::size_t right_piece = static_cast<std::size_t>(std::upper_bound(inner.xs.begin(), inner.xs.end(), x) - inner.xs.begin()) - 1;
    lims.push_back({side_value(y_left, inner.slope(left_piece), true), outer.eval(y),
                    side_value(y, inner.slope(right_piece), false)});
  }
  return PwlPeriodic(std::move(result_f), std::move(bps), std::move(lims)).canonical();
}

/// x -> fn(lambda * x) for a nonzero integer lambda. The new f is the
/// smallest x in (0, 1) with lambda * x = f (mod 1).
inline PwlPeriodic precompose_scale(const PwlPeriodic& fn, long lambda) {
  if (lambda == 0) throw InputError("scaling factor must be a nonzero integer");
  Rat f = lambda > 0 ? fn.f() / Rat(lambda) : (Rat(1) - fn.f()) / Rat(-lambda);
  return compose_pwl(fn, InnerMap::linear(Rat(lambda)), f);
}

struct SlopeReport {
  std::vector<Rat> distinct_slopes;  // sorted ascending
  bool is_continuous = false;
  bool left_continuous_at_zero = false;
  bool right_continuous_at_zero = false;
};

inline SlopeReport slope_report(const PwlPeriodic& fn) {
  std::set<Rat> s(fn.slopes().begin(), fn.slopes().end());
  const auto& z = fn.limits().front();
  return {std::vector<Rat>(s.begin(), s.end()), fn.is_continuous(), z.left == z.value, z.right == z.value};
}

}  // namespace groupcut
