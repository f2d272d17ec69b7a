#pragma once

// The two-dimensional complex ΔP of a one-row periodic function: the sets
//   F(I, J, K) = {(x, y) : x in I, y in J, x + y in K}
// for faces I, J, K (breakpoints or closed pieces) of the breakpoint complex,
// enumerated once per translation class in the fundamental square [0, 1)^2.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "groupcut/error.hpp"
#include "groupcut/pwl.hpp"
#include "groupcut/rat.hpp"

namespace groupcut {

/// Closed interval [lo, hi]; a point when lo == hi.
struct Interval {
  Rat lo;
  Rat hi;

  bool is_point() const { return lo == hi; }
  bool contains(const Rat& t) const { return lo <= t && t <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  Interval shifted(const Rat& d) const { return {lo + d, hi + d}; }
  friend bool operator==(const Interval&, const Interval&) = default;
  friend bool operator<(const Interval& a, const Interval& b) { return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi); }
};

struct Point2 {
  Rat x;
  Rat y;
  friend bool operator==(const Point2&, const Point2&) = default;
  friend bool operator<(const Point2& a, const Point2& b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); }
};

struct DeltaFace {
  int dim = 0;
  Interval I, J, K;               // smallest complex faces containing the projections
  std::vector<Point2> vertices;   // dim 2: counter-clockwise from the lexicographic minimum
  Interval p1, p2, p3;            // projections x, y, x + y

  bool contains(const Point2& p) const { return I.contains(p.x) && J.contains(p.y) && K.contains(p.x + p.y); }
  Point2 barycenter() const {
    Rat sx(0), sy(0);
    for (const auto& v : vertices) {
      sx += v.x;
      sy += v.y;
    }
    Rat n(static_cast<long>(vertices.size()));
    return {sx / n, sy / n};
  }
};

/// Sorting key for deterministic output: dimension, then vertex list.
inline bool face_less(const DeltaFace& a, const DeltaFace& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  return a.vertices < b.vertices;
}

namespace detail {

inline Rat cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Clips a convex (possibly degenerate) polygon against lo <= x + y (keep_above)
// or x + y <= hi.
inline std::vector<Point2> clip_diagonal(const std::vector<Point2>& poly, const Rat& s, bool keep_above) {
  std::vector<Point2> out;
  auto inside = [&](const Point2& p) { return keep_above ? p.x + p.y >= s : p.x + p.y <= s; };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2& p = poly[(i + poly.size() - 1) % poly.size()];
    const Point2& q = poly[i];
    bool pin = inside(p), qin = inside(q);
    auto cut = [&] {
      Rat sp = p.x + p.y, sq = q.x + q.y;
      Rat t = (s - sp) / (sq - sp);
      return Point2{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
    };
    if (qin) {
      if (!pin) out.push_back(cut());
      out.push_back(q);
    } else if (pin) {
      out.push_back(cut());
    }
  }
  return out;
}

// Removes repeated and collinear vertices of a convex cyclic polygon.
inline std::vector<Point2> simplify(std::vector<Point2> poly) {
  std::vector<Point2> uniq;
  for (auto& p : poly)
    if (uniq.empty() || !(uniq.back() == p)) uniq.push_back(p);
  while (uniq.size() > 1 && uniq.front() == uniq.back()) uniq.pop_back();
  if (uniq.size() <= 2) {
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    return uniq;
  }
  bool changed = true;
  while (changed && uniq.size() > 2) {
    changed = false;
    for (std::size_t i = 0; i < uniq.size(); ++i) {
      const auto& a = uniq[(i + uniq.size() - 1) % uniq.size()];
      const auto& b = uniq[i];
      const auto& c = uniq[(i + 1) % uniq.size()];
      if (cross(a, b, c).is_zero()) {
        uniq.erase(uniq.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  if (uniq.size() == 2) std::sort(uniq.begin(), uniq.end());
  return uniq;
}

// F(I, J, K) as a vertex list (empty when the set is empty).
inline std::vector<Point2> face_polygon(const Interval& I, const Interval& J, const Interval& K) {
  std::vector<Point2> box{{I.lo, J.lo}, {I.hi, J.lo}, {I.hi, J.hi}, {I.lo, J.hi}};
  auto poly = clip_diagonal(box, K.lo, true);
  if (poly.empty()) return {};
  poly = clip_diagonal(poly, K.hi, false);
  if (poly.empty()) return {};
  poly = simplify(std::move(poly));
  if (poly.size() > 2) {
    auto it = std::min_element(poly.begin(), poly.end());
    std::rotate(poly.begin(), it, poly.end());
  }
  return poly;
}

}  // namespace detail

/// The one-dimensional breakpoint complex of a function, extended
/// periodically so faces can be looked up anywhere on the line.
class BreakpointComplex {
 public:
  explicit BreakpointComplex(std::vector<Rat> breakpoints) : bps_(std::move(breakpoints)) {
    if (bps_.empty() || !bps_.front().is_zero()) throw InputError("breakpoint complex needs 0 as a breakpoint");
  }

  const std::vector<Rat>& breakpoints() const { return bps_; }

  /// Faces whose lower end lies in [0, 1): every breakpoint and every piece.
  std::vector<Interval> faces_in_unit() const {
    std::vector<Interval> out;
    for (std::size_t i = 0; i < bps_.size(); ++i) {
      out.push_back({bps_[i], bps_[i]});
      out.push_back({bps_[i], i + 1 < bps_.size() ? bps_[i + 1] : Rat(1)});
    }
    return out;
  }

  /// Smallest face containing the closed interval s (which must not cross a
  /// breakpoint in its interior).
  Interval smallest_face(const Interval& s) const {
    mpz_class k = s.lo.floor();
    Rat shift(k, 1);
    Rat lo = s.lo - shift, hi = s.hi - shift;
    auto it = std::upper_bound(bps_.begin(), bps_.end(), lo);
    std::size_t i = static_cast<std::size_t>(it - bps_.begin()) - 1;
    if (bps_[i] == lo && lo == hi) return {s.lo, s.hi};
    Rat end = i + 1 < bps_.size() ? bps_[i + 1] : Rat(1);
    if (hi > end) throw std::logic_error("interval crosses a breakpoint");
    return {bps_[i] + shift, end + shift};
  }

 private:
  std::vector<Rat> bps_;
};

namespace detail {

inline Interval projection(const std::vector<Point2>& vs, int which) {
  auto coord = [which](const Point2& p) { return which == 0 ? p.x : which == 1 ? p.y : p.x + p.y; };
  Rat lo = coord(vs.front()), hi = lo;
  for (const auto& v : vs) {
    Rat c = coord(v);
    if (c < lo) lo = c;
    if (c > hi) hi = c;
  }
  return {lo, hi};
}

}  // namespace detail

/// All faces of ΔP up to translation by Z^2, each translated so that its
/// lowest x and lowest y lie in [0, 1). Sorted by (dim, vertex list).
inline std::vector<DeltaFace> enumerate_faces(const BreakpointComplex& complex) {
  auto unit = complex.faces_in_unit();
  std::vector<Interval> ks;
  for (int k = 0; k <= 1; ++k)
    for (const auto& f : unit) ks.push_back(f.shifted(Rat(k)));
  ks.push_back({Rat(2), Rat(2)});
  std::sort(ks.begin(), ks.end());

  std::map<std::vector<Point2>, DeltaFace> found;
  for (const auto& I : unit) {
    for (const auto& J : unit) {
      Rat smin = I.lo + J.lo, smax = I.hi + J.hi;
      // Candidate K faces meet [smin, smax]; ks is sorted by lower end.
      auto first = std::lower_bound(ks.begin(), ks.end(), smin, [](const Interval& a, const Rat& v) { return a.hi < v; });
      for (auto it = first; it != ks.end() && it->lo <= smax; ++it) {
        if (it->hi < smin) continue;
        auto poly = detail::face_polygon(I, J, *it);
        if (poly.empty()) continue;
        // Translate into canonical position.
        Rat minx = poly.front().x, miny = poly.front().y;
        for (const auto& p : poly) {
          if (p.x < minx) minx = p.x;
          if (p.y < miny) miny = p.y;
        }
        Rat dx(minx.floor(), 1), dy(miny.floor(), 1);
        if (!dx.is_zero() || !dy.is_zero()) {
          for (auto& p : poly) p = {p.x - dx, p.y - dy};
          if (poly.size() > 2) {
            auto mn = std::min_element(poly.begin(), poly.end());
            std::rotate(poly.begin(), mn, poly.end());
          }
        }
        if (found.count(poly)) continue;
        DeltaFace face;
        face.dim = poly.size() >= 3 ? 2 : static_cast<int>(poly.size()) - 1;
        face.p1 = detail::projection(poly, 0);
        face.p2 = detail::projection(poly, 1);
        face.p3 = detail::projection(poly, 2);
        face.I = complex.smallest_face(face.p1);
        face.J = complex.smallest_face(face.p2);
        face.K = complex.smallest_face(face.p3);
        face.vertices = poly;
        found.emplace(std::move(poly), std::move(face));
      }
    }
  }
  std::vector<DeltaFace> out;
  out.reserve(found.size());
  for (auto& [k, f] : found) out.push_back(std::move(f));
  std::stable_sort(out.begin(), out.end(), face_less);
  return out;
}

inline std::vector<DeltaFace> enumerate_faces(const PwlPeriodic& fn) {
  return enumerate_faces(BreakpointComplex(fn.breakpoints()));
}

/// Vertices of ΔP in [0, 1)^2: points where at least two of x, y, x + y
/// (mod 1) are breakpoints. Sorted lexicographically.
inline std::vector<Point2> delta_vertices(const std::vector<Rat>& bps) {
  std::set<Point2> pts;
  std::vector<Rat> sums;
  for (const auto& b : bps) {
    sums.push_back(b);
    sums.push_back(b + Rat(1));
  }
  for (const auto& a : bps) {
    for (const auto& b : bps) pts.insert({a, b});
    for (const auto& s : sums) {
      Rat other = s - a;
      if (other >= Rat(0) && other < Rat(1)) {
        pts.insert({a, other});
        pts.insert({other, a});
      }
    }
  }
  return {pts.begin(), pts.end()};
}

inline std::vector<Point2> delta_vertices(const PwlPeriodic& fn) { return delta_vertices(fn.breakpoints()); }

/// Side from which a coordinate approaches `t` while staying in the relative
/// interior of the face `face` of the breakpoint complex.
inline Side approach_side(const Interval& face, const Rat& t) {
  if (face.is_point()) return Side::At;
  if (t == face.lo) return Side::Right;
  if (t == face.hi) return Side::Left;
  return Side::At;
}

/// The three one-sided terms of the limit of Δπ at `vertex` from relint(face).
struct DeltaLimitTerms {
  Side sx, sy, ssum;
  Rat px, py, psum;
  Rat value() const { return px + py - psum; }
};

inline DeltaLimitTerms delta_limit_terms(const PwlPeriodic& fn, const DeltaFace& face, const Point2& vertex) {
  if (!face.contains(vertex)) throw InputError("vertex is not in the face");
  Rat s = vertex.x + vertex.y;
  DeltaLimitTerms t{approach_side(face.I, vertex.x), approach_side(face.J, vertex.y), approach_side(face.K, s),
                    Rat(0), Rat(0), Rat(0)};
  t.px = fn.limit(vertex.x, t.sx);
  t.py = fn.limit(vertex.y, t.sy);
  t.psum = fn.limit(s, t.ssum);
  return t;
}

/// lim Δπ(x, y) as (x, y) -> vertex inside relint(face). Equals
/// π(x) + π(y) - π(x + y) for continuous π.
inline Rat delta_pi_limit(const PwlPeriodic& fn, const DeltaFace& face, const Point2& vertex) {
  return delta_limit_terms(fn, face, vertex).value();
}

inline Rat delta_pi(const PwlPeriodic& fn, const Rat& x, const Rat& y) { return fn.eval(x) + fn.eval(y) - fn.eval(x + y); }

struct AdditivityReport {
  std::vector<DeltaFace> faces;          // every face of ΔP in canonical position
  std::vector<std::size_t> additive;     // indices into faces
  std::vector<std::size_t> maximal;      // additive faces not inside another additive face
  std::vector<std::size_t> symmetry;     // faces contained in x + y = f (mod 1)
  std::vector<Interval> covered;         // merged projections of 2-d additive faces, within [0, 1]

  std::vector<const DeltaFace*> additive_faces() const {
    std::vector<const DeltaFace*> out;
    for (auto i : additive) out.push_back(&faces[i]);
    return out;
  }
};

/// Δπ vanishes on relint(face): every vertex limit is zero and, for
/// discontinuous π, also the value at the barycenter.
inline bool face_is_additive(const PwlPeriodic& fn, const DeltaFace& face) {
  for (const auto& v : face.vertices)
    if (!delta_pi_limit(fn, face, v).is_zero()) return false;
  if (!fn.is_continuous() && face.dim > 0) {
    Point2 c = face.barycenter();
    if (!delta_pi(fn, c.x, c.y).is_zero()) return false;
  }
  return true;
}

/// Sorts and merges closed intervals, first folding them into [0, 1].
inline std::vector<Interval> merge_mod_one(std::vector<Interval> pieces) {
  std::vector<Interval> folded;
  for (const auto& p : pieces) {
    Rat shift(p.lo.floor(), 1);
    Interval q = p.shifted(-shift);
    if (q.hi <= Rat(1)) {
      folded.push_back(q);
    } else {
      folded.push_back({q.lo, Rat(1)});
      folded.push_back({Rat(0), q.hi - Rat(1)});
    }
  }
  std::sort(folded.begin(), folded.end());
  std::vector<Interval> out;
  for (const auto& p : folded) {
    if (!out.empty() && p.lo <= out.back().hi) {
      if (p.hi > out.back().hi) out.back().hi = p.hi;
    } else {
      out.push_back(p);
    }
  }
  return out;
}

namespace detail {

inline std::vector<Point2> canonical_translate(std::vector<Point2> vs) {
  Rat minx = vs.front().x, miny = vs.front().y;
  for (const auto& p : vs) {
    if (p.x < minx) minx = p.x;
    if (p.y < miny) miny = p.y;
  }
  Rat dx(minx.floor(), 1), dy(miny.floor(), 1);
  for (auto& p : vs) p = {p.x - dx, p.y - dy};
  if (vs.size() == 2) std::sort(vs.begin(), vs.end());
  return vs;
}

}  // namespace detail

inline AdditivityReport additivity_report(const PwlPeriodic& fn) {
  AdditivityReport rep;
  rep.faces = enumerate_faces(fn);
  std::map<std::vector<Point2>, std::size_t> index;
  for (std::size_t i = 0; i < rep.faces.size(); ++i) index.emplace(rep.faces[i].vertices, i);

  std::vector<bool> additive(rep.faces.size(), false);
  for (std::size_t i = 0; i < rep.faces.size(); ++i) {
    const auto& face = rep.faces[i];
    additive[i] = face_is_additive(fn, face);
    if (additive[i]) rep.additive.push_back(i);
    if (face.p3.is_point() && (face.p3.lo - fn.f()).is_integer()) rep.symmetry.push_back(i);
  }

  // An additive face is non-maximal when it is a proper face of an additive
  // face; the proper faces of a polygon are its edges and vertices.
  std::vector<bool> covered_by_larger(rep.faces.size(), false);
  auto mark = [&](std::vector<Point2> sub) {
    auto it = index.find(detail::canonical_translate(std::move(sub)));
    if (it != index.end()) covered_by_larger[it->second] = true;
  };
  for (auto i : rep.additive) {
    const auto& vs = rep.faces[i].vertices;
    if (rep.faces[i].dim == 0) continue;
    for (std::size_t k = 0; k < vs.size(); ++k) {
      mark({vs[k]});
      if (rep.faces[i].dim == 2) mark({vs[k], vs[(k + 1) % vs.size()]});
    }
  }
  std::vector<Interval> shadows;
  for (auto i : rep.additive) {
    if (!covered_by_larger[i]) rep.maximal.push_back(i);
    if (rep.faces[i].dim == 2) {
      shadows.push_back(rep.faces[i].p1);
      shadows.push_back(rep.faces[i].p2);
      shadows.push_back(rep.faces[i].p3);
    }
  }
  rep.covered = merge_mod_one(std::move(shadows));
  return rep;
}

struct FaceCounts {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t triangles = 0;  // two-dimensional faces
};

/// Face counts of ΔP for a function whose breakpoints are exactly (1/q)Z.
/// Expected: 2 q^2 two-dimensional faces.
inline FaceCounts face_count_check(const PwlPeriodic& fn) {
  const auto& bps = fn.breakpoints();
  Rat step = Rat(1) / Rat(static_cast<long>(bps.size()));
  for (std::size_t i = 0; i < bps.size(); ++i)
    if (bps[i] != step * Rat(static_cast<long>(i))) throw InputError("breakpoints are not equally spaced");
  FaceCounts c;
  for (const auto& face : enumerate_faces(fn)) {
    if (face.dim == 0) ++c.vertices;
    if (face.dim == 1) ++c.edges;
    if (face.dim == 2) ++c.triangles;
  }
  return c;
}

}  // namespace groupcut
