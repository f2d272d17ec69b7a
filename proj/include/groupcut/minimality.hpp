#pragma once

// Minimality of a one-row periodic function by the finite vertex test:
// π(0) = 0, π ≥ 0, π(f) = 1, symmetry on x + y ≡ f, and Δπ_F ≥ 0 at
// every vertex of every face of ΔP (limits taken from inside the face).

#include <optional>
#include <string>

#include "groupcut/delta_complex.hpp"
#include "groupcut/pwl.hpp"
#include "groupcut/rat.hpp"

namespace groupcut {

enum class MinimalityStatus { Minimal, NotMinimal };
enum class WitnessKind { OriginValue, Negativity, Symmetry, Subadditivity };

inline const char* to_string(MinimalityStatus s) { return s == MinimalityStatus::Minimal ? "Minimal" : "NotMinimal"; }

inline const char* to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::OriginValue: return "originValue";
    case WitnessKind::Negativity: return "negativity";
    case WitnessKind::Symmetry: return "symmetry";
    case WitnessKind::Subadditivity: return "subadditivity";
  }
  return "";
}

/// One violated condition.
///
/// - originValue: `point` = 0, `value` = π(0).
/// - negativity: `point`, `side`, `value` = the negative value or limit.
/// - symmetry: either `point` = f with `value` = π(f), or `vertex` with
///   `value` = π(x) + π(y) (limits when `face` is set), which should be 1.
/// - subadditivity: `vertex`, `face`, `value` = Δπ_F(vertex) < 0.
struct MinimalityWitness {
  WitnessKind kind = WitnessKind::OriginValue;
  std::optional<Rat> point;
  std::optional<Point2> vertex;
  std::optional<DeltaFace> face;
  Side side = Side::At;
  Rat value;
};

struct MinimalityVerdict {
  MinimalityStatus status = MinimalityStatus::Minimal;
  std::optional<MinimalityWitness> witness;

  bool minimal() const { return status == MinimalityStatus::Minimal; }
};

namespace detail {

inline MinimalityVerdict not_minimal(MinimalityWitness w) { return {MinimalityStatus::NotMinimal, std::move(w)}; }

}  // namespace detail

inline MinimalityVerdict minimality_test(const PwlPeriodic& input) {
  if (input.f() <= Rat(0) || input.f() >= Rat(1)) throw InputError("f must lie in (0, 1)");
  const PwlPeriodic fn = input.refined({input.f()});

  if (!fn.eval(Rat(0)).is_zero()) {
    MinimalityWitness w;
    w.kind = WitnessKind::OriginValue;
    w.point = Rat(0);
    w.value = fn.eval(Rat(0));
    return detail::not_minimal(std::move(w));
  }

  for (const auto& b : fn.breakpoints()) {
    for (Side s : {Side::Left, Side::At, Side::Right}) {
      Rat v = fn.limit(b, s);
      if (v.sign() < 0) {
        MinimalityWitness w;
        w.kind = WitnessKind::Negativity;
        w.point = b;
        w.side = s;
        w.value = v;
        return detail::not_minimal(std::move(w));
      }
    }
  }

  if (fn.eval(fn.f()) != Rat(1)) {
    MinimalityWitness w;
    w.kind = WitnessKind::Symmetry;
    w.point = fn.f();
    w.value = fn.eval(fn.f());
    return detail::not_minimal(std::move(w));
  }

  const auto faces = enumerate_faces(fn);

  for (const auto& face : faces) {
    if (!face.p3.is_point() || !(face.p3.lo - fn.f()).is_integer()) continue;
    if (face.dim > 0) {
      Point2 c = face.barycenter();
      Rat sum = fn.eval(c.x) + fn.eval(c.y);
      if (sum != Rat(1)) {
        MinimalityWitness w;
        w.kind = WitnessKind::Symmetry;
        w.vertex = c;
        w.value = sum;
        return detail::not_minimal(std::move(w));
      }
    }
    for (const auto& v : face.vertices) {
      auto t = delta_limit_terms(fn, face, v);
      Rat sum = t.px + t.py;
      if (sum != Rat(1)) {
        MinimalityWitness w;
        w.kind = WitnessKind::Symmetry;
        w.vertex = v;
        w.face = face;
        w.value = sum;
        return detail::not_minimal(std::move(w));
      }
    }
  }

  for (const auto& face : faces) {
    for (const auto& v : face.vertices) {
      Rat d = delta_pi_limit(fn, face, v);
      if (d.sign() < 0) {
        MinimalityWitness w;
        w.kind = WitnessKind::Subadditivity;
        w.vertex = v;
        w.face = face;
        w.value = d;
        return detail::not_minimal(std::move(w));
      }
    }
  }
  return {};
}

/// Re-evaluates a witness against the function and confirms it is a genuine
/// violation with the recorded value.
inline bool witness_reproduces(const PwlPeriodic& input, const MinimalityWitness& w) {
  const PwlPeriodic fn = input.refined({input.f()});
  switch (w.kind) {
    case WitnessKind::OriginValue:
      return w.point && w.point->is_zero() && fn.eval(Rat(0)) == w.value && !w.value.is_zero();
    case WitnessKind::Negativity:
      return w.point && fn.limit(*w.point, w.side) == w.value && w.value.sign() < 0;
    case WitnessKind::Symmetry: {
      if (w.value == Rat(1)) return false;
      if (w.point) return fn.eval(*w.point) == w.value && (*w.point - fn.f()).is_integer();
      if (!w.vertex || !((w.vertex->x + w.vertex->y - fn.f()).is_integer())) return false;
      if (!w.face) return fn.eval(w.vertex->x) + fn.eval(w.vertex->y) == w.value;
      auto t = delta_limit_terms(fn, *w.face, *w.vertex);
      return t.px + t.py == w.value;
    }
    case WitnessKind::Subadditivity:
      return w.vertex && w.face && w.value.sign() < 0 && delta_pi_limit(fn, *w.face, *w.vertex) == w.value;
  }
  return false;
}

}  // namespace groupcut
