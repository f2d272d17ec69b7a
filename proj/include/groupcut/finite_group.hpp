#pragma once

// The cyclic group problem on (1/q)Z / Z: restriction of periodic functions
// to the grid, continuous interpolation back, and exact finite tests.

#include <optional>
#include <utility>
#include <vector>

#include "groupcut/error.hpp"
#include "groupcut/linalg.hpp"
#include "groupcut/minimality.hpp"
#include "groupcut/pwl.hpp"
#include "groupcut/rat.hpp"

namespace groupcut {

struct FiniteGroupFn {
  long q = 1;
  long f_index = 0;
  std::vector<Rat> values;  // values[i] = g(i/q)

  Rat f() const { return Rat(f_index, q); }
  const Rat& at(long i) const { return values[static_cast<std::size_t>(mod(i))]; }
  long mod(long i) const { return ((i % q) + q) % q; }

  void validate() const {
    if (q < 1) throw InputError("q must be positive");
    if (f_index < 1 || f_index >= q) throw InputError("f_index must lie in [1, q-1]");
    if (values.size() != static_cast<std::size_t>(q)) throw InputError("expected q values");
  }

  friend bool operator==(const FiniteGroupFn&, const FiniteGroupFn&) = default;
};

/// Values of fn on the grid (1/(mq))Z; the result has q' = m q.
inline FiniteGroupFn restrict_to_finite_group(const PwlPeriodic& fn, long q, long m = 1) {
  if (q < 1 || m < 1) throw InputError("q and oversampling factor must be positive");
  long n = q * m;
  Rat pos = fn.f() * Rat(n);
  if (!pos.is_integer()) throw InputError("f = " + fn.f().str() + " is not on the grid (1/" + std::to_string(n) + ")Z");
  if (n > static_cast<long>(RatMatrix::kMaxColumns)) throw CapacityError("grid of size " + std::to_string(n) + " is too large");
  FiniteGroupFn g{n, to_long(pos.num(), "f index"), {}};
  g.values.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) g.values.push_back(fn.eval(Rat(i, n)));
  return g;
}

/// Continuous periodic interpolation with breakpoints (1/q)Z, in canonical form.
inline PwlPeriodic interpolate_to_infinite_group(const FiniteGroupFn& g) {
  g.validate();
  std::vector<std::pair<Rat, Rat>> pts;
  pts.reserve(g.values.size() + 1);
  for (long i = 0; i < g.q; ++i) pts.emplace_back(Rat(i, g.q), g.at(i));
  pts.emplace_back(Rat(1), g.at(0));
  return PwlPeriodic::interpolate(g.f(), pts);
}

/// Same witness conventions as the infinite test, with grid points as
/// locations.
inline MinimalityVerdict finite_minimality_test(const FiniteGroupFn& g) {
  g.validate();
  auto fail = [](WitnessKind kind, Rat value) {
    MinimalityWitness w;
    w.kind = kind;
    w.value = std::move(value);
    return w;
  };
  if (!g.at(0).is_zero()) {
    auto w = fail(WitnessKind::OriginValue, g.at(0));
    w.point = Rat(0);
    return {MinimalityStatus::NotMinimal, w};
  }
  for (long i = 0; i < g.q; ++i) {
    if (g.at(i).sign() < 0) {
      auto w = fail(WitnessKind::Negativity, g.at(i));
      w.point = Rat(i, g.q);
      return {MinimalityStatus::NotMinimal, w};
    }
  }
  if (g.at(g.f_index) != Rat(1)) {
    auto w = fail(WitnessKind::Symmetry, g.at(g.f_index));
    w.point = g.f();
    return {MinimalityStatus::NotMinimal, w};
  }
  for (long i = 0; i < g.q; ++i) {
    Rat sum = g.at(i) + g.at(g.f_index - i);
    if (sum != Rat(1)) {
      auto w = fail(WitnessKind::Symmetry, sum);
      w.vertex = Point2{Rat(i, g.q), Rat(g.mod(g.f_index - i), g.q)};
      return {MinimalityStatus::NotMinimal, w};
    }
  }
  for (long i = 0; i < g.q; ++i) {
    for (long j = i; j < g.q; ++j) {
      Rat d = g.at(i) + g.at(j) - g.at(i + j);
      if (d.sign() < 0) {
        auto w = fail(WitnessKind::Subadditivity, d);
        w.vertex = Point2{Rat(i, g.q), Rat(j, g.q)};
        return {MinimalityStatus::NotMinimal, w};
      }
    }
  }
  return {};
}

/// Null space of {v_0 = 0, v_f = 0, v_i + v_j - v_{i+j mod n} = 0 for (i, j) in pairs}
/// in canonical form.
inline std::vector<RatVector> perturbation_nullspace(long n, long f_index, const std::vector<std::pair<long, long>>& pairs,
                                                     std::size_t* rank_out = nullptr) {
  SparseSystem sys(static_cast<std::size_t>(n));
  auto u = [](long v) { return static_cast<std::size_t>(v); };
  sys.add_equation({{0, Rat(1)}});
  sys.add_equation({{u(f_index), Rat(1)}});
  for (const auto& [i, j] : pairs) {
    long k = (i + j) % n;
    if (i == j) {
      if (k == i) continue;  // v_i = v_0 already
      sys.add_equation({{u(i), Rat(2)}, {u(k), Rat(-1)}});
    } else if (k == i || k == j) {
      sys.add_equation({{u(k == i ? j : i), Rat(1)}});
    } else {
      sys.add_equation({{u(i), Rat(1)}, {u(j), Rat(1)}, {u(k), Rat(-1)}});
    }
    if (sys.rank() == sys.vars()) break;
  }
  if (rank_out) *rank_out = sys.rank();
  return sys.nullspace_basis();
}

enum class ExtremalityStatus { Extreme, NotExtreme };

inline const char* to_string(ExtremalityStatus s) { return s == ExtremalityStatus::Extreme ? "Extreme" : "NotExtreme"; }

struct FiniteCertificate {
  std::vector<Rat> perturbation;
  Rat epsilon;
  FiniteGroupFn g1, g2;
};

struct FiniteExtremalityVerdict {
  ExtremalityStatus status = ExtremalityStatus::Extreme;
  std::size_t rank = 0;
  std::size_t basis_dimension = 0;
  std::size_t additive_pairs = 0;
  std::optional<FiniteCertificate> certificate;
};

/// Largest ε with g ± ε v both minimal: the minimum over non-tight pairs of
/// Δg / |Δv| and over points of g / |v|.
inline Rat finite_ratio_test(const FiniteGroupFn& g, const std::vector<Rat>& v) {
  std::optional<Rat> best;
  auto consider = [&](const Rat& slack, const Rat& dv) {
    if (dv.is_zero()) return;
    Rat r = slack / dv.abs();
    if (!best || r < *best) best = r;
  };
  auto val = [&](long i) -> const Rat& { return v[static_cast<std::size_t>(g.mod(i))]; };
  for (long i = 0; i < g.q; ++i) consider(g.at(i), val(i));
  for (long i = 0; i < g.q; ++i)
    for (long j = i; j < g.q; ++j) consider(g.at(i) + g.at(j) - g.at(i + j), val(i) + val(j) - val(i + j));
  if (!best) throw InputError("perturbation has no direction");
  if (best->sign() <= 0) throw InputError("perturbation is not compatible with the additivity of g");
  return *best;
}

inline FiniteExtremalityVerdict finite_extremality_test(const FiniteGroupFn& g) {
  if (!finite_minimality_test(g).minimal()) throw InputError("function is not minimal");
  std::vector<std::pair<long, long>> pairs;
  for (long i = 0; i < g.q; ++i)
    for (long j = i; j < g.q; ++j)
      if (g.at(i) + g.at(j) == g.at(i + j)) pairs.emplace_back(i, j);
  FiniteExtremalityVerdict out;
  out.additive_pairs = pairs.size();
  auto basis = perturbation_nullspace(g.q, g.f_index, pairs, &out.rank);
  out.basis_dimension = basis.size();
  if (basis.empty()) return out;

  out.status = ExtremalityStatus::NotExtreme;
  FiniteCertificate cert;
  cert.perturbation = basis.front();
  cert.epsilon = finite_ratio_test(g, cert.perturbation) / Rat(2);
  cert.g1 = cert.g2 = g;
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    cert.g1.values[i] += cert.epsilon * cert.perturbation[i];
    cert.g2.values[i] -= cert.epsilon * cert.perturbation[i];
  }
  out.certificate = std::move(cert);
  return out;
}

}  // namespace groupcut
