#pragma once

// Extremality of continuous piecewise linear functions with rational
// breakpoints. The function is restricted to the oversampled grid
// (1/(mq))Z with m >= 3; it is extreme exactly when the only grid function
// vanishing at 0 and f and additive on every additive grid pair is zero.
// Otherwise a perturbation is interpolated from the grid and scaled into a
// certificate π ± π̄.

#include <optional>
#include <utility>
#include <vector>

#include "groupcut/delta_complex.hpp"
#include "groupcut/error.hpp"
#include "groupcut/finite_group.hpp"
#include "groupcut/linalg.hpp"
#include "groupcut/minimality.hpp"
#include "groupcut/pwl.hpp"

namespace groupcut {

/// Unordered additive pairs (i, j), i <= j, of the grid (1/n)Z, sorted.
struct AdditivePairs {
  long n = 0;
  std::vector<std::pair<long, long>> pairs;

  bool contains(long i, long j) const {
    i = ((i % n) + n) % n;
    j = ((j % n) + n) % n;
    if (i > j) std::swap(i, j);
    return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(i, j));
  }
};

struct PerturbationBasis {
  long q = 0;
  long m = 0;
  long n = 0;        // grid size m q
  long f_index = 0;  // f = f_index / n
  std::size_t rank = 0;
  std::size_t additive_pairs = 0;
  std::vector<RatVector> basis;
};

struct PerturbationCertificate {
  PwlPeriodic perturbation;
  Rat epsilon;
  PwlPeriodic pi1;
  PwlPeriodic pi2;
};

struct ExtremalityDiagnostics {
  long q = 0;
  long m = 0;
  long grid_size = 0;
  std::size_t rank = 0;
  std::size_t basis_dimension = 0;
  std::size_t additive_pairs = 0;
  std::vector<Interval> covered;
};

struct ExtremalityVerdict {
  ExtremalityStatus status = ExtremalityStatus::Extreme;
  std::optional<PerturbationCertificate> certificate;
  ExtremalityDiagnostics diagnostics;

  bool extreme() const { return status == ExtremalityStatus::Extreme; }
};

namespace detail {

inline long grid_denominator(const PwlPeriodic& fn) { return to_long(breakpoint_denominator(fn), "breakpoint denominator"); }

inline void require_continuous(const PwlPeriodic& fn) {
  if (!fn.is_continuous()) throw InputError("extremality is only decided for continuous functions");
}

inline long checked_grid(long q, long m) {
  if (m < 3) throw InputError("oversampling factor must be at least 3");
  if (q > static_cast<long>(RatMatrix::kMaxColumns) / m)
    throw CapacityError("grid (1/" + std::to_string(q) + "*" + std::to_string(m) + ")Z exceeds the supported size");
  return q * m;
}

inline mpz_class ceil_mul(const Rat& x, long n) {
  Rat y = x * Rat(n);
  mpz_class fl = y.floor();
  return y.is_integer() ? fl : mpz_class(fl + 1);
}

inline AdditivePairs pairs_from_report(const AdditivityReport& rep, long n) {
  std::vector<bool> seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), false);
  auto idx = [n](long i, long j) { return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j); };
  for (auto fi : rep.additive) {
    const auto& face = rep.faces[fi];
    long i0 = to_long(ceil_mul(face.p1.lo, n), "grid index");
    long i1 = to_long((face.p1.hi * Rat(n)).floor(), "grid index");
    for (long i = i0; i <= i1; ++i) {
      Rat x(i, n);
      Rat ylo = max(face.J.lo, face.K.lo - x), yhi = min(face.J.hi, face.K.hi - x);
      if (ylo > yhi) continue;
      long j0 = to_long(ceil_mul(ylo, n), "grid index");
      long j1 = to_long((yhi * Rat(n)).floor(), "grid index");
      for (long j = j0; j <= j1; ++j) {
        long a = i % n, b = j % n;
        if (a > b) std::swap(a, b);
        seen[idx(a, b)] = true;
      }
    }
  }
  AdditivePairs out{n, {}};
  for (long i = 0; i < n; ++i)
    for (long j = i; j < n; ++j)
      if (seen[idx(i, j)]) out.pairs.emplace_back(i, j);
  return out;
}

}  // namespace detail

/// All grid pairs of (1/(mq))Z with Δπ = 0, read off the additive faces.
inline AdditivePairs restriction_additive_pairs(const PwlPeriodic& fn, long m = 3) {
  detail::require_continuous(fn);
  long n = detail::checked_grid(detail::grid_denominator(fn), m);
  return detail::pairs_from_report(additivity_report(fn), n);
}

inline PerturbationBasis perturbation_space_basis(const PwlPeriodic& fn, long m, const AdditivePairs& pairs) {
  PerturbationBasis out;
  out.q = detail::grid_denominator(fn);
  out.m = m;
  out.n = pairs.n;
  out.f_index = to_long((fn.f() * Rat(out.n)).num(), "f index");
  out.additive_pairs = pairs.pairs.size();
  out.basis = perturbation_nullspace(out.n, out.f_index, pairs.pairs, &out.rank);
  return out;
}

inline PerturbationBasis perturbation_space_basis(const PwlPeriodic& fn, long m = 3) {
  return perturbation_space_basis(fn, m, restriction_additive_pairs(fn, m));
}

/// Continuous interpolation of grid values on (1/n)Z.
inline PwlPeriodic interpolate_perturbation(const RatVector& values, long n, const Rat& f) {
  if (values.size() != static_cast<std::size_t>(n)) throw InputError("perturbation vector does not match the grid");
  std::vector<std::pair<Rat, Rat>> pts;
  pts.reserve(values.size() + 1);
  for (long i = 0; i < n; ++i) pts.emplace_back(Rat(i, n), values[static_cast<std::size_t>(i)]);
  pts.emplace_back(Rat(1), values.front());
  return PwlPeriodic::interpolate(f, pts);
}

/// Largest ε such that fn ± ε·perturbation are both minimal, for a
/// continuous perturbation additive wherever fn is.
inline Rat epsilon_ratio_test(const PwlPeriodic& fn, const PwlPeriodic& perturbation) {
  detail::require_continuous(fn);
  detail::require_continuous(perturbation);
  std::set<Rat> merged(fn.breakpoints().begin(), fn.breakpoints().end());
  merged.insert(perturbation.breakpoints().begin(), perturbation.breakpoints().end());
  merged.insert(fn.f());
  std::vector<Rat> bps(merged.begin(), merged.end());

  std::optional<Rat> best;
  auto consider = [&](const Rat& slack, const Rat& d) {
    if (d.is_zero()) return;
    Rat r = slack / d.abs();
    if (!best || r < *best) best = r;
  };
  for (const auto& b : bps) consider(fn.eval(b), perturbation.eval(b));
  for (const auto& v : delta_vertices(bps)) consider(delta_pi(fn, v.x, v.y), delta_pi(perturbation, v.x, v.y));
  if (!best) throw InputError("perturbation has no direction");
  if (best->sign() <= 0) throw InputError("perturbation is not additive where the function is; ratio test gives " + best->str());
  return *best;
}

/// Checks every certificate property by re-testing; returns an empty string
/// on success, otherwise the failing property.
inline std::string certificate_problem(const PwlPeriodic& fn, const PerturbationCertificate& c) {
  if (c.perturbation == affine_combine(Rat(0), fn, Rat(0), fn)) return "perturbation is zero";
  if (c.epsilon.sign() <= 0) return "epsilon is not positive";
  if (!(c.pi1 == affine_combine(Rat(1), fn, c.epsilon, c.perturbation))) return "pi1 differs from fn + eps * perturbation";
  if (!(c.pi2 == affine_combine(Rat(1), fn, -c.epsilon, c.perturbation))) return "pi2 differs from fn - eps * perturbation";
  if (!minimality_test(c.pi1).minimal()) return "pi1 is not minimal";
  if (!minimality_test(c.pi2).minimal()) return "pi2 is not minimal";
  if (!(affine_combine(Rat(1, 2), c.pi1, Rat(1, 2), c.pi2) == fn)) return "average of pi1 and pi2 differs from fn";
  if (c.pi1 == c.pi2) return "pi1 equals pi2";
  return {};
}

inline ExtremalityVerdict extremality_test(const PwlPeriodic& fn, long m = 3) {
  detail::require_continuous(fn);
  if (!minimality_test(fn).minimal()) throw InputError("function is not minimal");
  long q = detail::grid_denominator(fn);
  long n = detail::checked_grid(q, m);

  AdditivityReport rep = additivity_report(fn);
  AdditivePairs pairs = detail::pairs_from_report(rep, n);
  PerturbationBasis pb = perturbation_space_basis(fn, m, pairs);

  ExtremalityVerdict out;
  out.diagnostics = {q, m, n, pb.rank, pb.basis.size(), pb.additive_pairs, rep.covered};
  if (pb.basis.empty()) return out;

  // Scale the first basis vector so the ratio test gives exactly 2; the
  // certificate then uses ε = 1.
  PwlPeriodic raw = interpolate_perturbation(pb.basis.front(), n, fn.f());
  Rat ratio = epsilon_ratio_test(fn, raw);
  PwlPeriodic pbar = affine_combine(ratio / Rat(2), raw, Rat(0), raw);
  Rat eps(1);
  PerturbationCertificate cert{pbar, eps, affine_combine(Rat(1), fn, eps, pbar), affine_combine(Rat(1), fn, -eps, pbar)};
  if (auto problem = certificate_problem(fn, cert); !problem.empty())
    throw std::logic_error("certificate failed validation: " + problem);
  out.status = ExtremalityStatus::NotExtreme;
  out.certificate = std::move(cert);
  return out;
}

/// For continuous functions with rational breakpoints, facets and extreme
/// functions coincide, so this is the same decision.
inline ExtremalityVerdict facetness_test(const PwlPeriodic& fn, long m = 3) { return extremality_test(fn, m); }

}  // namespace groupcut
