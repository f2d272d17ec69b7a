#pragma once

// Shared fixtures, generators and independent oracles for the tests.

#include <sys/wait.h>

#include <cstdio>
#include <set>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "groupcut/groupcut.hpp"

namespace fixtures {

using namespace groupcut;

inline Rat r(long p, long q = 1) { return Rat(p, q); }

inline PwlPeriodic gmic45() { return gmic(r(4, 5)); }

inline PwlPeriodic psi(long n) { return psi_n(r(4, 5), n); }

/// ½(gmic(4/5) + ψ_1(4/5)): minimal, not extreme.
inline PwlPeriodic combo() { return affine_combine(r(1, 2), gmic45(), r(1, 2), psi(1)); }

/// π(x) = frac(x) / (4/5): valid but not symmetric.
inline PwlPeriodic fractional45() { return gomory_fractional(r(4, 5)); }

/// Minimal with jumps at 0 and 1/2: 2x on [0, 1/2], 1/2 on (1/2, 1).
inline PwlPeriodic jump_minimal() {
  return make_pwl(r(1, 2), {r(0), r(1, 2)}, {{r(1, 2), r(0), r(0)}, {r(1), r(1), r(1, 2)}});
}

/// Symmetric and subadditive on every grid point, but Δπ has a negative
/// limit at (0, 3/4) from inside a triangle.
inline PwlPeriodic jump_limit_violation() {
  return make_pwl(r(1, 2), {r(0), r(1, 4), r(1, 2), r(3, 4)},
                  {{r(1, 4), r(0), r(1, 4)}, {r(3, 4), r(1, 2), r(1, 4)}, {r(3, 4), r(1), r(3, 4)}, {r(1, 4), r(1, 2), r(3, 4)}});
}

/// The pwl example with jump data {0, 1/2}: ((0,0,0), (1,1/2,0)).
inline PwlPeriodic jump_data() { return make_pwl(r(1, 2), {r(0), r(1, 2)}, {{r(0), r(0), r(0)}, {r(1), r(1, 2), r(0)}}); }

struct Named {
  std::string name;
  PwlPeriodic fn;
};

/// Continuous functions used by the cross-module properties.
inline std::vector<Named> continuous_suite() {
  return {{"gmic", gmic45()},
          {"psi_0", psi(0)},
          {"psi_1", psi(1)},
          {"psi_2", psi(2)},
          {"psi_3", psi(3)},
          {"projected_merge", projected_sequential_merge(gmic(r(1, 5)), 2)},
          {"combo", combo()},
          {"homomorphism_2", precompose_scale(gmic45(), 2)},
          {"automorphism", precompose_scale(gmic45(), -1)},
          {"gmic_1_2", gmic(r(1, 2))}};
}

inline long grid_q(const PwlPeriodic& fn) { return to_long(breakpoint_denominator(fn), "q"); }

/// Exhaustive check on ((1/(3q))Z ∩ [0,1))^2 of π(0) = 0, π ≥ 0, π(f) = 1,
/// symmetry and subadditivity at grid values. For discontinuous functions
/// also probes points a small step away from every grid point.
inline bool grid_oracle_minimal(const PwlPeriodic& fn) {
  long n = 3 * grid_q(fn);
  if (!fn.eval(r(0)).is_zero() || fn.eval(fn.f()) != r(1)) return false;
  std::vector<Rat> pts;
  for (long i = 0; i < n; ++i) pts.push_back(r(i, n));
  if (!fn.is_continuous()) {
    Rat d = r(1, 1000 * n);
    std::vector<Rat> more;
    for (const auto& p : pts) {
      more.push_back(p);
      more.push_back(p + d);
      more.push_back(p - d + r(1));
    }
    pts = more;
  }
  for (const auto& x : pts) {
    if (fn.eval(x).sign() < 0) return false;
    if (fn.eval(x) + fn.eval(fn.f() - x) != r(1)) return false;
  }
  for (const auto& x : pts)
    for (const auto& y : pts)
      if ((fn.eval(x) + fn.eval(y) - fn.eval(x + y)).sign() < 0) return false;
  return true;
}

/// Rank by forward elimination over columns, picking the row with the
/// largest index as pivot (a different route than the library's RREF).
inline std::size_t rank_oracle(const RatMatrix& m) {
  std::vector<std::vector<Rat>> rows(m.rows(), std::vector<Rat>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && !rows.empty(); ++c) {
    std::size_t piv = rows.size();
    for (std::size_t i = rows.size(); i-- > 0;)
      if (!rows[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv == rows.size()) continue;
    std::vector<Rat> p = rows[piv];
    rows.erase(rows.begin() + static_cast<long>(piv));
    for (auto& row : rows) {
      if (row[c].is_zero()) continue;
      Rat factor = row[c] / p[c];
      for (std::size_t k = c; k < row.size(); ++k) row[k] -= factor * p[k];
    }
    ++rank;
  }
  return rank;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rat rational(long max_num = 50, long max_den = 20) { return Rat(integer(-max_num, max_num), integer(1, max_den)); }

  /// Rational in [0, 1).
  Rat unit(long max_den = 97) {
    long d = integer(1, max_den);
    return Rat(integer(0, d - 1), d);
  }

  RatMatrix matrix(std::size_t rows, std::size_t cols, int zero_percent = 30) {
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (integer(0, 99) >= zero_percent) m(i, j) = rational(9, 5);
    return m;
  }

  /// Random, possibly discontinuous, periodic function.
  PwlPeriodic pwl(bool continuous) {
    std::set<Rat> bps{r(0)};
    long k = integer(0, 5);
    for (long i = 0; i < k; ++i) bps.insert(unit(30));
    std::vector<LimitTriple> lims;
    for (std::size_t i = 0; i < bps.size(); ++i) {
      Rat v = rational(10, 7);
      if (continuous)
        lims.push_back({v, v, v});
      else
        lims.push_back({rational(10, 7), v, rational(10, 7)});
    }
    Rat f = unit(30);
    while (f.is_zero()) f = unit(30);
    return make_pwl(f, {bps.begin(), bps.end()}, std::move(lims));
  }

 private:
  std::mt19937_64 rng_;
};

/// Minimal well-formedness check: tags balance and every element closes.
inline bool xml_well_formed(const std::string& s) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  while ((i = s.find('<', i)) != std::string::npos) {
    std::size_t j = s.find('>', i);
    if (j == std::string::npos) return false;
    std::string tag = s.substr(i + 1, j - i - 1);
    i = j + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (tag.back() == '/') continue;
    if (tag[0] == '/') {
      std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
      continue;
    }
    stack.push_back(tag.substr(0, tag.find_first_of(" \t\n")));
  }
  return stack.empty();
}

inline std::size_t count_occurrences(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

/// Runs a shell command and captures stdout.
inline RunResult run(const std::string& cmd) {
  RunResult res;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return res;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) res.out.append(buf, n);
  int status = pclose(p);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace fixtures
