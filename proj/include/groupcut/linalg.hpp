#pragma once

// Exact dense and sparse linear algebra over the rationals.
//
// Both routes return the null space in the same canonical form: the basis
// read off the reduced row echelon form of the system, one vector per free
// column (ascending), with that free variable set to 1 and the other free
// variables set to 0.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "groupcut/error.hpp"
#include "groupcut/rat.hpp"

namespace groupcut {

using RatVector = std::vector<Rat>;

/// Dense row-major rational matrix.
///
/// Memory bound: each entry is a GMP rational (at least 32 bytes plus limbs),
/// so construction refuses more than kMaxColumns columns or kMaxEntries
/// entries (about 0.5 GiB of small rationals) with a CapacityError.
class RatMatrix {
 public:
  static constexpr std::size_t kMaxColumns = 20000;
  static constexpr std::size_t kMaxEntries = std::size_t{16} << 20;

  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    check_capacity(rows, cols);
    entries_.assign(rows * cols, Rat(0));
  }
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_capacity(rows, cols);
    if (entries_.size() != rows * cols) throw InputError("matrix entry count does not match its shape");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<Rat> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
  std::span<const Rat> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

  RatVector multiply(std::span<const Rat> v) const {
    if (v.size() != cols_) throw InputError("vector length does not match matrix columns");
    RatVector out(rows_, Rat(0));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!(*this)(r, c).is_zero() && !v[c].is_zero()) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  static void check_capacity(std::size_t rows, std::size_t cols) {
    if (cols > kMaxColumns || (cols != 0 && rows > kMaxEntries / cols))
      throw CapacityError("dense matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                          " exceeds the supported size");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> entries_;
};

/// Result of reduced row echelon elimination.
struct Rref {
  RatMatrix reduced;                 // nonzero rows first, pivots normalized to 1
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

/// Gauss-Jordan elimination. The pivot of each column is the first row (at
/// or below the current one) with a nonzero entry; no magnitude pivoting.
inline Rref rref(RatMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(sel, k), m(r, k));
    Rat inv = Rat(1) / m(r, c);
    for (std::size_t k = c; k < m.cols(); ++k)
      if (!m(r, k).is_zero()) m(r, k) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Rat factor = m(i, c);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (!m(r, k).is_zero()) m(i, k) -= factor * m(r, k);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }

/// Canonical null-space basis (see file comment). An empty matrix yields the
/// standard basis of its column space.
inline std::vector<RatVector> nullspace(const RatMatrix& m) {
  Rref e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(m.cols(), Rat(0));
    v[free] = Rat(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Brings an arbitrary basis of a subspace W to the canonical form that
/// `nullspace` would produce for any system whose solution set is W.
///
/// That form is the reduced echelon form of W ordered by *last* nonzero
/// entry, so it is computed by reversing the coordinates, running RREF, and
/// reversing back.
inline std::vector<RatVector> canonical_subspace_basis(const std::vector<RatVector>& basis, std::size_t dim) {
  if (basis.empty()) return {};
  RatMatrix m(basis.size(), dim);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, dim - 1 - j) = basis[i][j];
  Rref e = rref(std::move(m));
  std::vector<std::pair<std::size_t, RatVector>> rows;
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    RatVector v(dim);
    for (std::size_t j = 0; j < dim; ++j) v[j] = e.reduced(i, dim - 1 - j);
    rows.emplace_back(dim - 1 - e.pivots[i], std::move(v));
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<RatVector> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(std::move(r.second));
  return out;
}

/// Incremental exact elimination for large sparse homogeneous systems
/// (a handful of nonzeros per equation, thousands of variables).
///
/// Keeps every pivot variable expressed through free variables only. New
/// pivots are the largest-index variable of the reduced equation, so the
/// typical chain v_{x+y} = v_x + v_y never touches existing rows.
class SparseSystem {
 public:
  struct Term {
    std::size_t var;
    Rat coef;
  };

  explicit SparseSystem(std::size_t vars) : pivot_row_(vars, kNone), occurrences_(vars) {
    if (vars > RatMatrix::kMaxColumns)
      throw CapacityError("linear system with " + std::to_string(vars) + " variables exceeds the supported size");
  }

  std::size_t vars() const { return pivot_row_.size(); }
  std::size_t rank() const { return rows_.size(); }

  /// Adds sum(coef * v[var]) = 0. Returns true when it increased the rank.
  bool add_equation(std::span<const Term> terms) {
    Row acc;
    for (const auto& t : terms) {
      if (t.var >= vars()) throw InputError("equation references an unknown variable");
      if (t.coef.is_zero()) continue;
      std::size_t pr = pivot_row_[t.var];
      if (pr == kNone) {
        accumulate(acc, t.var, t.coef);
      } else {
        for (const auto& [v, c] : rows_[pr].expr) accumulate(acc, v, t.coef * c);
      }
    }
    std::erase_if(acc, [](const auto& e) { return e.second.is_zero(); });
    if (acc.empty()) return false;

    // acc is sorted by variable; the pivot is the last one.
    auto [p, cp] = acc.back();
    acc.pop_back();
    Row expr;
    expr.reserve(acc.size());
    Rat scale = -Rat(1) / cp;
    for (auto& [v, c] : acc) expr.emplace_back(v, c * scale);

    // Eliminate p from every row that mentions it.
    for (std::size_t ri : occurrences_[p]) {
      Row& row = rows_[ri].expr;
      auto it = std::lower_bound(row.begin(), row.end(), p, [](const auto& e, std::size_t v) { return e.first < v; });
      if (it == row.end() || it->first != p) continue;  // stale occurrence
      Rat a = it->second;
      row.erase(it);
      for (const auto& [v, c] : expr) {
        bool had = contains(row, v);
        accumulate(row, v, a * c);
        if (!had) occurrences_[v].push_back(ri);
      }
      std::erase_if(row, [](const auto& e) { return e.second.is_zero(); });
    }
    occurrences_[p].clear();

    std::size_t idx = rows_.size();
    for (const auto& e : expr) occurrences_[e.first].push_back(idx);
    rows_.push_back({p, std::move(expr)});
    pivot_row_[p] = idx;
    return true;
  }

  bool add_equation(std::initializer_list<Term> terms) { return add_equation(std::span<const Term>(terms.begin(), terms.size())); }

  /// Canonical null-space basis, identical to `nullspace` on the dense
  /// matrix of the same equations.
  std::vector<RatVector> nullspace_basis() const {
    std::vector<RatVector> raw;
    std::vector<std::size_t> free_index(vars(), kNone);
    for (std::size_t v = 0; v < vars(); ++v) {
      if (pivot_row_[v] != kNone) continue;
      free_index[v] = raw.size();
      RatVector w(vars(), Rat(0));
      w[v] = Rat(1);
      raw.push_back(std::move(w));
    }
    for (const auto& row : rows_)
      for (const auto& [v, c] : row.expr) raw[free_index[v]][row.pivot] = c;
    return canonical_subspace_basis(raw, vars());
  }

 private:
  using Row = std::vector<std::pair<std::size_t, Rat>>;
  struct PivotRow {
    std::size_t pivot;
    Row expr;  // pivot = sum(coef * var) over free variables
  };
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  static bool contains(const Row& row, std::size_t v) {
    auto it = std::lower_bound(row.begin(), row.end(), v, [](const auto& e, std::size_t x) { return e.first < x; });
    return it != row.end() && it->first == v;
  }

  static void accumulate(Row& row, std::size_t v, const Rat& c) {
    auto it = std::lower_bound(row.begin(), row.end(), v, [](const auto& e, std::size_t x) { return e.first < x; });
    if (it != row.end() && it->first == v)
      it->second += c;
    else
      row.insert(it, {v, c});
  }

  std::vector<std::size_t> pivot_row_;
  std::vector<std::vector<std::size_t>> occurrences_;
  std::vector<PivotRow> rows_;
};

}  // namespace groupcut
