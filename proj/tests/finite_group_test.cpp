#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace groupcut;
using fixtures::r;

namespace {

FiniteGroupFn finite(long q, long f_index, std::vector<Rat> values) { return {q, f_index, std::move(values)}; }

// Dense perturbation space over every additive pair, including i > j.
std::size_t dense_basis_dimension(const FiniteGroupFn& g) {
  std::vector<std::vector<Rat>> rows;
  auto unit_row = [&](long i) {
    std::vector<Rat> row(static_cast<std::size_t>(g.q), r(0));
    row[static_cast<std::size_t>(i)] += r(1);
    return row;
  };
  rows.push_back(unit_row(0));
  rows.push_back(unit_row(g.f_index));
  for (long i = 0; i < g.q; ++i)
    for (long j = 0; j < g.q; ++j)
      if (g.at(i) + g.at(j) == g.at(i + j)) {
        std::vector<Rat> row(static_cast<std::size_t>(g.q), r(0));
        row[static_cast<std::size_t>(i)] += r(1);
        row[static_cast<std::size_t>(j)] += r(1);
        row[static_cast<std::size_t>(g.mod(i + j))] -= r(1);
        rows.push_back(row);
      }
  RatMatrix m(rows.size(), static_cast<std::size_t>(g.q));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return static_cast<std::size_t>(g.q) - fixtures::rank_oracle(m);
}

FiniteGroupFn subsample(const FiniteGroupFn& g, long m) {
  FiniteGroupFn s{g.q / m, g.f_index / m, {}};
  for (long i = 0; i < s.q; ++i) s.values.push_back(g.at(i * m));
  return s;
}

}  // namespace

TEST(Restrict, GmicOnFifths) {
  auto g = restrict_to_finite_group(fixtures::gmic45(), 5);
  EXPECT_EQ(g, finite(5, 4, {r(0), r(1, 4), r(1, 2), r(3, 4), r(1)}));
  EXPECT_EQ(restrict_to_finite_group(fixtures::gmic45(), 5, 3).values.size(), 15u);
  EXPECT_THROW(restrict_to_finite_group(fixtures::gmic45(), 3), InputError);
  EXPECT_THROW(restrict_to_finite_group(fixtures::gmic45(), 0), InputError);
}

TEST(Interpolate, Examples) {
  EXPECT_EQ(interpolate_to_infinite_group(restrict_to_finite_group(fixtures::gmic45(), 5)), fixtures::gmic45());
  auto zero = interpolate_to_infinite_group(finite(3, 1, {r(0), r(0), r(0)}));
  EXPECT_EQ(zero.breakpoints(), std::vector<Rat>{r(0)});
  EXPECT_EQ(zero.eval(r(2, 7)), r(0));
  EXPECT_THROW(interpolate_to_infinite_group(finite(3, 3, {r(0), r(0), r(0)})), InputError);
  EXPECT_THROW(interpolate_to_infinite_group(finite(3, 1, {r(0), r(0)})), InputError);
}

TEST(RoundTrip, BothDirections) {
  fixtures::Gen gen(6);
  for (int t = 0; t < 50; ++t) {
    long q = gen.integer(2, 30);
    FiniteGroupFn g{q, gen.integer(1, q - 1), {}};
    for (long i = 0; i < q; ++i) g.values.push_back(gen.rational(9, 7));
    EXPECT_EQ(restrict_to_finite_group(interpolate_to_infinite_group(g), q), g);
  }
  for (const auto& [name, fn] : fixtures::continuous_suite()) {
    long q = fixtures::grid_q(fn);
    for (long m : {1L, 2L, 3L})
      EXPECT_EQ(interpolate_to_infinite_group(restrict_to_finite_group(fn, q, m)), fn) << name;
  }
}

TEST(FiniteMinimality, Examples) {
  EXPECT_TRUE(finite_minimality_test(restrict_to_finite_group(fixtures::gmic45(), 5)).minimal());
  auto ones = finite_minimality_test(finite(5, 4, {r(0), r(1), r(1), r(1), r(1)}));
  ASSERT_FALSE(ones.minimal());
  EXPECT_EQ(ones.witness->kind, WitnessKind::Symmetry);
  auto zeros = finite_minimality_test(finite(5, 4, {r(0), r(0), r(0), r(0), r(0)}));
  ASSERT_FALSE(zeros.minimal());
  EXPECT_EQ(zeros.witness->kind, WitnessKind::Symmetry);
  EXPECT_EQ(*zeros.witness->point, r(4, 5));
  EXPECT_EQ(finite_minimality_test(finite(2, 1, {r(1), r(1)})).witness->kind, WitnessKind::OriginValue);
  EXPECT_EQ(finite_minimality_test(finite(3, 1, {r(0), r(1), r(-1)})).witness->kind, WitnessKind::Negativity);
}

TEST(FiniteMinimality, AgreesWithInterpolatedMinimality) {
  // Minimality transfers along continuous interpolation in both directions.
  fixtures::Gen gen(44);
  for (const auto& [name, fn] : fixtures::continuous_suite()) {
    long q = fixtures::grid_q(fn);
    EXPECT_TRUE(finite_minimality_test(restrict_to_finite_group(fn, q)).minimal()) << name;
  }
  for (int t = 0; t < 200; ++t) {
    long q = gen.integer(2, 9);
    FiniteGroupFn g{q, gen.integer(1, q - 1), {}};
    for (long i = 0; i < q; ++i) g.values.push_back(r(gen.integer(0, 4), 4));
    g.values[0] = r(0);
    EXPECT_EQ(finite_minimality_test(g).minimal(), minimality_test(interpolate_to_infinite_group(g)).minimal());
  }
}

TEST(FiniteExtremality, Examples) {
  EXPECT_EQ(finite_extremality_test(restrict_to_finite_group(fixtures::gmic45(), 5)).status, ExtremalityStatus::Extreme);
  EXPECT_EQ(finite_extremality_test(finite(2, 1, {r(0), r(1)})).status, ExtremalityStatus::Extreme);
  auto combo = restrict_to_finite_group(fixtures::combo(), fixtures::grid_q(fixtures::combo()), 3);
  auto v = finite_extremality_test(combo);
  ASSERT_EQ(v.status, ExtremalityStatus::NotExtreme);
  ASSERT_TRUE(v.certificate);
  EXPECT_TRUE(finite_minimality_test(v.certificate->g1).minimal());
  EXPECT_TRUE(finite_minimality_test(v.certificate->g2).minimal());
  EXPECT_NE(v.certificate->g1, v.certificate->g2);
  EXPECT_THROW(finite_extremality_test(finite(5, 4, {r(0), r(0), r(0), r(0), r(0)})), InputError);
}

TEST(FiniteExtremality, BasisDimensionMatchesDenseOracle) {
  for (const auto& [name, fn] : fixtures::continuous_suite()) {
    long q = fixtures::grid_q(fn);
    if (q > 40) continue;
    for (long m : {1L, 3L}) {
      auto g = restrict_to_finite_group(fn, q, m);
      EXPECT_EQ(finite_extremality_test(g).basis_dimension, dense_basis_dimension(g)) << name << " m=" << m;
    }
  }
}

TEST(FiniteExtremality, CertificatesAreMidpoints) {
  fixtures::Gen gen(13);
  int found = 0;
  for (int t = 0; t < 2000 && found < 25; ++t) {
    long q = gen.integer(2, 10);
    FiniteGroupFn g{q, gen.integer(1, q - 1), std::vector<Rat>(static_cast<std::size_t>(q))};
    for (long i = 0; i < q; ++i) {
      long j = g.mod(g.f_index - i);
      if (j < i) continue;
      Rat x = i == j ? r(1, 2) : r(gen.integer(0, 6), 6);
      if (i == 0) x = r(0);
      if (j == 0) x = r(1);
      g.values[static_cast<std::size_t>(i)] = x;
      g.values[static_cast<std::size_t>(j)] = r(1) - x;
    }
    if (!finite_minimality_test(g).minimal()) continue;
    auto v = finite_extremality_test(g);
    EXPECT_EQ(v.basis_dimension, dense_basis_dimension(g));
    if (!v.certificate) continue;
    ++found;
    const auto& c = *v.certificate;
    EXPECT_GT(c.epsilon, r(0));
    EXPECT_TRUE(finite_minimality_test(c.g1).minimal());
    EXPECT_TRUE(finite_minimality_test(c.g2).minimal());
    for (long i = 0; i < q; ++i) EXPECT_EQ((c.g1.at(i) + c.g2.at(i)) / r(2), g.at(i));
    EXPECT_EQ(c.epsilon * r(2), finite_ratio_test(g, c.perturbation));
  }
  EXPECT_GT(found, 0);
}

TEST(FiniteExtremality, RatioTestRejectsZero) {
  auto g = restrict_to_finite_group(fixtures::gmic45(), 5);
  EXPECT_THROW(finite_ratio_test(g, std::vector<Rat>(5, r(0))), InputError);
}

TEST(FiniteExtremality, SubgroupMonotonicity) {
  for (const auto& [name, fn] : fixtures::continuous_suite()) {
    long q = fixtures::grid_q(fn);
    if (q > 40) continue;
    auto fine = restrict_to_finite_group(fn, q, 3);
    if (finite_extremality_test(fine).status != ExtremalityStatus::Extreme) continue;
    EXPECT_EQ(finite_extremality_test(subsample(fine, 3)).status, ExtremalityStatus::Extreme) << name;
  }
}

TEST(PerturbationNullspace, SpecialPairs) {
  // v_1 + v_1 = v_2 and v_0 + v_2 = v_2 on Z/4 with f = 3.
  auto basis = perturbation_nullspace(4, 3, {{1, 1}, {0, 2}});
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0], (RatVector{r(0), r(1, 2), r(1), r(0)}));
}
