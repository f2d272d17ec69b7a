#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace groupcut;
using fixtures::r;

namespace {

// Largest |a - b| over [0, 1); both are PWL so the maximum sits on a
// breakpoint of one of them.
Rat sup_distance(const PwlPeriodic& a, const PwlPeriodic& b) {
  auto d = affine_combine(r(1), a, r(-1), b);
  Rat best(0);
  for (const auto& t : d.limits()) best = max(best, max(t.value.abs(), max(t.left.abs(), t.right.abs())));
  return best;
}

}  // namespace

TEST(Gmic, Examples) {
  EXPECT_EQ(gmic(r(4, 5)).eval(r(2, 5)), r(1, 2));
  fixtures::Gen gen(1);
  for (int i = 0; i < 30; ++i) {
    Rat f = gen.unit(40);
    if (f.is_zero()) continue;
    auto g = gmic(f);
    EXPECT_EQ(g.eval(f), r(1));
    EXPECT_EQ(slope_report(g).distinct_slopes, (std::vector<Rat>{r(-1) / (r(1) - f), r(1) / f}));
  }
  EXPECT_THROW(gmic(r(0)), InputError);
  EXPECT_THROW(gmic(r(5, 4)), InputError);
}

TEST(GenerateEps, Examples) {
  EXPECT_EQ(generate_eps(r(4, 5), 2, EpsVariant::MuLessThanOne), (std::vector<Rat>{r(1, 5), r(1, 20)}));
  EXPECT_EQ(generate_eps(r(1, 2), 1, EpsVariant::MuEqualsOne), std::vector<Rat>{r(1, 4)});
  EXPECT_TRUE(generate_eps(r(4, 5), 0, EpsVariant::MuLessThanOne).empty());
  EXPECT_THROW(generate_eps(r(9, 10), 1, EpsVariant::MuLessThanOne), InputError);
  EXPECT_THROW(generate_eps(r(3, 5), 1, EpsVariant::MuEqualsOne), InputError);
  EXPECT_EQ(parse_eps_variant("mu_eq_1"), EpsVariant::MuEqualsOne);
  EXPECT_THROW(parse_eps_variant("mu"), InputError);
}

TEST(GenerateEps, MuMinusInvariant) {
  for (long n = 0; n <= 8; ++n) {
    PsiParams p{r(4, 5), generate_eps(r(4, 5), n, EpsVariant::MuLessThanOne)};
    EXPECT_LE(p.mu_minus(), r(1));
    PsiParams q{r(1, 2), generate_eps(r(1, 2), n, EpsVariant::MuEqualsOne)};
    EXPECT_LE(q.mu_minus(), r(1));
  }
  EXPECT_THROW((PsiParams{r(4, 5), {r(1, 5), r(1, 4)}}.validate()), InputError);
  EXPECT_THROW((PsiParams{r(4, 5), {r(1, 4)}}.validate()), InputError);
}

TEST(Psi, Examples) {
  EXPECT_EQ(fixtures::psi(0), fixtures::gmic45());
  EXPECT_EQ(negative_slope_interval_count(fixtures::psi(1)), 2u);
  EXPECT_EQ(negative_slope_interval_count(fixtures::psi(3)), 8u);
  EXPECT_EQ(slope_report(fixtures::psi(3)).distinct_slopes.size(), 2u);
}

TEST(Psi, StagesAreMinimalTwoSlopeWithDoublingDips) {
  for (long n = 0; n <= 4; ++n) {
    auto p = fixtures::psi(n);
    EXPECT_TRUE(p.is_continuous());
    EXPECT_TRUE(minimality_test(p).minimal()) << n;
    EXPECT_EQ(slope_report(p).distinct_slopes.size(), 2u) << n;
    EXPECT_EQ(negative_slope_interval_count(p), static_cast<std::size_t>(1) << n) << n;
  }
  auto eq = psi_n(r(1, 2), 3, EpsVariant::MuEqualsOne);
  EXPECT_TRUE(minimality_test(eq).minimal());
  EXPECT_EQ(negative_slope_interval_count(eq), 8u);
}

TEST(Psi, NextStageAgreesOutsidePositiveSlopePieces) {
  fixtures::Gen gen(61);
  for (long n = 0; n < 4; ++n) {
    auto cur = fixtures::psi(n), next = fixtures::psi(n + 1);
    std::vector<Interval> replaced;
    for (std::size_t i = 0; i < cur.size(); ++i)
      if (cur.slopes()[i].sign() > 0) replaced.push_back({cur.breakpoints()[i], cur.piece_end(i)});
    int checked = 0;
    for (int s = 0; s < 400; ++s) {
      Rat x = gen.unit(997);
      bool inside = std::any_of(replaced.begin(), replaced.end(), [&](const Interval& iv) { return iv.lo < x && x < iv.hi; });
      if (inside) continue;
      ++checked;
      EXPECT_EQ(next.eval(x), cur.eval(x)) << n << " " << x;
    }
    EXPECT_GT(checked, 20);
  }
}

TEST(Psi, ExactStageGap) {
  // The gap between consecutive stages is the bump height plus the drop of
  // the old rising segment over half the replaced width.
  auto eps = generate_eps(r(4, 5), 4, EpsVariant::MuLessThanOne);
  Rat one_minus_f = r(1, 5);
  for (long n = 0; n < 4; ++n) {
    auto cur = fixtures::psi(n);
    Rat e = eps[static_cast<std::size_t>(n)];
    Rat s = slope_report(cur).distinct_slopes.back();
    EXPECT_EQ(sup_distance(fixtures::psi(n + 1), cur), e / (r(2) * one_minus_f) + s * e / r(2)) << n;
  }
}

TEST(Psi, SupNormEnvelope) {
  auto eps = generate_eps(r(4, 5), 4, EpsVariant::MuLessThanOne);
  for (long n = 0; n < 4; ++n)
    EXPECT_LE(sup_distance(fixtures::psi(n + 1), fixtures::psi(n)), eps[static_cast<std::size_t>(n)] / (r(2) * r(1, 5)))
        << "stage " << n + 1;
}

TEST(SequentialMerge, Examples) {
  auto g = fixtures::gmic45();
  auto m = sequential_merge(gmic(r(1, 3)), g);
  EXPECT_EQ(m(r(0), r(0)), r(0));
  EXPECT_EQ(lifting_representation(g, g.f()), r(0));
  EXPECT_EQ(m.lifting_pi(r(4, 5)), r(0));
}

TEST(SequentialMerge, MatchesDirectFormula) {
  fixtures::Gen gen(100);
  auto phi = fixtures::psi(1);
  auto pi = gmic(r(1, 3));
  auto m = sequential_merge(phi, pi);
  for (int i = 0; i < 100; ++i) {
    Rat x1 = gen.rational(20, 37), x2 = gen.rational(20, 41);
    Rat f1 = r(1, 3), f2 = r(4, 5);
    Rat p = pi.eval(x1);
    Rat direct = (p * f1 + f2 * phi.eval(x1 + x2 - p * f1)) / (f1 + f2);
    EXPECT_EQ(m(x1, x2), direct);
  }
}

TEST(ProjectedMerge, MatchesBivariateEvaluator) {
  fixtures::Gen gen(7);
  for (long n : {1L, 2L, 3L}) {
    auto pi = gmic(r(1, 5));
    auto merged = projected_sequential_merge(pi, n);
    EXPECT_EQ(merged.f(), r(1, 5));
    auto xi = gmic(r(n, 5));
    auto biv = sequential_merge(pi, xi);
    EXPECT_EQ(merged.eval(r(0)), r(0));
    for (int i = 0; i < 100; ++i) {
      Rat x = gen.unit(211);
      EXPECT_EQ(merged.eval(x), biv(Rat(n) * x, x)) << n << " " << x;
    }
  }
  EXPECT_THROW(projected_sequential_merge(gmic(r(1, 2)), 2), InputError);
  EXPECT_THROW(projected_sequential_merge(gmic(r(1, 5)), 0), InputError);
}

TEST(ProjectedMerge, GmicMergeIsMinimal) {
  EXPECT_TRUE(minimality_test(projected_sequential_merge(gmic(r(1, 5)), 2)).minimal());
}

TEST(ProjectedMerge, GmicMergeIsTwoSlopeForDoubledF) {
  auto m = projected_sequential_merge(gmic(r(1, 5)), 2);
  EXPECT_EQ(m.f(), r(2, 5));
  EXPECT_EQ(slope_report(m).distinct_slopes.size(), 2u);
  EXPECT_TRUE(extremality_test(m).extreme());
}

TEST(TwoSlopeFillIn, ReconstructsGmic) {
  auto g = restrict_to_finite_group(fixtures::gmic45(), 5);
  EXPECT_EQ(two_slope_fill_in(g, r(5, 4), r(-5)), fixtures::gmic45());
  EXPECT_EQ(two_slope_fill_in(g, r(5, 4), r(-5)), interpolate_to_infinite_group(g));
}

TEST(TwoSlopeFillIn, GenericSlopesKeepGridValues) {
  for (long q : {5L, 10L, 15L}) {
    auto g = restrict_to_finite_group(fixtures::gmic45(), q);
    auto fill = two_slope_fill_in(g, r(2), r(-6));
    EXPECT_EQ(restrict_to_finite_group(fill, q), g);
    EXPECT_EQ(slope_report(fill).distinct_slopes, (std::vector<Rat>{r(-6), r(2)}));
  }
  auto g = restrict_to_finite_group(fixtures::gmic45(), 5);
  EXPECT_THROW(two_slope_fill_in(g, r(1), r(-6)), InputError);
  EXPECT_THROW(two_slope_fill_in(g, r(-6), r(2)), InputError);
}

TEST(PrecomposeScale, PreservesMinimality) {
  for (const auto& [name, fn] : fixtures::continuous_suite())
    for (long lambda : {2L, 3L, -1L}) EXPECT_TRUE(minimality_test(precompose_scale(fn, lambda)).minimal()) << name << lambda;
}

TEST(Registry, SortedAndResolvable) {
  const auto& reg = registry();
  for (std::size_t i = 1; i < reg.size(); ++i) EXPECT_LT(reg[i - 1].name, reg[i].name);
  for (const auto& e : reg) EXPECT_EQ(find_entry(e.name), &e);
  EXPECT_EQ(find_entry("nope"), nullptr);
}

TEST(Registry, Construct) {
  EXPECT_EQ(construct("gmic", {{"f", "4/5"}}), fixtures::gmic45());
  EXPECT_EQ(construct("psi_n", {{"f", "4/5"}, {"n", "2"}, {"variant", "mu_lt_1"}}), fixtures::psi(2));
  EXPECT_EQ(construct("psi_n", {{"f", "4/5"}, {"eps", "1/5,1/20"}}), fixtures::psi(2));
  EXPECT_EQ(construct("gmic_psi_combination", {{"f", "4/5"}, {"n", "1"}}), fixtures::combo());
  EXPECT_EQ(construct("automorphism", {{"f", "4/5"}}), precompose_scale(fixtures::gmic45(), -1));
  EXPECT_EQ(construct("gomory_fractional", {{"f", "4/5"}}), fixtures::fractional45());
  try {
    construct("drlm_backward_3_slope", {});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("not constructible from paper data; see electronic compendium"), std::string::npos);
  }
  EXPECT_THROW(construct("unknown_family", {}), InputError);
  EXPECT_THROW(construct("gmic", {}), InputError);
  EXPECT_THROW(construct("psi_n", {{"f", "4/5"}, {"n", "x"}}), InputError);
}

TEST(Registry, ExtremeEntriesAreExtreme) {
  for (const auto& [name, params] : std::vector<std::pair<std::string, Params>>{
           {"gmic", {{"f", "4/5"}}}, {"gmic", {{"f", "1/3"}}}, {"psi_n", {{"f", "4/5"}, {"n", "2"}}},
           {"psi_n", {{"f", "1/2"}, {"n", "2"}, {"variant", "mu_eq_1"}}}}) {
    auto fn = construct(name, params);
    EXPECT_EQ(find_entry(name)->expectation.rfind("extreme", 0), 0u);
    EXPECT_TRUE(minimality_test(fn).minimal()) << name;
    EXPECT_TRUE(extremality_test(fn).extreme()) << name;
  }
}
