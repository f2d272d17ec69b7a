#pragma once

// Function families and procedures that can be built from closed forms:
// gmic, the ψ_n sequence, sequential merges, two-slope fill-in, scaling
// homomorphisms, and a named registry that dispatches to them.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupcut/error.hpp"
#include "groupcut/finite_group.hpp"
#include "groupcut/pwl.hpp"
#include "groupcut/rat.hpp"

namespace groupcut {

inline PwlPeriodic gmic(const Rat& f) {
  if (f <= Rat(0) || f >= Rat(1)) throw InputError("gmic needs 0 < f < 1, got " + f.str());
  return PwlPeriodic::interpolate(f, {{Rat(0), Rat(0)}, {f, Rat(1)}, {Rat(1), Rat(0)}});
}

/// π(x) = frac(x) / f, which jumps at every integer.
inline PwlPeriodic gomory_fractional(const Rat& f) {
  if (f <= Rat(0) || f >= Rat(1)) throw InputError("gomory_fractional needs 0 < f < 1, got " + f.str());
  return make_pwl(f, {Rat(0)}, {{Rat(1) / f, Rat(0), Rat(0)}});
}

enum class EpsVariant { MuLessThanOne, MuEqualsOne };

inline EpsVariant parse_eps_variant(const std::string& s) {
  if (s == "mu_lt_1") return EpsVariant::MuLessThanOne;
  if (s == "mu_eq_1") return EpsVariant::MuEqualsOne;
  throw InputError("unknown eps variant '" + s + "' (expected mu_lt_1 or mu_eq_1)");
}

struct PsiParams {
  Rat f;
  std::vector<Rat> eps;

  /// μ⁻ = (1 - f) + Σ 2^(i-1) ε_i over the listed terms.
  Rat mu_minus() const {
    Rat mu = Rat(1) - f, w(1);
    for (const auto& e : eps) {
      mu += w * e;
      w *= Rat(2);
    }
    return mu;
  }

  void validate() const {
    if (f <= Rat(0) || f >= Rat(1)) throw InputError("f must lie in (0, 1)");
    for (std::size_t i = 0; i < eps.size(); ++i) {
      if (eps[i].sign() <= 0) throw InputError("eps terms must be positive");
      if (i > 0 && eps[i] >= eps[i - 1]) throw InputError("eps terms must be strictly decreasing");
    }
    if (!eps.empty() && eps.front() > Rat(1) - f) throw InputError("eps_1 must not exceed 1 - f");
    if (mu_minus() > Rat(1)) throw InputError("mu_minus = " + mu_minus().str() + " exceeds 1");
  }
};

/// ε_i = (1/4)^i f for f <= 4/5, or ε_i = 2 (1/4)^i f for f <= 1/2; i = 1..n.
inline std::vector<Rat> generate_eps(const Rat& f, long n, EpsVariant variant) {
  if (n < 0) throw InputError("n must be nonnegative");
  Rat bound = variant == EpsVariant::MuLessThanOne ? Rat(4, 5) : Rat(1, 2);
  if (f <= Rat(0) || f > bound) throw InputError("f = " + f.str() + " outside (0, " + bound.str() + "] for this variant");
  std::vector<Rat> eps;
  Rat term = variant == EpsVariant::MuLessThanOne ? f : Rat(2) * f;
  for (long i = 1; i <= n; ++i) {
    term *= Rat(1, 4);
    eps.push_back(term);
  }
  PsiParams{f, eps}.validate();
  return eps;
}

/// Starting from gmic(f), each step replaces every maximal segment of
/// positive slope over [a, b] by up, down, up segments through
/// ((a+b ∓ ε)/2, ψ((a+b)/2) ± ε/(2(1-f))).
inline PwlPeriodic psi_n(const PsiParams& params) {
  params.validate();
  PwlPeriodic psi = gmic(params.f);
  Rat one_minus_f = Rat(1) - params.f;
  for (const auto& e : params.eps) {
    std::vector<std::pair<Rat, Rat>> pts;
    for (std::size_t i = 0; i < psi.size(); ++i) {
      Rat a = psi.breakpoints()[i], b = psi.piece_end(i);
      pts.emplace_back(a, psi.eval(a));
      if (psi.slopes()[i].sign() > 0) {
        Rat mid = (a + b) / Rat(2);
        Rat c = psi.eval(mid), h = e / (Rat(2) * one_minus_f);
        pts.emplace_back(mid - e / Rat(2), c + h);
        pts.emplace_back(mid + e / Rat(2), c - h);
      }
    }
    pts.emplace_back(Rat(1), psi.eval(Rat(0)));
    psi = PwlPeriodic::interpolate(params.f, pts);
  }
  return psi;
}

inline PwlPeriodic psi_n(const Rat& f, long n, EpsVariant variant = EpsVariant::MuLessThanOne) {
  return psi_n(PsiParams{f, generate_eps(f, n, variant)});
}

/// Maximal open intervals of negative slope, counted around the circle.
inline std::size_t negative_slope_interval_count(const PwlPeriodic& fn) {
  const auto& s = fn.slopes();
  std::size_t count = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::size_t prev = (i + s.size() - 1) % s.size();
    bool joined = s[prev].sign() < 0 && fn.limits()[i].continuous() && s.size() > 1;
    if (s[i].sign() < 0 && !joined) ++count;
  }
  if (count == 0 && !s.empty() && s.front().sign() < 0) count = 1;
  return count;
}

/// [π]_f(x) = x - f π(x).
inline Rat lifting_representation(const PwlPeriodic& pi, const Rat& x) { return x - pi.f() * pi.eval(x); }

/// (φ ◊ π)(x1, x2) = [f1 π(x1) + f2 φ(x1 + x2 - f1 π(x1))] / (f1 + f2)
/// with f1 = π.f and f2 = φ.f.
class SequentialMerge {
 public:
  SequentialMerge(PwlPeriodic phi, PwlPeriodic pi) : phi_(std::move(phi)), pi_(std::move(pi)) {}

  Rat operator()(const Rat& x1, const Rat& x2) const {
    const Rat& f1 = pi_.f();
    const Rat& f2 = phi_.f();
    Rat p = pi_.eval(x1);
    return (f1 * p + f2 * phi_.eval(x1 + x2 - f1 * p)) / (f1 + f2);
  }

  Rat lifting_phi(const Rat& x) const { return lifting_representation(phi_, x); }
  Rat lifting_pi(const Rat& x) const { return lifting_representation(pi_, x); }
  const PwlPeriodic& phi() const { return phi_; }
  const PwlPeriodic& pi() const { return pi_; }

 private:
  PwlPeriodic phi_;
  PwlPeriodic pi_;
};

inline SequentialMerge sequential_merge(PwlPeriodic phi, PwlPeriodic pi) { return {std::move(phi), std::move(pi)}; }

/// x -> (π ◊ ξ)(n x, x) with π outer and ξ = gmic(n f) inner, f = π.f.
/// The pair (n x, x) hits (n f, f) at x = f, so the result is a function
/// for the same f; nf < 1 is required for ξ to exist.
inline PwlPeriodic projected_sequential_merge(const PwlPeriodic& pi, long n) {
  if (n < 1) throw InputError("n must be a positive integer");
  const Rat f = pi.f();
  const Rat f1 = f * Rat(n);
  if (f1 >= Rat(1)) throw InputError("projected sequential merge needs f < 1/n");
  PwlPeriodic xi_n = precompose_scale(gmic(f1), n);  // ξ(n x), already with f

  InnerMap inner;
  for (const auto& b : xi_n.breakpoints()) {
    inner.xs.push_back(b);
    inner.ys.push_back(Rat(n + 1) * b - f1 * xi_n.eval(b));
  }
  inner.xs.push_back(Rat(1));
  inner.ys.push_back(Rat(n + 1) - f1 * xi_n.eval(Rat(0)));
  PwlPeriodic outer = compose_pwl(pi, inner, f);

  Rat total = f1 + f;
  return affine_combine(f1 / total, xi_n, f / total, outer);
}

/// Replaces each grid segment by an s⁺ segment followed by an s⁻ segment
/// that meet at the exact crossing point.
inline PwlPeriodic two_slope_fill_in(const FiniteGroupFn& g, const Rat& s_plus, const Rat& s_minus) {
  g.validate();
  if (!(s_minus < s_plus)) throw InputError("two_slope_fill_in needs s_minus < s_plus");
  Rat h(1, g.q);
  std::vector<std::pair<Rat, Rat>> pts;
  for (long i = 0; i < g.q; ++i) {
    Rat x(i, g.q);
    const Rat& y0 = g.at(i);
    const Rat& y1 = g.at(i + 1);
    Rat slope = (y1 - y0) / h;
    if (slope < s_minus || slope > s_plus)
      throw InputError("segment slope " + slope.str() + " at " + x.str() + " is outside [s_minus, s_plus]");
    pts.emplace_back(x, y0);
    Rat t = (y1 - y0 - s_minus * h) / (s_plus - s_minus);
    if (t.sign() > 0 && t < h) pts.emplace_back(x + t, y0 + s_plus * t);
  }
  pts.emplace_back(Rat(1), g.at(0));
  return PwlPeriodic::interpolate(g.f(), pts);
}

// Registry -------------------------------------------------------------------

using Params = std::map<std::string, std::string>;

struct RegistryEntry {
  std::string name;
  std::string parameters;   // human-readable parameter list
  std::string provenance;
  std::string expectation;  // documented status of constructed functions
  std::function<PwlPeriodic(const Params&)> build;  // empty for stubs

  bool constructible() const { return static_cast<bool>(build); }
};

inline constexpr const char* kStubMessage = "not constructible from paper data; see electronic compendium";

namespace detail {

inline const std::string* find_param(const Params& p, const std::string& key) {
  auto it = p.find(key);
  return it == p.end() ? nullptr : &it->second;
}

inline Rat rat_param(const Params& p, const std::string& key, std::optional<Rat> fallback = std::nullopt) {
  if (auto* v = find_param(p, key)) return Rat::parse(*v);
  if (fallback) return *fallback;
  throw InputError("missing parameter --" + key);
}

inline long long_param(const Params& p, const std::string& key, std::optional<long> fallback = std::nullopt) {
  if (auto* v = find_param(p, key)) {
    Rat r = Rat::parse(*v);
    if (!r.is_integer()) throw InputError("parameter --" + key + " must be an integer");
    return to_long(r.num(), key.c_str());
  }
  if (fallback) return *fallback;
  throw InputError("missing parameter --" + key);
}

inline std::vector<Rat> rat_list_param(const std::string& text) {
  std::vector<Rat> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(Rat::parse(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline PwlPeriodic build_psi(const Params& p) {
  Rat f = rat_param(p, "f");
  if (auto* eps = find_param(p, "eps")) return psi_n(PsiParams{f, rat_list_param(*eps)});
  auto* variant = find_param(p, "variant");
  return psi_n(f, long_param(p, "n"), parse_eps_variant(variant ? *variant : "mu_lt_1"));
}

inline RegistryEntry stub(std::string name, std::string provenance) {
  return {std::move(name), "", std::move(provenance), "", nullptr};
}

}  // namespace detail

/// Registry entries in alphabetical order.
inline const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = [] {
    using namespace detail;
    std::vector<RegistryEntry> e{
        {"automorphism", "--f", "automorphism x -> -x applied to gmic(f), from Johnson",
         "minimal (re-verified per instance)", [](const Params& p) { return precompose_scale(gmic(rat_param(p, "f")), -1); }},
        {"gmic", "--f", "the Gomory mixed integer cut", "extreme",
         [](const Params& p) { return gmic(rat_param(p, "f")); }},
        {"gmic_psi_combination", "--f --n [--a 1/2] [--variant mu_lt_1]",
         "a gmic(f) + (1 - a) psi_n(f), convex combination of extreme functions", "minimal, not extreme for 0 < a < 1",
         [](const Params& p) {
           Rat a = rat_param(p, "a", Rat(1, 2));
           return affine_combine(a, gmic(rat_param(p, "f")), Rat(1) - a, build_psi(p));
         }},
        {"gomory_fractional", "--f", "Gomory fractional cut frac(x)/f", "not minimal",
         [](const Params& p) { return gomory_fractional(rat_param(p, "f")); }},
        {"multiplicative_homomorphism", "--f --lambda", "x -> gmic(f)(lambda x)", "minimal (re-verified per instance)",
         [](const Params& p) { return precompose_scale(gmic(rat_param(p, "f")), long_param(p, "lambda")); }},
        {"projected_sequential_merge", "--f --n", "(pi <> xi)(n x, x) with pi = gmic(f), xi = gmic(n f)",
         "extreme when pi is a facet with non-decreasing lifting representation",
         [](const Params& p) { return projected_sequential_merge(gmic(rat_param(p, "f")), long_param(p, "n")); }},
        {"psi_n", "--f (--n [--variant mu_lt_1|mu_eq_1] | --eps e1,e2,...)",
         "finite stages of the limit construction", "extreme (continuous 2-slope)", build_psi},
        {"two_slope_fill_in", "--f --q --s_plus --s_minus", "two-slope fill-in of restrict(gmic(f), q)",
         "verified post hoc", [](const Params& p) {
           Rat f = rat_param(p, "f");
           return two_slope_fill_in(restrict_to_finite_group(gmic(f), long_param(p, "q")), rat_param(p, "s_plus"),
                                    rat_param(p, "s_minus"));
         }},
    };
    for (const char* name :
         {"bccz_counterexample", "bhk_irrational", "bhk_irrational_extreme_limit_to_rational_nonextreme", "california_ip",
          "chen_3_slope_not_extreme", "chen_4_slope", "dg_2_step_mir", "dg_2_step_mir_limit",
          "dr_projected_sequential_merge_3_slope", "drlm_2_slope_limit", "drlm_3_slope_limit", "drlm_backward_3_slope",
          "drlm_gj_2_slope_extreme_limit_to_nonextreme", "drlm_not_extreme_1", "gj_2_slope", "gj_2_slope_repeat",
          "gj_forward_3_slope", "hildebrand_2_sided_discont_1_slope_1", "hildebrand_2_sided_discont_2_slope_1",
          "hildebrand_5_slope_22_1", "hildebrand_discont_3_slope_1", "kf_n_step_mir", "kzh_28_slope_1",
          "kzh_2q_example_1", "kzh_7_slope_1", "ll_strong_fractional", "not_extreme_1", "not_minimal_2",
          "rlm_dpl1_extreme_3a", "zhou_two_sided_discontinuous_cannot_assume_any_continuity"})
      e.push_back(stub(name, "closed form not given in the survey text"));
    std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return e;
  }();
  return entries;
}

inline const RegistryEntry* find_entry(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return &e;
  return nullptr;
}

inline PwlPeriodic construct(const std::string& name, const Params& params) {
  const RegistryEntry* e = find_entry(name);
  if (!e) throw InputError("unknown function family '" + name + "'");
  if (!e->constructible()) throw InputError(name + ": " + kStubMessage);
  return e->build(params);
}

}  // namespace groupcut
