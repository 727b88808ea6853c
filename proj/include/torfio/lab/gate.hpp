#pragma once

// Hypothesis gate for the three boundedness theorems:
//
//   weighted_lp0          A bounded on L^{p0}_w,      w in A_{p0}
//   variable_lp           A bounded on L^{p(.)}
//   weighted_variable_lp  A bounded on L^{p(.)}_w,    w = (1+|x|)^beta prod |x-x_k|^{beta_k}
//
// A theorem "applies" only if every checkable hypothesis passes. Smoothness
// cannot be checked on a grid and is listed under "assumed".

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torfio/lab/spec.hpp"
#include "torfio/spaces/muckenhoupt.hpp"
#include "torfio/symbol/symbol.hpp"

namespace torfio::lab {

struct GateCheck {
  std::string name;
  std::string status;  // pass | fail | note
  std::optional<double> value, bound, slack;
  std::string detail;
};

struct TheoremVerdict {
  std::string theorem;
  bool applies = true;
  std::string summary;
  std::vector<GateCheck> checks;
  std::vector<std::string> assumed;
};

struct GateReport {
  std::vector<TheoremVerdict> theorems;
  bool all_apply = true;
};

/// Relative change |b - a| / a, with both below `floor` counting as no change.
inline double relative_change(double a, double b, double floor = 0.0) {
  if (std::max(std::abs(a), std::abs(b)) <= floor) return 0.0;
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(b - a) / std::abs(a);
}

/// The two truncations compared for refinement stability.
inline std::pair<int, int> refinement_pair(const ExperimentSpec& s) {
  const auto& t = s.truncations;
  if (t.size() >= 2) return {t[t.size() - 2], t.back()};
  if (4 * t.back() < s.samples) return {t.back(), 2 * t.back()};
  return {std::max(1, t.back() / 2), t.back()};
}

/// Dyadic depths for the A_p stability probe; the grid is 4 * 2^D per axis.
inline std::pair<int, int> weight_depths(int dim) { return dim <= 2 ? std::pair{6, 8} : std::pair{3, 5}; }

struct SeminormTable {
  int truncation = 0;
  std::map<std::pair<std::vector<int>, std::vector<int>>, double> declared;   // (alpha, beta) -> value
  std::map<std::pair<std::vector<int>, std::vector<int>>, double> delta_free;
};

inline SeminormTable seminorm_table(const ExperimentSpec& s, int truncation, int max_order = 3) {
  const TorusGrid g(s.dim, s.samples);
  const LatticeBox box(s.dim, truncation);
  const Symbol a = build_symbol(s, g, box);
  const SymbolOrder ord = a.order();
  const SymbolOrder free{ord.m, ord.rho, 0.0};
  SeminormTable t;
  t.truncation = truncation;
  const auto indices = multi_indices_up_to(s.dim, max_order);
  for (const auto& beta : indices) {
    const Symbol d = spectral_x_derivative(a, beta);
    for (const auto& alpha : indices) {
      bool fits = true;
      for (int j = 0; j < s.dim; ++j) fits &= alpha[j] < box.region().extent(j);
      if (!fits) continue;
      const auto key = std::pair{alpha.entries(), beta.entries()};
      t.declared[key] = seminorm_of_derivative(d, ord, alpha, beta).value;
      t.delta_free[key] = seminorm_of_derivative(d, free, alpha, beta).value;
    }
  }
  return t;
}

namespace detail {

struct StabilityResult {
  double worst = 0.0;
  double largest = 0.0;
  std::string where;
};

inline std::string multi_index_label(const std::vector<int>& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(a[i]);
  return out + ")";
}

inline StabilityResult compare_tables(const std::map<std::pair<std::vector<int>, std::vector<int>>, double>& a,
                                      const std::map<std::pair<std::vector<int>, std::vector<int>>, double>& b) {
  StabilityResult r;
  for (const auto& [k, v] : a) r.largest = std::max(r.largest, v);
  for (const auto& [k, v] : b) r.largest = std::max(r.largest, v);
  const double floor = 1e-9 * std::max(r.largest, 1e-300);
  for (const auto& [k, va] : a) {
    auto it = b.find(k);
    if (it == b.end()) continue;
    const double c = relative_change(va, it->second, floor);
    if (c > r.worst) {
      r.worst = c;
      r.where = "alpha=" + multi_index_label(k.first) + " beta=" + multi_index_label(k.second);
    }
  }
  return r;
}

/// Fills one pass/fail check; slack = bound - value for value <= bound.
inline GateCheck le_check(std::string name, double value, double bound, std::string detail = {}, bool strict = false) {
  GateCheck c{std::move(name), "", value, bound, bound - value, std::move(detail)};
  c.status = (strict ? value < bound : value <= bound) ? "pass" : "fail";
  return c;
}

inline GateCheck note(std::string name, std::string detail) { return {std::move(name), "note", {}, {}, {}, std::move(detail)}; }

inline void finish(TheoremVerdict& v) {
  v.applies = true;
  v.summary = "applies";
  for (const auto& c : v.checks) {
    if (c.status != "fail") continue;
    v.applies = false;
    v.summary = "fails: " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
    break;
  }
}

}  // namespace detail

/// Everything the gate measures, computed once per run.
class GateContext {
 public:
  explicit GateContext(const ExperimentSpec& s) : spec_(s) {}

  const std::pair<SeminormTable, SeminormTable>& seminorms() {
    if (!seminorms_) {
      const auto [na, nb] = refinement_pair(spec_);
      if (2 * nb >= spec_.samples) throw SpecError("gate: refinement truncation " + std::to_string(nb) + " needs M > 2N");
      seminorms_.emplace(seminorm_table(spec_, na), seminorm_table(spec_, nb));
    }
    return *seminorms_;
  }

  /// Largest |d_x^alpha (phi - x.xi)| over 1 <= |alpha| <= 3 at both refinement truncations.
  std::pair<double, double> phase_bounds() {
    if (!phase_bounds_) {
      const auto [na, nb] = refinement_pair(spec_);
      auto bound_at = [&](int n) {
        const TorusGrid g(spec_.dim, spec_.samples);
        const Phase phi = build_phase(spec_, g, LatticeBox(spec_.dim, n));
        double worst = 0.0;
        for (const auto& alpha : multi_indices_up_to(spec_.dim, 3))
          if (alpha.order() >= 1) worst = std::max(worst, phase_derivative_bound(phi, alpha));
        return worst;
      };
      phase_bounds_ = std::pair{bound_at(na), bound_at(nb)};
    }
    return *phase_bounds_;
  }

  std::pair<double, double> log_holder() {
    if (!log_holder_) {
      const auto e = *spec_.exponent;
      log_holder_ = std::pair{log_holder_constant(build_exponent(e, TorusGrid(spec_.dim, spec_.samples))),
                              log_holder_constant(build_exponent(e, TorusGrid(spec_.dim, 2 * spec_.samples)))};
    }
    return *log_holder_;
  }

  std::pair<double, double> weight_ap(double p0) {
    if (!weight_ap_) {
      const auto [d1, d2] = weight_depths(spec_.dim);
      auto at = [&](int d) {
        const TorusGrid g(spec_.dim, 4 << d);
        return muckenhoupt_constant(build_weight(spec_.weight, g), p0, CubeFamily(d));
      };
      weight_ap_ = std::pair{at(d1), at(d2)};
    }
    return *weight_ap_;
  }

  const ExperimentSpec& spec() const { return spec_; }

 private:
  const ExperimentSpec& spec_;
  std::optional<std::pair<SeminormTable, SeminormTable>> seminorms_;
  std::optional<std::pair<double, double>> phase_bounds_, log_holder_, weight_ap_;
};

namespace detail {

inline void add_seminorm_check(TheoremVerdict& v, GateContext& ctx, bool delta_free) {
  const auto& [ta, tb] = ctx.seminorms();
  const auto r = delta_free ? compare_tables(ta.delta_free, tb.delta_free) : compare_tables(ta.declared, tb.declared);
  const double thr = ctx.spec().stability_threshold;
  v.checks.push_back(le_check(
      delta_free ? "delta-free seminorms refinement-stable" : "symbol seminorms refinement-stable", r.worst, thr,
      "largest relative change N=" + std::to_string(ta.truncation) + "->" + std::to_string(tb.truncation) +
          (r.where.empty() ? "" : " at " + r.where) + ", largest seminorm " + fmt(r.largest)));
}

inline void add_phase_form_checks(TheoremVerdict& v, const ExperimentSpec& s) {
  const bool decomposed = s.phase.kind != "sine_perturbed";
  v.checks.push_back({"phase is x.xi + psi(xi)", decomposed ? "pass" : "fail", {}, {}, {},
                      decomposed ? "" : "phase kind " + s.phase.kind});
  if (!decomposed) return;
  const int radius = std::max(2, s.truncations.back());
  const TorusGrid g(s.dim, s.samples);
  const Phase phi = build_phase(s, g, LatticeBox(s.dim, radius));
  const double h = homogeneity_residual(phi.psi());
  const double scale = std::max(1.0, static_cast<double>(radius));
  v.checks.push_back(le_check("psi homogeneous of degree 1", h, 1e-9 * scale, "max |psi(t xi) - t psi(xi)|"));
}

inline void add_exponent_range(TheoremVerdict& v, const Exponent& p) {
  const double lo = p.p_minus(), hi = p.p_plus();
  GateCheck c{"1 < p_minus <= p_plus < infinity", "", lo, 1.0, lo - 1.0,
              "p_minus = " + fmt(lo) + ", p_plus = " + fmt(hi)};
  c.status = (lo > 1.0 && std::isfinite(hi)) ? "pass" : "fail";
  v.checks.push_back(c);
}

inline void add_log_holder(TheoremVerdict& v, GateContext& ctx) {
  const auto [a, b] = ctx.log_holder();
  const double change = relative_change(a, b, 1e-12);
  v.checks.push_back(le_check("p log-Hoelder stable under M -> 2M", change, ctx.spec().stability_threshold,
                              "constant " + fmt(a) + " -> " + fmt(b)));
}

}  // namespace detail

inline TheoremVerdict gate_weighted_lp0(GateContext& ctx) {
  const auto& s = ctx.spec();
  if (!s.p0) throw SpecError("weighted_lp0 gate needs space.p0");
  TheoremVerdict v;
  v.theorem = "weighted_lp0";
  const double m = s.symbol.m, rho = s.declared_rho(), delta = s.declared_delta(), eps = s.eps();
  const double p0 = *s.p0;

  v.checks.push_back(detail::le_check("epsilon exceeds delta", delta, eps,
                                      "epsilon = " + fmt(eps) + ", delta = " + fmt(delta), true));
  const double rhs = (rho - 1.0) * std::abs(1.0 / p0 - 0.5) - eps;
  v.checks.push_back(detail::le_check("order m <= (rho-1)|1/p0-1/2| - epsilon", m, rhs,
                                      "m = " + fmt(m) + ", bound = " + fmt(rhs)));
  detail::add_seminorm_check(v, ctx, false);
  detail::add_phase_form_checks(v, s);

  const auto [c1, c2] = ctx.weight_ap(p0);
  const auto [d1, d2] = weight_depths(s.dim);
  const double ratio = c2 / c1;
  v.checks.push_back(detail::le_check("weight A_p0 constant depth-stable", ratio, 1.0 + s.weight_depth_threshold,
                                      "[w]_p0 = " + fmt(c1) + " (depth " + std::to_string(d1) + "), " + fmt(c2) +
                                          " (depth " + std::to_string(d2) + ")",
                                      true));

  if (delta > 0.0) {
    const int r_max = static_cast<int>(std::floor(eps / delta)) + 1;
    v.checks.push_back(detail::note("r-range", "1 < r <= " + std::to_string(r_max) + "; summability of <eta>^{-r} needs r > " +
                                                   std::to_string(s.dim) +
                                                   (r_max > s.dim ? " (compatible)" : " (incompatible for this n)")));
  } else {
    v.checks.push_back(detail::note(
        "r-range", "r unbounded - any r > 1 admissible" +
                       std::string(s.dim > 1 ? "; summability of <eta>^{-r} needs r > " + std::to_string(s.dim) : "")));
  }
  v.assumed = {"symbol and phase are smooth", "psi is smooth away from 0"};
  detail::finish(v);
  return v;
}

inline TheoremVerdict gate_variable_lp(GateContext& ctx) {
  const auto& s = ctx.spec();
  if (!s.exponent) throw SpecError("variable_lp gate needs space.exponent");
  TheoremVerdict v;
  v.theorem = "variable_lp";
  const Exponent p = build_exponent(*s.exponent, TorusGrid(s.dim, s.samples));
  detail::add_seminorm_check(v, ctx, true);
  detail::add_exponent_range(v, p);
  detail::add_log_holder(v, ctx);
  v.checks.push_back(detail::note("log-Hoelder scope",
                                  "log-Hoelder continuity is the sufficient condition checked; the statement asks only "
                                  "1 < p_minus <= p_plus < infinity"));

  // the proof passes through the weighted L^{p0} result for some p0 <= p_minus
  const double p0 = std::min(2.0, p.p_minus());
  const double eps = s.epsilon.value_or(0.1);
  const double rho = s.declared_rho();
  if (p0 > 1.0) {
    const double rhs = (rho - 1.0) * std::abs(1.0 / p0 - 0.5) - eps;
    v.checks.push_back(detail::le_check("inherited order condition at p0 = min(2, p_minus)", s.symbol.m, rhs,
                                        "p0 = " + fmt(p0) + ", m = " + fmt(s.symbol.m) + ", bound = " + fmt(rhs)));
  }
  detail::add_phase_form_checks(v, s);
  v.assumed = {"symbol and phase are smooth", "an A_1 weight is available (w = 1)"};
  detail::finish(v);
  return v;
}

inline TheoremVerdict gate_weighted_variable_lp(GateContext& ctx) {
  const auto& s = ctx.spec();
  if (!s.exponent) throw SpecError("weighted_variable_lp gate needs space.exponent");
  TheoremVerdict v;
  v.theorem = "weighted_variable_lp";
  const int n = s.dim;
  const double m = s.symbol.m, rho = s.declared_rho(), delta = s.declared_delta();

  {
    GateCheck c{"0 <= delta < rho <= 1", "", delta, rho, rho - delta, "delta = " + fmt(delta) + ", rho = " + fmt(rho)};
    c.status = (delta >= 0.0 && delta < rho && rho <= 1.0) ? "pass" : "fail";
    v.checks.push_back(c);
  }
  v.checks.push_back(detail::le_check("order m < -(n+1)", m, -(n + 1.0),
                                      m < -(n + 1.0) ? "" : fmt(m) + " >= " + fmt(-(n + 1.0)), true));
  detail::add_seminorm_check(v, ctx, false);
  {
    const auto [a, b] = ctx.phase_bounds();
    const double change = relative_change(a, b, 1e-12);
    v.checks.push_back(detail::le_check("non-linear phase derivatives bounded", change, s.stability_threshold,
                                        "sup over 1 <= |alpha| <= 3: " + fmt(a) + " -> " + fmt(b)));
  }
  const Exponent p = build_exponent(*s.exponent, TorusGrid(n, s.samples));
  detail::add_exponent_range(v, p);
  detail::add_log_holder(v, ctx);
  v.checks.push_back({"p_infinity declared", p.p_infinity ? "pass" : "fail", p.p_infinity, {}, {},
                      p.p_infinity ? "" : "exponent kind " + s.exponent->kind + " is not constant near infinity"});

  const bool structured = s.weight.kind != "cosine";
  v.checks.push_back({"weight has structured form", structured ? "pass" : "fail", {}, {}, {}, ""});
  if (structured && p.p_infinity) {
    const auto rep = admissible_weight_check(p, s.weight.structure);
    for (const auto& q : rep.checks) {
      GateCheck c{"weight admissibility: " + q.name, q.pass ? "pass" : "fail", q.value, q.upper, q.slack,
                  fmt(q.lower) + " < " + fmt(q.value) + " < " + fmt(q.upper)};
      v.checks.push_back(c);
    }
  }
  v.assumed = {"symbol and phase are smooth", "w lies in the variable Muckenhoupt class (not computed)"};
  detail::finish(v);
  return v;
}

inline GateReport theorem_gate(const ExperimentSpec& s) {
  GateContext ctx(s);
  GateReport rep;
  for (const auto& t : s.theorem_list()) {
    if (t == "weighted_lp0") rep.theorems.push_back(gate_weighted_lp0(ctx));
    else if (t == "variable_lp") rep.theorems.push_back(gate_variable_lp(ctx));
    else rep.theorems.push_back(gate_weighted_variable_lp(ctx));
    rep.all_apply = rep.all_apply && rep.theorems.back().applies;
  }
  return rep;
}

}  // namespace torfio::lab
