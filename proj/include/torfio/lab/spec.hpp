#pragma once

// Experiment specifications: JSON parsing, validation, and the builders that
// turn the operator / space descriptions into concrete objects on a grid.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "torfio/core/errors.hpp"
#include "torfio/symbol/library.hpp"
#include "torfio/symbol/phase.hpp"
#include "torfio/spaces/exponent.hpp"

namespace torfio::lab {

using json = nlohmann::json;

class SpecError : public Error {
 public:
  using Error::Error;
};

enum class NormKind { weighted_constant, variable, weighted_variable };

struct SymbolSpec {
  std::string kind = "bracket_power";  // bracket_power | character_bracket | cosine_bracket | random_trig | constant | mean_projection
  double m = 0.0;
  std::optional<double> rho, delta;  // declared class; defaults 1, 0
  double scale = 1.0;
  int axis = 0;
  int degree = 2;
  std::uint64_t seed = 1;
  double value = 1.0;
};

struct PhaseSpec {
  std::string kind = "linear";  // linear | linear_plus_psi | sine_perturbed
  std::string psi = "zero";
  double amplitude = 0.0;
};

struct ExponentSpec {
  std::string kind = "constant";  // constant | sinusoidal | piecewise | localized
  double p = 2.0;
  double base = 2.0, amplitude = 0.0;
  int axis = 0;
  double left = 2.0, right = 2.0, at = 0.5;
  double p_infinity = 2.0, height = 0.0, radius = 0.25;
};

struct WeightSpec {
  std::string kind = "unit";  // unit | power | structured | cosine
  double alpha = 0.0;
  WeightStructure structure;
  double offset = 2.0;
};

struct FamilySpec {
  std::string kind = "random-bandlimited";  // harmonics | random-bandlimited | bumps
  int count = 10;
  std::uint64_t seed = 42;
};

struct ExperimentSpec {
  std::string name = "experiment";
  int dim = 1;
  int samples = 64;
  SymbolSpec symbol;
  PhaseSpec phase;
  std::vector<int> truncations;

  NormKind norm = NormKind::weighted_constant;
  std::optional<double> p0;
  std::optional<ExponentSpec> exponent;
  WeightSpec weight;

  FamilySpec family;
  std::vector<std::string> checks{"ratio-sweep"};
  std::vector<std::string> theorems;  // empty: implied by the norm
  std::optional<double> epsilon;       // default 2 delta + 0.1
  double s = 0.5;
  double stability_threshold = 0.1;
  double resolution_threshold = 0.2;
  double weight_depth_threshold = 0.25;
  std::vector<int> resolutions;         // default {M, 2M}
  std::optional<int> msharp_truncation;  // default smallest truncation
  json expect = json::object();         // check -> expected verdict

  double declared_rho() const { return symbol.rho.value_or(1.0); }
  double declared_delta() const { return symbol.delta.value_or(0.0); }
  double eps() const { return epsilon.value_or(2.0 * declared_delta() + 0.1); }
  int msharp_N() const { return msharp_truncation.value_or(truncations.front()); }
  std::vector<int> resolution_list() const {
    return resolutions.empty() ? std::vector<int>{samples, 2 * samples} : resolutions;
  }
  bool wants(const std::string& check) const {
    for (const auto& c : checks)
      if (c == check) return true;
    return false;
  }
  std::vector<std::string> theorem_list() const {
    if (!theorems.empty()) return theorems;
    switch (norm) {
      case NormKind::weighted_constant: return {"weighted_lp0"};
      case NormKind::variable: return {"variable_lp"};
      case NormKind::weighted_variable: return {"weighted_variable_lp"};
    }
    return {};
  }
};

inline const char* to_string(NormKind k) {
  switch (k) {
    case NormKind::weighted_constant: return "weighted_constant";
    case NormKind::variable: return "variable";
    case NormKind::weighted_variable: return "weighted_variable";
  }
  return "?";
}

namespace detail {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SpecError(std::string("field '") + key + "': " + e.what());
  }
}

inline const json& require(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) throw SpecError(std::string(where) + ": missing field '" + key + "'");
  return j.at(key);
}

inline void require_one_of(const std::string& v, std::initializer_list<const char*> allowed, const char* what) {
  for (const char* a : allowed)
    if (v == a) return;
  std::string msg = std::string(what) + ": unknown kind '" + v + "'";
  throw SpecError(msg);
}

inline SymbolSpec parse_symbol(const json& j) {
  SymbolSpec s;
  s.kind = get_or<std::string>(j, "kind", s.kind);
  require_one_of(s.kind,
                 {"bracket_power", "character_bracket", "cosine_bracket", "random_trig", "constant", "mean_projection"},
                 "symbol");
  s.m = get_or<double>(j, "m", 0.0);
  if (j.contains("rho")) s.rho = get_or<double>(j, "rho", 1.0);
  if (j.contains("delta")) s.delta = get_or<double>(j, "delta", 0.0);
  s.scale = get_or<double>(j, "scale", 1.0);
  s.axis = get_or<int>(j, "axis", 0);
  s.degree = get_or<int>(j, "degree", 2);
  s.seed = get_or<std::uint64_t>(j, "seed", 1);
  s.value = get_or<double>(j, "value", 1.0);
  return s;
}

inline PhaseSpec parse_phase(const json& j) {
  PhaseSpec p;
  p.kind = get_or<std::string>(j, "kind", p.kind);
  require_one_of(p.kind, {"linear", "linear_plus_psi", "sine_perturbed"}, "phase");
  p.psi = get_or<std::string>(j, "psi", p.kind == "linear_plus_psi" ? "euclidean" : "zero");
  require_one_of(p.psi, {"zero", "euclidean", "l1", "linf", "quadratic"}, "phase.psi");
  p.amplitude = get_or<double>(j, "amplitude", 0.0);
  return p;
}

inline ExponentSpec parse_exponent(const json& j) {
  ExponentSpec e;
  e.kind = get_or<std::string>(j, "kind", e.kind);
  require_one_of(e.kind, {"constant", "sinusoidal", "piecewise", "localized"}, "exponent");
  e.p = get_or<double>(j, "p", 2.0);
  e.base = get_or<double>(j, "base", 2.0);
  e.amplitude = get_or<double>(j, "amplitude", 0.0);
  e.axis = get_or<int>(j, "axis", 0);
  e.left = get_or<double>(j, "left", 2.0);
  e.right = get_or<double>(j, "right", 2.0);
  e.at = get_or<double>(j, "at", 0.5);
  e.p_infinity = get_or<double>(j, "p_infinity", 2.0);
  e.height = get_or<double>(j, "height", 0.0);
  e.radius = get_or<double>(j, "radius", 0.25);
  return e;
}

inline WeightSpec parse_weight(const json& j, int dim) {
  WeightSpec w;
  w.kind = get_or<std::string>(j, "kind", w.kind);
  require_one_of(w.kind, {"unit", "power", "structured", "cosine"}, "weight");
  w.alpha = get_or<double>(j, "alpha", 0.0);
  w.offset = get_or<double>(j, "offset", 2.0);
  if (w.kind == "power") {
    w.structure.factors.push_back({std::vector<double>(dim, 0.0), w.alpha});
  } else if (w.kind == "structured") {
    w.structure.beta = get_or<double>(j, "beta", 0.0);
    if (j.contains("factors")) {
      for (const auto& f : j.at("factors")) {
        WeightStructure::Factor fac;
        fac.center = get_or<std::vector<double>>(f, "center", std::vector<double>(dim, 0.0));
        fac.exponent = get_or<double>(f, "exponent", 0.0);
        if (static_cast<int>(fac.center.size()) != dim) throw SpecError("weight factor center has wrong dimension");
        w.structure.factors.push_back(std::move(fac));
      }
    }
  }
  if (w.kind == "cosine" && !(w.offset > 1.0)) throw SpecError("weight: cosine offset must exceed 1");
  return w;
}

}  // namespace detail

inline ExperimentSpec parse_spec(const json& j) {
  if (!j.is_object()) throw SpecError("spec must be a JSON object");
  using detail::get_or;
  ExperimentSpec s;
  s.name = get_or<std::string>(j, "name", s.name);
  s.dim = get_or<int>(j, "dim", 1);
  s.samples = get_or<int>(j, "M", 64);
  if (s.dim < 1 || s.dim > 3) throw SpecError("dim must be 1, 2 or 3");
  if (s.samples < 4) throw SpecError("M must be at least 4");

  const json& op = detail::require(j, "operator", "spec");
  s.symbol = detail::parse_symbol(detail::require(op, "symbol", "operator"));
  s.phase = op.contains("phase") ? detail::parse_phase(op.at("phase")) : PhaseSpec{};
  s.truncations = get_or<std::vector<int>>(op, "truncations", {});
  if (s.truncations.empty()) throw SpecError("operator.truncations must be non-empty");
  for (std::size_t i = 0; i < s.truncations.size(); ++i) {
    if (s.truncations[i] < 1) throw SpecError("truncations must be positive");
    if (i > 0 && s.truncations[i] <= s.truncations[i - 1]) throw SpecError("truncations must be strictly increasing");
  }
  if (2 * s.truncations.back() >= s.samples) throw SpecError("need 2 * max truncation < M");
  if (s.symbol.rho && !(*s.symbol.rho >= 0.0 && *s.symbol.rho <= 1.0)) throw SpecError("symbol.rho must lie in [0,1]");
  if (s.symbol.delta && !(*s.symbol.delta >= 0.0 && *s.symbol.delta <= 1.0))
    throw SpecError("symbol.delta must lie in [0,1]");
  if (s.symbol.axis < 0 || s.symbol.axis >= s.dim) throw SpecError("symbol.axis out of range");

  const json& sp = detail::require(j, "space", "spec");
  const auto norm = get_or<std::string>(sp, "norm", "weighted_constant");
  detail::require_one_of(norm, {"weighted_constant", "variable", "weighted_variable"}, "space.norm");
  s.norm = norm == "variable" ? NormKind::variable
           : norm == "weighted_variable" ? NormKind::weighted_variable
                                         : NormKind::weighted_constant;
  if (sp.contains("p0")) s.p0 = get_or<double>(sp, "p0", 2.0);
  if (sp.contains("exponent")) s.exponent = detail::parse_exponent(sp.at("exponent"));
  if (sp.contains("weight")) s.weight = detail::parse_weight(sp.at("weight"), s.dim);
  if (s.norm == NormKind::weighted_constant && !s.p0) throw SpecError("space.p0 is required for weighted_constant");
  if (s.norm != NormKind::weighted_constant && !s.exponent) throw SpecError("space.exponent is required for this norm");
  if (s.p0 && !(*s.p0 > 1.0)) throw SpecError("space.p0 must exceed 1");
  if (s.norm == NormKind::variable && s.weight.kind != "unit") throw SpecError("variable norm takes no weight");

  if (j.contains("family")) {
    const json& f = j.at("family");
    s.family.kind = get_or<std::string>(f, "kind", s.family.kind);
    detail::require_one_of(s.family.kind, {"harmonics", "random-bandlimited", "bumps"}, "family");
    s.family.count = get_or<int>(f, "count", s.family.count);
    s.family.seed = get_or<std::uint64_t>(f, "seed", s.family.seed);
    if (s.family.count < 1) throw SpecError("family.count must be >= 1");
  }

  s.checks = get_or<std::vector<std::string>>(j, "checks", s.checks);
  for (const auto& c : s.checks)
    detail::require_one_of(c, {"gate-only", "ratio-sweep", "weak11", "msharp-domination", "msharp-control"}, "checks");
  s.theorems = get_or<std::vector<std::string>>(j, "theorems", {});
  for (const auto& t : s.theorems)
    detail::require_one_of(t, {"weighted_lp0", "variable_lp", "weighted_variable_lp"}, "theorems");
  if (j.contains("epsilon")) s.epsilon = get_or<double>(j, "epsilon", 0.1);
  s.s = get_or<double>(j, "s", 0.5);
  if (!(s.s > 0.0 && s.s < 1.0)) throw SpecError("s must lie in (0,1)");
  s.stability_threshold = get_or<double>(j, "stability_threshold", s.stability_threshold);
  s.resolution_threshold = get_or<double>(j, "resolution_threshold", s.resolution_threshold);
  s.weight_depth_threshold = get_or<double>(j, "weight_depth_threshold", s.weight_depth_threshold);
  s.resolutions = get_or<std::vector<int>>(j, "resolutions", {});
  if (j.contains("msharp_truncation")) s.msharp_truncation = get_or<int>(j, "msharp_truncation", 1);
  for (int r : s.resolution_list())
    if (2 * s.msharp_N() >= r) throw SpecError("need 2 * msharp_truncation < every resolution");
  if (j.contains("expect")) {
    if (!j.at("expect").is_object()) throw SpecError("expect must be an object");
    s.expect = j.at("expect");
  }
  return s;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError(path + ": " + e.what());
  }
}

// ---- builders -------------------------------------------------------------

inline SymbolOrder declared_order(const ExperimentSpec& s) {
  return {s.symbol.m, s.declared_rho(), s.declared_delta()};
}

inline Symbol build_symbol(const ExperimentSpec& s, const TorusGrid& g, const LatticeBox& box) {
  const auto& sy = s.symbol;
  Symbol a;
  if (sy.kind == "bracket_power") a = symbols::bracket_power(g, box, sy.m);
  else if (sy.kind == "character_bracket") a = symbols::character_bracket(g, box, sy.m, sy.axis);
  else if (sy.kind == "cosine_bracket") a = symbols::cosine_bracket(g, box, sy.m, sy.scale);
  else if (sy.kind == "random_trig") a = symbols::random_trig_bracket(g, box, sy.m, sy.degree, sy.seed);
  else if (sy.kind == "constant") a = symbols::constant(g, box, sy.value);
  else a = symbols::frequency_indicator(g, box, LatticePoint(g.dim, 0));
  return Symbol(g, box, declared_order(s), a.table());
}

inline Phase build_phase(const ExperimentSpec& s, const TorusGrid& g, const LatticeBox& box) {
  const auto& p = s.phase;
  if (p.kind == "linear") return Phase::linear(g, box);
  if (p.kind == "sine_perturbed") return Phase::sine_perturbed(g, box, p.amplitude);
  PsiKind k = PsiKind::zero;
  if (p.psi == "euclidean") k = PsiKind::euclidean;
  else if (p.psi == "l1") k = PsiKind::l1;
  else if (p.psi == "linf") k = PsiKind::linf;
  else if (p.psi == "quadratic") k = PsiKind::quadratic;
  return Phase::linear_plus_psi(g, box, k);
}

inline Exponent build_exponent(const ExponentSpec& e, const TorusGrid& g) {
  if (e.axis < 0 || e.axis >= g.dim) throw SpecError("exponent.axis out of range");
  try {
    if (e.kind == "constant") return Exponent::constant(g, e.p);
    if (e.kind == "sinusoidal") return Exponent::sinusoidal(g, e.base, e.amplitude, e.axis);
    if (e.kind == "piecewise") return Exponent::piecewise(g, e.left, e.right, e.at, e.axis);
    return Exponent::localized(g, e.p_infinity, e.height, e.radius);
  } catch (const DomainError& err) {
    throw SpecError(std::string("exponent: ") + err.what());
  }
}

inline Weight build_weight(const WeightSpec& w, const TorusGrid& g) {
  try {
    if (w.kind == "unit") return Weight(g, std::vector<double>(g.size(), 1.0), WeightStructure{});
    if (w.kind == "cosine") {
      std::vector<double> v(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) v[i] = w.offset + std::cos(2.0 * std::numbers::pi * g.point(i)[0]);
      return Weight(g, std::move(v));
    }
    return structured_weight(g, w.structure);
  } catch (const DomainError& err) {
    throw SpecError(std::string("weight: ") + err.what());
  }
}

/// The space's exponent on grid g: p0 as a constant for weighted_constant
/// spaces, the declared p(.) otherwise.
inline Exponent space_exponent(const ExperimentSpec& s, const TorusGrid& g) {
  if (s.norm == NormKind::weighted_constant) return Exponent::constant(g, *s.p0);
  return build_exponent(*s.exponent, g);
}

/// Weight entering ||w f||_{p(.)}. For weighted_constant spaces this is
/// w^{1/p0}, which turns the measure weight into a multiplier.
inline Weight space_multiplier_weight(const ExperimentSpec& s, const TorusGrid& g) {
  const Weight w = build_weight(s.weight, g);
  if (s.norm == NormKind::weighted_constant) return w.power(1.0 / *s.p0);
  return w;
}

inline double space_norm(const ExperimentSpec& s, const GridFunction& f, const Exponent* p, const Weight& w) {
  switch (s.norm) {
    case NormKind::weighted_constant: return weighted_constant_norm(f, *s.p0, w);
    case NormKind::variable: return luxemburg_norm(f, *p);
    case NormKind::weighted_variable: return weighted_variable_norm(f, *p, w);
  }
  return 0.0;
}

// ---- short labels for reports --------------------------------------------

inline std::string fmt(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

inline std::string describe(const ExponentSpec& e) {
  if (e.kind == "constant") return "constant(" + fmt(e.p) + ")";
  if (e.kind == "sinusoidal") return "sinusoidal(" + fmt(e.base) + "," + fmt(e.amplitude) + ")";
  if (e.kind == "piecewise") return "piecewise(" + fmt(e.left) + "," + fmt(e.right) + "," + fmt(e.at) + ")";
  return "localized(" + fmt(e.p_infinity) + "," + fmt(e.height) + "," + fmt(e.radius) + ")";
}

inline std::string describe(const WeightSpec& w) {
  if (w.kind == "unit") return "unit";
  if (w.kind == "power") return "power(" + fmt(w.alpha) + ")";
  if (w.kind == "cosine") return "cosine(" + fmt(w.offset) + ")";
  std::string out = "structured(" + fmt(w.structure.beta);
  for (const auto& f : w.structure.factors) out += ";" + fmt(f.exponent);
  return out + ")";
}

inline std::string p_label(const ExperimentSpec& s) {
  return s.norm == NormKind::weighted_constant ? "constant(" + fmt(*s.p0) + ")" : describe(*s.exponent);
}

}  // namespace torfio::lab
