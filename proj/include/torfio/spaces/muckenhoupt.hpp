#pragma once

// Muckenhoupt constants over dyadic cubes, the A_1 constant over dyadic balls,
// and the admissibility conditions for structured weights against p(.).
//
//   [w]_{p0} = max_Q (avg_Q w) (avg_Q w^{-1/(p0-1)})^{p0-1}

#include <cmath>
#include <string>
#include <vector>

#include "torfio/spaces/exponent.hpp"
#include "torfio/spaces/maximal.hpp"

namespace torfio {

/// All dyadic cubes of [0,1)^n of side 2^{-d}, d = 0..depth.
struct CubeFamily {
  int depth = 0;

  explicit CubeFamily(int d) : depth(d) {
    if (d < 0 || d > 30) throw DomainError("CubeFamily: depth must lie in [0, 30]");
  }

  /// Cube label of grid point `k` at level d: floor(k_j 2^d / M) per axis, row-major.
  static std::size_t cube_of(const TorusGrid& g, std::span<const int> k, int d) {
    std::size_t c = 0;
    const long long side = 1LL << d;
    for (int j = 0; j < g.dim; ++j) c = c * side + static_cast<std::size_t>(k[j] * side / g.samples);
    return c;
  }
};

/// Largest [w]_{p0} among cubes at each level 0..depth.
inline std::vector<double> muckenhoupt_profile(const Weight& w, double p0, const CubeFamily& cubes) {
  if (!(p0 > 1.0)) throw DomainError("muckenhoupt_constant: need p0 > 1");
  const auto& g = w.grid;
  const double e = -1.0 / (p0 - 1.0);
  std::vector<double> dual(w.values.size());
  for (std::size_t i = 0; i < dual.size(); ++i) dual[i] = std::pow(w.values[i], e);
  std::vector<std::vector<int>> coords(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) coords[i] = g.coords(i);

  std::vector<double> out(cubes.depth + 1, 0.0);
  for (int d = 0; d <= cubes.depth; ++d) {
    std::size_t count = 1;
    for (int j = 0; j < g.dim; ++j) count *= static_cast<std::size_t>(1) << d;
    std::vector<double> sw(count, 0.0), sd(count, 0.0);
    std::vector<std::size_t> n(count, 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::size_t c = CubeFamily::cube_of(g, coords[i], d);
      sw[c] += w.values[i];
      sd[c] += dual[i];
      ++n[c];
    }
    for (std::size_t c = 0; c < count; ++c) {
      if (n[c] == 0) throw DomainError("muckenhoupt_constant: a cube contains no grid point");
      const double aw = sw[c] / static_cast<double>(n[c]);
      const double ad = sd[c] / static_cast<double>(n[c]);
      out[d] = std::max(out[d], aw * std::pow(ad, p0 - 1.0));
    }
  }
  return out;
}

inline double muckenhoupt_constant(const Weight& w, double p0, const CubeFamily& cubes) {
  const auto profile = muckenhoupt_profile(w, p0, cubes);
  return *std::max_element(profile.begin(), profile.end());
}

/// max_x Mw(x) / w(x)
inline double a1_constant(const Weight& w, const BallFamily& balls) {
  GridFunction f(w.grid);
  for (std::size_t i = 0; i < f.size(); ++i) f.values[i] = w.values[i];
  const auto mw = maximal(f, balls);
  double best = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) best = std::max(best, mw.values[i].real() / w.values[i]);
  return best;
}

struct WeightPowerCheck {
  double q = 0.0;                // delta p + 1 - delta
  double power_in_q = 0.0;       // [w^delta]_q
  double bound = 0.0;            // [w]_p^delta
  double power_in_p = 0.0;       // [w^delta]_p
};

inline WeightPowerCheck weight_power_check(const Weight& w, double p, double delta, const CubeFamily& cubes) {
  if (!(p > 1.0)) throw DomainError("weight_power_check: need p > 1");
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("weight_power_check: delta must lie in (0, 1]");
  WeightPowerCheck r;
  r.q = delta * p + 1.0 - delta;
  const Weight wd = w.power(delta);
  r.power_in_q = muckenhoupt_constant(wd, r.q, cubes);
  r.bound = std::pow(muckenhoupt_constant(w, p, cubes), delta);
  r.power_in_p = muckenhoupt_constant(wd, p, cubes);
  return r;
}

struct Inequality {
  std::string name;
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
  double slack = 0.0;  // min(value - lower, upper - value); positive iff strict
  bool pass = false;
};

struct AdmissibilityReport {
  std::vector<Inequality> checks;
  bool pass = true;
  std::string first_failure;
};

/// -n/p(x_k) < beta_k < n/p'(x_k) at every center (center chain), and
/// -n/p_inf < beta + sum beta_k < n/p'_inf (infinity chain).
/// p(x_k) is read at the grid point nearest x_k.
inline AdmissibilityReport admissible_weight_check(const Exponent& p, const WeightStructure& s) {
  if (!p.p_infinity) throw DomainError("admissible_weight_check: p_infinity is not declared");
  const auto& g = p.grid;
  const double n = g.dim;
  AdmissibilityReport rep;
  auto add = [&](std::string name, double lo, double v, double hi) {
    Inequality q{std::move(name), lo, v, hi, std::min(v - lo, hi - v), false};
    q.pass = q.slack > 0.0;
    if (!q.pass && rep.pass) {
      rep.pass = false;
      rep.first_failure = q.name;
    }
    rep.checks.push_back(std::move(q));
  };
  for (std::size_t k = 0; k < s.factors.size(); ++k) {
    const auto& f = s.factors[k];
    require_same_dim(g.dim, static_cast<int>(f.center.size()), "admissible_weight_check");
    std::vector<int> nearest(g.dim);
    for (int j = 0; j < g.dim; ++j) nearest[j] = static_cast<int>(std::lround(f.center[j] * g.samples));
    const double pk = p.values[g.index(nearest)];
    add("center chain k=" + std::to_string(k), -n / pk, f.exponent, n * (1.0 - 1.0 / pk));
  }
  double total = s.beta;
  for (const auto& f : s.factors) total += f.exponent;
  const double pinf = *p.p_infinity;
  add("infinity chain", -n / pinf, total, n * (1.0 - 1.0 / pinf));
  return rep;
}

}  // namespace torfio
