#pragma once

// Variable exponents p(.) on the grid, weights, and the norms built from them.
//
//   modular    rho_p(f) = grid average of |f(x)|^{p(x)}
//   Luxemburg  ||f||_p  = inf { lambda > 0 : rho_p(f / lambda) <= 1 }
//   weighted   ||f||_{p,w} = ||w f||_p

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "torfio/core/fourier.hpp"

namespace torfio {

struct Exponent {
  TorusGrid grid;
  std::vector<double> values;
  /// Set only when p is constant outside a ball of radius < 1/2 about 0.
  std::optional<double> p_infinity;

  Exponent() = default;
  Exponent(TorusGrid g, std::vector<double> v, std::optional<double> p_inf = std::nullopt)
      : grid(g), values(std::move(v)), p_infinity(p_inf) {
    if (values.size() != grid.size()) throw DimensionError("Exponent: sample count mismatch");
    for (double p : values)
      if (!std::isfinite(p) || p < 1.0) throw DomainError("Exponent: samples must be finite and >= 1");
  }

  double p_minus() const { return *std::min_element(values.begin(), values.end()); }
  double p_plus() const { return *std::max_element(values.begin(), values.end()); }
  double at(std::size_t i) const { return values[i]; }

  static Exponent constant(TorusGrid g, double p) { return Exponent(g, std::vector<double>(g.size(), p), p); }

  /// base + amplitude * sin(2 pi x_axis)
  static Exponent sinusoidal(TorusGrid g, double base, double amplitude, int axis = 0) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      v[i] = base + amplitude * std::sin(2.0 * std::numbers::pi * g.point(i)[axis]);
    return Exponent(g, std::move(v));
  }

  /// `left` for x_axis < at, `right` otherwise.
  static Exponent piecewise(TorusGrid g, double left, double right, double at = 0.5, int axis = 0) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = g.point(i)[axis] < at ? left : right;
    return Exponent(g, std::move(v));
  }

  /// p_inf + height * cos^2(pi d / (2 radius)) for d = |x| < radius, p_inf outside.
  static Exponent localized(TorusGrid g, double p_inf, double height, double radius) {
    if (!(radius > 0.0 && radius < 0.5)) throw DomainError("Exponent::localized: radius must lie in (0, 1/2)");
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double d = periodic_norm(g.point(i));
      const double c = std::cos(std::numbers::pi * d / (2.0 * radius));
      v[i] = d < radius ? p_inf + height * c * c : p_inf;
    }
    return Exponent(g, std::move(v), p_inf);
  }
};

/// (1 + |x|)^beta prod_k |x - x_k|^{beta_k}
struct WeightStructure {
  struct Factor {
    std::vector<double> center;
    double exponent = 0.0;
  };
  double beta = 0.0;
  std::vector<Factor> factors;
};

struct Weight {
  TorusGrid grid;
  std::vector<double> values;
  std::optional<WeightStructure> structure;

  Weight() = default;
  Weight(TorusGrid g, std::vector<double> v, std::optional<WeightStructure> s = std::nullopt)
      : grid(g), values(std::move(v)), structure(std::move(s)) {
    if (values.size() != grid.size()) throw DimensionError("Weight: sample count mismatch");
    for (double w : values)
      if (!std::isfinite(w) || w <= 0.0) throw DomainError("Weight: samples must be finite and positive");
  }

  static Weight unit(TorusGrid g) { return Weight(g, std::vector<double>(g.size(), 1.0)); }

  Weight power(double s) const {
    std::vector<double> v(values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(values[i], s);
    return Weight(grid, std::move(v));
  }
};

/// Samples (1 + |x|)^beta prod_k d(x, x_k)^{beta_k}; distances below 1/(2M)
/// are raised to 1/(2M).
inline Weight structured_weight(const TorusGrid& g, const WeightStructure& s) {
  const double floor_d = 0.5 / g.samples;
  for (const auto& f : s.factors) {
    require_same_dim(g.dim, static_cast<int>(f.center.size()), "structured_weight");
    for (double c : f.center)
      if (c < 0.0 || c >= 1.0) throw DomainError("structured_weight: centers must lie in [0,1)^n");
  }
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto x = g.point(i);
    double w = std::pow(1.0 + periodic_norm(x), s.beta);
    for (const auto& f : s.factors) {
      if (f.exponent == 0.0) continue;
      w *= std::pow(std::max(periodic_distance(x, f.center), floor_d), f.exponent);
    }
    v[i] = w;
  }
  return Weight(g, std::move(v), s);
}

/// d(x, 0)^alpha, the pure power weight.
inline Weight power_weight(const TorusGrid& g, double alpha) {
  WeightStructure s;
  s.factors.push_back({std::vector<double>(g.dim, 0.0), alpha});
  return structured_weight(g, s);
}

inline double modular(const GridFunction& f, const Exponent& p) {
  if (!(f.grid == p.grid)) throw DimensionError("modular: grid mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) s += std::pow(std::abs(f.values[i]), p.values[i]);
  return s * f.grid.cell_measure();
}

namespace detail {

inline double luxemburg_of_magnitudes(const std::vector<double>& a, const std::vector<double>& p, double cell) {
  double top = 0.0;
  for (double v : a) {
    if (!std::isfinite(v)) throw NumericError("luxemburg_norm: non-finite sample");
    top = std::max(top, v);
  }
  if (top == 0.0) return 0.0;
  auto rho = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(a[i] / lambda, p[i]);
    return s * cell;
  };
  // rho(f / lo) > 1 >= rho(f / hi) throughout
  double lo = 0.0, hi = 2.0 * top;
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (rho(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

inline void require_norm_exponent(const Exponent& p, const char* what) {
  if (!(p.p_minus() > 1.0)) throw DomainError(std::string(what) + ": need p_minus > 1");
}

}  // namespace detail

inline double luxemburg_norm(const GridFunction& f, const Exponent& p) {
  if (!(f.grid == p.grid)) throw DimensionError("luxemburg_norm: grid mismatch");
  detail::require_norm_exponent(p, "luxemburg_norm");
  std::vector<double> a(f.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(f.values[i]);
  return detail::luxemburg_of_magnitudes(a, p.values, f.grid.cell_measure());
}

inline double weighted_variable_norm(const GridFunction& f, const Exponent& p, const Weight& w) {
  if (!(f.grid == p.grid) || !(f.grid == w.grid)) throw DimensionError("weighted_variable_norm: grid mismatch");
  detail::require_norm_exponent(p, "weighted_variable_norm");
  std::vector<double> a(f.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(f.values[i]) * w.values[i];
  return detail::luxemburg_of_magnitudes(a, p.values, f.grid.cell_measure());
}

/// (grid average of |f|^p0 w)^{1/p0}
inline double weighted_constant_norm(const GridFunction& f, double p0, const Weight& w) {
  if (!(f.grid == w.grid)) throw DimensionError("weighted_constant_norm: grid mismatch");
  if (!(p0 > 1.0)) throw DomainError("weighted_constant_norm: need p0 > 1");
  double s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) s += std::pow(std::abs(f.values[i]), p0) * w.values[i];
  return std::pow(s * f.grid.cell_measure(), 1.0 / p0);
}

/// | ||f||_{p,w} - || |f|^s ||_{p/s, w^s}^{1/s} |
inline double scaling_identity_residual(const GridFunction& f, const Exponent& p, const Weight& w, double s) {
  if (!(s > 0.0 && s < p.p_minus())) throw DomainError("scaling_identity_residual: need 0 < s < p_minus");
  GridFunction fs(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) fs.values[i] = std::pow(std::abs(f.values[i]), s);
  std::vector<double> ps(p.values.size());
  for (std::size_t i = 0; i < ps.size(); ++i) ps[i] = p.values[i] / s;
  const Exponent p_over_s(p.grid, std::move(ps));
  GridFunction fa(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) fa.values[i] = std::abs(f.values[i]);
  const double lhs = weighted_variable_norm(fa, p, w);
  const double rhs = std::pow(weighted_variable_norm(fs, p_over_s, w.power(s)), 1.0 / s);
  return std::abs(lhs - rhs);
}

/// max over grid pairs with 0 < d(x, y) <= 1/2 of |p(x) - p(y)| (-log d(x, y)).
inline double log_holder_constant(const Exponent& p) {
  const auto& g = p.grid;
  const std::size_t ng = g.size();
  // -log d depends on the offset only
  std::vector<double> weight(ng, 0.0);
  for (std::size_t o = 1; o < ng; ++o) {
    const double d = periodic_norm(g.point(o));
    if (d > 0.0 && d <= 0.5) weight[o] = -std::log(d);
  }
  std::vector<std::vector<int>> coords(ng);
  for (std::size_t i = 0; i < ng; ++i) coords[i] = g.coords(i);
  std::vector<int> y(g.dim);
  double best = 0.0;
  for (std::size_t x = 0; x < ng; ++x) {
    for (std::size_t o = 1; o < ng; ++o) {
      if (weight[o] == 0.0) continue;
      for (int j = 0; j < g.dim; ++j) y[j] = coords[x][j] + coords[o][j];
      best = std::max(best, std::abs(p.values[x] - p.values[g.index(y)]) * weight[o]);
    }
  }
  return best;
}

inline Exponent conjugate_exponent(const Exponent& p) {
  std::vector<double> v(p.values.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(p.values[i] > 1.0)) throw DomainError("conjugate_exponent: p(x) <= 1");
    v[i] = p.values[i] / (p.values[i] - 1.0);
  }
  std::optional<double> inf;
  if (p.p_infinity && *p.p_infinity > 1.0) inf = *p.p_infinity / (*p.p_infinity - 1.0);
  return Exponent(p.grid, std::move(v), inf);
}

}  // namespace torfio
