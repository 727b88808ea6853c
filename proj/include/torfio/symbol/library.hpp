#pragma once

// Standard symbols used by the boundedness experiments. All are declared with
// rho = 1, delta = 0 unless stated otherwise.

#include <cmath>
#include <numbers>
#include <random>

#include "torfio/symbol/symbol.hpp"

namespace torfio::symbols {

inline constexpr SymbolOrder classical(double m) { return {m, 1.0, 0.0}; }

/// <xi>^m
inline Symbol bracket_power(TorusGrid grid, LatticeBox box, double m) {
  return Symbol::tabulate(grid, box, classical(m), [m](std::span<const double>, std::span<const int> xi) {
    return cplx(std::pow(japanese_bracket(xi), m));
  });
}

/// e^{2 pi i x_axis} <xi>^m
inline Symbol character_bracket(TorusGrid grid, LatticeBox box, double m, int axis = 0) {
  return Symbol::tabulate(grid, box, classical(m), [m, axis](std::span<const double> x, std::span<const int> xi) {
    return std::polar(std::pow(japanese_bracket(xi), m), 2.0 * std::numbers::pi * x[axis]);
  });
}

/// scale * (1 + cos(2 pi x_1)) <xi>^m
inline Symbol cosine_bracket(TorusGrid grid, LatticeBox box, double m, double scale = 1.0) {
  return Symbol::tabulate(grid, box, classical(m), [m, scale](std::span<const double> x, std::span<const int> xi) {
    return cplx(scale * (1.0 + std::cos(2.0 * std::numbers::pi * x[0])) * std::pow(japanese_bracket(xi), m));
  });
}

/// Coefficients of a random trigonometric polynomial in x: complex Gaussian
/// c_eta / <eta>^2 for |eta_j| <= degree, drawn in box order.
inline SpectralFunction random_trig_coefficients(int dim, int degree, std::uint64_t seed) {
  LatticeBox etas(dim, degree);
  SpectralFunction c(etas);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t k = 0; k < etas.size(); ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    const double b = japanese_bracket(etas.point(k));
    c.coeffs[k] = cplx(re, im) / (b * b);
  }
  return c;
}

/// (sum_eta c_eta e^{2 pi i x.eta}) <xi>^m with random c_eta, |eta_j| <= degree.
inline Symbol random_trig_bracket(TorusGrid grid, LatticeBox box, double m, int degree, std::uint64_t seed) {
  const auto coeffs = random_trig_coefficients(grid.dim, degree, seed);
  const auto envelope_x = fourier_inverse(coeffs, grid);
  std::vector<cplx> t(grid.size() * box.size());
  for (std::size_t k = 0; k < box.size(); ++k) {
    const double env = std::pow(japanese_bracket(box.point(k)), m);
    for (std::size_t i = 0; i < grid.size(); ++i) t[k * grid.size() + i] = envelope_x.values[i] * env;
  }
  return Symbol(grid, box, classical(m), std::move(t));
}

/// a = value everywhere. value = 1 with the linear phase gives the identity on band-limited functions.
inline Symbol constant(TorusGrid grid, LatticeBox box, cplx value = 1.0) {
  return Symbol(grid, box, classical(0.0), std::vector<cplx>(grid.size() * box.size(), value));
}

/// a(x, xi) = 1 if xi == xi0 else 0. xi0 = 0 gives the projection onto the mean.
inline Symbol frequency_indicator(TorusGrid grid, LatticeBox box, const LatticePoint& xi0) {
  if (!box.contains(xi0)) throw DomainError("frequency_indicator: xi0 outside the box");
  std::vector<cplx> t(grid.size() * box.size(), cplx{});
  const std::size_t k = box.index(xi0);
  for (std::size_t i = 0; i < grid.size(); ++i) t[k * grid.size() + i] = 1.0;
  return Symbol(grid, box, classical(0.0), std::move(t));
}

}  // namespace torfio::symbols
