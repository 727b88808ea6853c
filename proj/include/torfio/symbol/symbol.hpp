#pragma once

// Toroidal symbols a(x, xi) on grid x box, and empirical certification of
// their Hormander class S^m_{rho,delta}:
//
//   |Delta_xi^alpha d_x^beta a(x, xi)| <= C_{alpha,beta} <xi>^{m - rho|alpha| + delta|beta|}
//
// Seminorms are maxima over the sampled table only, i.e. lower bounds on the
// true constants.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "torfio/core/differences.hpp"
#include "torfio/core/fourier.hpp"

namespace torfio {

struct SymbolOrder {
  double m = 0.0;
  double rho = 1.0;
  double delta = 0.0;
};

/// Dense table of a(x, xi). Layout is xi-major: table[xi_index * M^n + x_index].
class Symbol {
 public:
  Symbol() = default;
  Symbol(TorusGrid grid, LatticeBox box, SymbolOrder order, std::vector<cplx> table)
      : grid_(grid), box_(box), order_(order), table_(std::move(table)) {
    require_same_dim(grid_.dim, box_.dim, "Symbol");
    if (table_.size() != grid_.size() * box_.size()) throw DimensionError("Symbol: table size mismatch");
    if (!(order_.rho >= 0.0 && order_.rho <= 1.0 && order_.delta >= 0.0 && order_.delta <= 1.0))
      throw DomainError("Symbol: (rho, delta) must lie in [0,1]^2");
    for (const auto& v : table_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericError("Symbol: non-finite value");
  }

  /// Tabulates fn(x, xi) with x in [0,1)^n coordinates and xi a lattice point.
  template <typename Fn>
  static Symbol tabulate(TorusGrid grid, LatticeBox box, SymbolOrder order, Fn&& fn) {
    std::vector<cplx> t(grid.size() * box.size());
    std::vector<std::vector<double>> points(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) points[i] = grid.point(i);
    for (std::size_t k = 0; k < box.size(); ++k) {
      const auto xi = box.point(k);
      for (std::size_t i = 0; i < grid.size(); ++i)
        t[k * grid.size() + i] = cplx(fn(std::span<const double>(points[i]), std::span<const int>(xi)));
    }
    return Symbol(grid, box, order, std::move(t));
  }

  const TorusGrid& grid() const { return grid_; }
  const LatticeBox& box() const { return box_; }
  const SymbolOrder& order() const { return order_; }
  const std::vector<cplx>& table() const { return table_; }

  cplx operator()(std::size_t x_index, std::size_t xi_index) const { return table_[xi_index * grid_.size() + x_index]; }
  std::span<const cplx> slice(std::size_t xi_index) const {
    return {table_.data() + xi_index * grid_.size(), grid_.size()};
  }

  /// The table as an (n+1)-dimensional lattice table whose last axis is the
  /// flat grid index, so xi-differences can act on all x at once.
  LatticeTable as_lattice_table() const {
    LatticeRegion r = box_.region();
    r.lo.push_back(0);
    r.hi.push_back(static_cast<int>(grid_.size()) - 1);
    return LatticeTable(std::move(r), table_);
  }

 private:
  TorusGrid grid_;
  LatticeBox box_;
  SymbolOrder order_;
  std::vector<cplx> table_;
};

/// alpha with extra zero entries, `before` in front and `after` behind.
inline MultiIndex pad_multi_index(const MultiIndex& alpha, int before, int after) {
  std::vector<int> e(before, 0);
  e.insert(e.end(), alpha.entries().begin(), alpha.entries().end());
  e.insert(e.end(), after, 0);
  return MultiIndex(std::move(e));
}

/// x-Fourier coefficient a^(eta, xi) = M^{-n} sum_x e^{-2 pi i x.eta} a(x, xi), one value per xi.
inline LatticeTable x_fourier_coeff(const Symbol& a, std::span<const int> eta) {
  const auto& g = a.grid();
  require_same_dim(g.dim, static_cast<int>(eta.size()), "x_fourier_coeff");
  for (int e : eta)
    if (2 * std::abs(e) >= g.samples) throw DomainError("x_fourier_coeff: eta is aliased on this grid");

  UnitRoots roots(g.samples);
  std::vector<cplx> chars(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto k = g.coords(i);
    cplx c{1.0, 0.0};
    for (int j = 0; j < g.dim; ++j) c *= roots(k[j], -eta[j]);
    chars[i] = c;
  }
  const double scale = g.cell_measure();
  LatticeTable out(a.box().region());
  for (std::size_t x = 0; x < a.box().size(); ++x) {
    auto s = a.slice(x);
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < s.size(); ++i) acc += chars[i] * s[i];
    out.values[x] = acc * scale;
  }
  return out;
}

/// Every x-Fourier coefficient a^(eta, xi), eta over full_mode_region(grid).
/// Layout is eta-major: coeffs[eta_index * |box| + xi_index].
struct XSpectrum {
  TorusGrid grid;
  LatticeBox box;
  LatticeRegion modes;
  std::vector<cplx> coeffs;

  /// Largest |a^(eta, xi)| over Nyquist modes; zero for odd M.
  double nyquist_max() const {
    double e = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      auto eta = modes.point(i);
      if (!is_nyquist_mode(grid, eta)) continue;
      for (std::size_t k = 0; k < box.size(); ++k) e = std::max(e, std::abs(coeffs[i * box.size() + k]));
    }
    return e;
  }

  /// As a lattice table over (eta, xi) jointly.
  LatticeTable as_lattice_table() const {
    LatticeRegion r = modes;
    auto b = box.region();
    r.lo.insert(r.lo.end(), b.lo.begin(), b.lo.end());
    r.hi.insert(r.hi.end(), b.hi.begin(), b.hi.end());
    return LatticeTable(std::move(r), coeffs);
  }
};

inline XSpectrum x_spectrum(const Symbol& a) {
  const auto& g = a.grid();
  const std::size_t nb = a.box().size();
  const std::size_t ng = g.size();
  auto by_xi = dft_full(a.table(), g, nb);  // [xi][eta]
  XSpectrum s{g, a.box(), full_mode_region(g), std::vector<cplx>(nb * ng)};
  for (std::size_t k = 0; k < nb; ++k)
    for (std::size_t e = 0; e < ng; ++e) s.coeffs[e * nb + k] = by_xi[k * ng + e];
  return s;
}

/// d_x^beta a, per xi slice, by spectral differentiation.
inline Symbol spectral_x_derivative(const Symbol& a, const MultiIndex& beta) {
  require_same_dim(a.grid().dim, beta.dim(), "spectral_x_derivative");
  if (beta.order() == 0) return a;
  auto d = spectral_derivative(a.table(), a.grid(), beta, a.box().size());
  return Symbol(a.grid(), a.box(), a.order(), std::move(d));
}

struct SeminormEstimate {
  MultiIndex alpha;
  MultiIndex beta;
  double value = 0.0;
  std::vector<double> argmax_x;
  LatticePoint argmax_xi;
};

/// Seminorm from a precomputed d_beta = d_x^beta a; `beta` only sets the weight.
inline SeminormEstimate seminorm_of_derivative(const Symbol& d_beta, const SymbolOrder& ord, const MultiIndex& alpha,
                                               const MultiIndex& beta) {
  const int n = d_beta.grid().dim;
  require_same_dim(n, alpha.dim(), "symbol_seminorm");
  require_same_dim(n, beta.dim(), "symbol_seminorm");
  for (int j = 0; j < n; ++j)
    if (alpha[j] >= d_beta.box().region().extent(j)) throw DomainError("symbol_seminorm: box too small for alpha");

  const LatticeTable diff = multi_diff(d_beta.as_lattice_table(), pad_multi_index(alpha, 0, 1));
  const double exponent = ord.m - ord.rho * alpha.order() + ord.delta * beta.order();

  SeminormEstimate est{alpha, beta, 0.0, {}, {}};
  std::size_t best = 0;
  std::vector<double> weight_cache;
  const std::size_t ng = d_beta.grid().size();
  for (std::size_t i = 0; i < diff.values.size(); ++i) {
    const std::size_t xi_flat = i / ng;
    if (weight_cache.size() <= xi_flat) {
      auto p = diff.region.point(i);
      p.pop_back();
      weight_cache.push_back(std::pow(japanese_bracket(p), -exponent));
    }
    const double v = std::abs(diff.values[i]) * weight_cache[xi_flat];
    if (v > est.value) {
      est.value = v;
      best = i;
    }
  }
  auto p = diff.region.point(best);
  est.argmax_x = d_beta.grid().point(static_cast<std::size_t>(p.back()));
  p.pop_back();
  est.argmax_xi = p;
  return est;
}

/// max_{x, xi} |Delta_xi^alpha d_x^beta a(x, xi)| <xi>^{-(m - rho|alpha| + delta|beta|)}
/// over the part of the box where the difference is defined.
inline SeminormEstimate symbol_seminorm(const Symbol& a, const MultiIndex& alpha, const MultiIndex& beta) {
  require_same_dim(a.grid().dim, beta.dim(), "symbol_seminorm");
  return seminorm_of_derivative(spectral_x_derivative(a, beta), a.order(), alpha, beta);
}

/// max_{eta, xi} |Delta_xi^alpha a^(eta, xi)| <eta>^r <xi>^{-(m - rho|alpha| + r delta)}
/// over alias-free eta.
inline double coeff_decay_constant(const XSpectrum& s, const SymbolOrder& ord, const MultiIndex& alpha, int r) {
  const int n = s.grid.dim;
  require_same_dim(n, alpha.dim(), "coeff_decay_constant");
  if (r < 0) throw DomainError("coeff_decay_constant: r must be >= 0");
  for (int j = 0; j < n; ++j)
    if (alpha[j] >= s.box.region().extent(j)) throw DomainError("coeff_decay_constant: box too small for alpha");

  const LatticeTable diff = multi_diff(s.as_lattice_table(), pad_multi_index(alpha, n, 0));
  const double exponent = ord.m - ord.rho * alpha.order() + r * ord.delta;
  double best = 0.0;
  std::vector<int> eta(n), xi(n);
  for (std::size_t i = 0; i < diff.values.size(); ++i) {
    auto p = diff.region.point(i);
    std::copy(p.begin(), p.begin() + n, eta.begin());
    if (is_nyquist_mode(s.grid, eta)) continue;
    std::copy(p.begin() + n, p.end(), xi.begin());
    const double v = std::abs(diff.values[i]) * std::pow(japanese_bracket(eta), r) *
                     std::pow(japanese_bracket(xi), -exponent);
    best = std::max(best, v);
  }
  return best;
}

inline double coeff_decay_constant(const Symbol& a, const MultiIndex& alpha, int r) {
  return coeff_decay_constant(x_spectrum(a), a.order(), alpha, r);
}

}  // namespace torfio
