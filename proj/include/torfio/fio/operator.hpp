#pragma once

// Periodic Fourier integral operators
//
//   A f(x) = sum_{xi in box} e^{2 pi i phi(x, xi)} a(x, xi) f^(xi)
//
// truncated to the operator's lattice box, together with their kernels
//
//   K(x, y) = sum_{xi in box} e^{2 pi i (phi(x, xi) - y.xi)} a(x, xi).

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "torfio/core/differences.hpp"
#include "torfio/core/fourier.hpp"
#include "torfio/core/record.hpp"
#include "torfio/symbol/phase.hpp"
#include "torfio/symbol/symbol.hpp"

namespace torfio {

class FioOperator {
 public:
  FioOperator(Phase phase, Symbol symbol) : phase_(std::move(phase)), symbol_(std::move(symbol)) {
    if (!(phase_.grid() == symbol_.grid())) throw DimensionError("FioOperator: phase and symbol grids differ");
    if (!(phase_.box() == symbol_.box())) throw DimensionError("FioOperator: phase and symbol boxes differ");
    const auto e = phase_.exponential_table();
    amplitude_.resize(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) amplitude_[i] = e[i] * symbol_.table()[i];
  }

  const Phase& phase() const { return phase_; }
  const Symbol& symbol() const { return symbol_; }
  const TorusGrid& grid() const { return symbol_.grid(); }
  const LatticeBox& box() const { return symbol_.box(); }

  /// e^{2 pi i phi(x, xi)} a(x, xi), xi-major.
  const std::vector<cplx>& amplitude() const { return amplitude_; }

 private:
  Phase phase_;
  Symbol symbol_;
  std::vector<cplx> amplitude_;
};

/// Kernel samples, layout x-major: values[x_index * M^n + y_index].
struct KernelTable {
  TorusGrid grid;
  std::vector<cplx> values;

  cplx operator()(std::size_t x, std::size_t y) const { return values[x * grid.size() + y]; }
};

inline Record to_record(const KernelTable& k) { return {RecordKind::kernel_table, k.grid.dim, k.grid.samples, k.values}; }

inline KernelTable kernel_table_from(const Record& r) {
  if (r.kind != RecordKind::kernel_table) throw DomainError("record is not a kernel_table");
  const TorusGrid g(r.dim, r.extent);
  if (r.values.size() != g.size() * g.size()) throw DimensionError("kernel record: value count mismatch");
  return {g, r.values};
}

inline GridFunction apply(const FioOperator& a, const GridFunction& f) {
  if (!(f.grid == a.grid())) throw DimensionError("apply: function grid differs from operator grid");
  const auto fhat = fourier_forward(f, a.box());
  const std::size_t ng = a.grid().size();
  GridFunction out(a.grid());
  const auto& amp = a.amplitude();
  for (std::size_t k = 0; k < fhat.coeffs.size(); ++k) {
    const cplx c = fhat.coeffs[k];
    if (c == cplx{}) continue;
    const cplx* row = &amp[k * ng];
    for (std::size_t i = 0; i < ng; ++i) out.values[i] += row[i] * c;
  }
  return out;
}

/// sum_xi e^{2 pi i x.xi} coeff(xi) f^(xi): pointwise product in frequency, then inverse.
inline GridFunction apply_multiplier(const SpectralFunction& coeff, const GridFunction& f) {
  auto fhat = fourier_forward(f, coeff.box);
  for (std::size_t k = 0; k < fhat.coeffs.size(); ++k) fhat.coeffs[k] *= coeff.coeffs[k];
  return fourier_inverse(fhat, f.grid);
}

/// max_x |A f(x) - sum_eta e^{2 pi i x.eta} (a^(eta, D) e^{2 pi i psi(D)} f)(x)|.
///
/// The eta-sum runs over every alias-free x-mode whose coefficients exceed
/// `spectrum_tolerance` in magnitude (all of them by default).
inline double multiplier_decomposition_residual(const FioOperator& a, const GridFunction& f,
                                                double spectrum_tolerance = 0.0) {
  if (a.phase().kind() == PhaseKind::general)
    throw DomainError("multiplier_decomposition_residual: phase must be x.xi + psi(xi)");
  const auto& g = a.grid();
  const auto spec = x_spectrum(a.symbol());
  if (spec.nyquist_max() > 1e-12 * std::max(1.0, max_abs(a.symbol().table())))
    throw DomainError("multiplier_decomposition_residual: symbol x-spectrum is aliased");

  const auto direct = apply(a, f);
  const std::size_t nb = a.box().size();
  std::vector<cplx> shift(nb);
  for (std::size_t k = 0; k < nb; ++k)
    shift[k] = std::polar(1.0, 2.0 * std::numbers::pi * a.phase().psi().values[k]);

  UnitRoots roots(g.samples);
  std::vector<std::vector<int>> coords(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) coords[i] = g.coords(i);

  std::vector<cplx> sum(g.size(), cplx{});
  for (std::size_t e = 0; e < spec.modes.size(); ++e) {
    const auto eta = spec.modes.point(e);
    if (is_nyquist_mode(g, eta)) continue;
    SpectralFunction coeff(a.box());
    double biggest = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
      const cplx c = spec.coeffs[e * nb + k];
      biggest = std::max(biggest, std::abs(c));
      coeff.coeffs[k] = c * shift[k];
    }
    if (biggest <= spectrum_tolerance) continue;
    const auto term = apply_multiplier(coeff, f);
    for (std::size_t i = 0; i < g.size(); ++i) {
      cplx ch{1.0, 0.0};
      for (int j = 0; j < g.dim; ++j) ch *= roots(coords[i][j], eta[j]);
      sum[i] += ch * term.values[i];
    }
  }
  return max_abs_difference(direct.values, sum);
}

namespace detail {

// K(x, y) = sum_xi amp(x, xi) e^{-2 pi i y.xi}
inline KernelTable kernel_from_amplitude(const TorusGrid& g, const LatticeBox& box, const std::vector<cplx>& amp) {
  const std::size_t ng = g.size(), nb = box.size();
  UnitRoots roots(g.samples);
  std::vector<cplx> chars(nb * ng);  // e^{-2 pi i y.xi}, xi-major
  for (std::size_t k = 0; k < nb; ++k) {
    const auto xi = box.point(k);
    for (std::size_t y = 0; y < ng; ++y) {
      const auto ky = g.coords(y);
      cplx c{1.0, 0.0};
      for (int j = 0; j < g.dim; ++j) c *= roots(ky[j], -xi[j]);
      chars[k * ng + y] = c;
    }
  }
  KernelTable out{g, std::vector<cplx>(ng * ng, cplx{})};
  for (std::size_t x = 0; x < ng; ++x) {
    cplx* row = &out.values[x * ng];
    for (std::size_t k = 0; k < nb; ++k) {
      const cplx b = amp[k * ng + x];
      if (b == cplx{}) continue;
      const cplx* ch = &chars[k * ng];
      for (std::size_t y = 0; y < ng; ++y) row[y] += b * ch[y];
    }
  }
  return out;
}

}  // namespace detail

inline KernelTable kernel(const FioOperator& a) {
  return detail::kernel_from_amplitude(a.grid(), a.box(), a.amplitude());
}

/// M^{-n} sum_y K(x, y) f(y): the kernel route to A f.
inline GridFunction apply_via_kernel(const KernelTable& k, const GridFunction& f) {
  if (!(k.grid == f.grid)) throw DimensionError("apply_via_kernel: grid mismatch");
  const std::size_t ng = f.grid.size();
  GridFunction out(f.grid);
  const double w = f.grid.cell_measure();
  for (std::size_t x = 0; x < ng; ++x) {
    cplx acc{0.0, 0.0};
    for (std::size_t y = 0; y < ng; ++y) acc += k.values[x * ng + y] * f.values[y];
    out.values[x] = acc * w;
  }
  return out;
}

/// d/dx_axis K, from (2 pi i d_x phi) e^{2 pi i phi} a + e^{2 pi i phi} d_x a with
/// the x-derivatives of a and of the non-linear part of phi taken spectrally.
inline KernelTable kernel_x_derivative(const FioOperator& a, int axis) {
  const auto& g = a.grid();
  const auto& box = a.box();
  const auto unit = MultiIndex::unit(g.dim, axis);
  const std::size_t ng = g.size(), nb = box.size();
  const auto da = spectral_x_derivative(a.symbol(), unit);
  const auto e = a.phase().exponential_table();

  std::vector<double> dtheta(ng * nb, 0.0);
  if (a.phase().kind() == PhaseKind::general) {
    auto theta_real = a.phase().nonlinear_part();
    std::vector<cplx> theta(theta_real.begin(), theta_real.end());
    auto d = spectral_derivative(theta, g, unit, nb);
    for (std::size_t i = 0; i < d.size(); ++i) dtheta[i] = d[i].real();
  }

  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<cplx> amp(ng * nb);
  for (std::size_t k = 0; k < nb; ++k) {
    const double xi_j = box.point(k)[axis];
    for (std::size_t i = 0; i < ng; ++i) {
      const std::size_t t = k * ng + i;
      const cplx dphi{0.0, two_pi * (xi_j + dtheta[t])};
      amp[t] = dphi * a.amplitude()[t] + e[t] * da.table()[t];
    }
  }
  return detail::kernel_from_amplitude(g, box, amp);
}

/// d/dy_axis K = sum_xi (-2 pi i xi_axis) e^{2 pi i (phi - y.xi)} a.
inline KernelTable kernel_y_derivative(const FioOperator& a, int axis) {
  const auto& g = a.grid();
  const auto& box = a.box();
  const std::size_t ng = g.size(), nb = box.size();
  std::vector<cplx> amp(ng * nb);
  for (std::size_t k = 0; k < nb; ++k) {
    const cplx factor{0.0, -2.0 * std::numbers::pi * box.point(k)[axis]};
    for (std::size_t i = 0; i < ng; ++i) amp[k * ng + i] = factor * a.amplitude()[k * ng + i];
  }
  return detail::kernel_from_amplitude(g, box, amp);
}

struct KernelDerivativeSups {
  double x_derivative = 0.0;  // sup_{|alpha|=1} sup_{x,y} ||y||^{n+1} |d_x^alpha K|
  double y_derivative = 0.0;  // sup_{|beta|=1}  sup_{x,y} ||x||^{n+1} |d_y^beta K|
};

inline KernelDerivativeSups kernel_derivative_sups(const FioOperator& a) {
  const auto& g = a.grid();
  const std::size_t ng = g.size();
  std::vector<double> weight(ng);
  for (std::size_t i = 0; i < ng; ++i) weight[i] = std::pow(periodic_norm(g.point(i)), g.dim + 1);

  KernelDerivativeSups out;
  for (int axis = 0; axis < g.dim; ++axis) {
    const auto kx = kernel_x_derivative(a, axis);
    const auto ky = kernel_y_derivative(a, axis);
    for (std::size_t x = 0; x < ng; ++x) {
      for (std::size_t y = 0; y < ng; ++y) {
        out.x_derivative = std::max(out.x_derivative, weight[y] * std::abs(kx(x, y)));
        out.y_derivative = std::max(out.y_derivative, weight[x] * std::abs(ky(x, y)));
      }
    }
  }
  return out;
}

/// Per-frequency residual of
///
///   e^{2 pi i t.xi} = (-1)^{|alpha|} prod_j (e^{2 pi i t_j} - 1)^{-alpha_j} Dbar^alpha e^{2 pi i t.xi},
///
/// t = x - y and Dbar the backward difference a(xi) - a(xi + e_j), scaled by |a_val|.
/// Every coordinate of t must stay at least `guard` away from the integers.
inline double lr_identity_residual(std::span<const double> x, std::span<const double> y, std::span<const int> xi,
                                   cplx a_val, const MultiIndex& alpha, double guard = 0.05) {
  const int n = static_cast<int>(x.size());
  require_same_dim(n, static_cast<int>(y.size()), "lr_identity_residual");
  require_same_dim(n, static_cast<int>(xi.size()), "lr_identity_residual");
  require_same_dim(n, alpha.dim(), "lr_identity_residual");
  std::vector<double> t(n);
  for (int j = 0; j < n; ++j) {
    t[j] = x[j] - y[j];
    if (wrap_distance(t[j]) < guard) throw DomainError("lr_identity_residual: x - y too close to the singular set");
  }
  auto character = [&](std::span<const int> eta) {
    double phase = 0.0;
    for (int j = 0; j < n; ++j) phase += t[j] * eta[j];
    return std::polar(1.0, 2.0 * std::numbers::pi * phase);
  };

  // e^{2 pi i t.eta} on [xi, xi + alpha], then the backward difference down to xi
  LatticeRegion r{std::vector<int>(xi.begin(), xi.end()), std::vector<int>(xi.begin(), xi.end())};
  for (int j = 0; j < n; ++j) r.hi[j] += alpha[j];
  LatticeTable e(r);
  for (std::size_t i = 0; i < e.values.size(); ++i) e.values[i] = character(r.point(i));
  const cplx diff = multi_diff(e, alpha, DiffKind::backward).values.at(0);

  cplx divisor{1.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const cplx d = std::polar(1.0, 2.0 * std::numbers::pi * t[j]) - 1.0;
    for (int p = 0; p < alpha[j]; ++p) divisor *= d;
  }
  const cplx rhs = (alpha.order() % 2 == 0 ? 1.0 : -1.0) * diff / divisor;
  return std::abs(character(xi) - rhs) * std::abs(a_val);
}

/// Both sides of the kernel identity summed over a lattice table of symbol
/// values a(x, .): |sum e(xi) a(xi) - (-1)^{|alpha|} (e^{2 pi i t} - 1)^{-alpha} sum (Dbar^alpha e)(xi) a(xi)|.
inline double lr_identity_series_residual(std::span<const double> x, std::span<const double> y,
                                          const LatticeTable& a_values, const MultiIndex& alpha,
                                          double guard = 0.05) {
  const int n = static_cast<int>(x.size());
  require_same_dim(n, a_values.dim(), "lr_identity_series_residual");
  std::vector<double> t(n);
  for (int j = 0; j < n; ++j) {
    t[j] = x[j] - y[j];
    if (wrap_distance(t[j]) < guard)
      throw DomainError("lr_identity_series_residual: x - y too close to the singular set");
  }
  auto character = [&](std::span<const int> eta) {
    double phase = 0.0;
    for (int j = 0; j < n; ++j) phase += t[j] * eta[j];
    return std::polar(1.0, 2.0 * std::numbers::pi * phase);
  };
  LatticeRegion r = a_values.region;
  for (int j = 0; j < n; ++j) r.hi[j] += alpha[j];
  LatticeTable e(r);
  for (std::size_t i = 0; i < e.values.size(); ++i) e.values[i] = character(r.point(i));
  const auto diff = multi_diff(e, alpha, DiffKind::backward);  // region == a_values.region

  cplx lhs{}, rhs_sum{};
  for (std::size_t i = 0; i < a_values.values.size(); ++i) {
    lhs += character(a_values.region.point(i)) * a_values.values[i];
    rhs_sum += diff.values[i] * a_values.values[i];
  }
  cplx divisor{1.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const cplx d = std::polar(1.0, 2.0 * std::numbers::pi * t[j]) - 1.0;
    for (int p = 0; p < alpha[j]; ++p) divisor *= d;
  }
  const cplx rhs = (alpha.order() % 2 == 0 ? 1.0 : -1.0) * rhs_sum / divisor;
  return std::abs(lhs - rhs);
}

}  // namespace torfio
