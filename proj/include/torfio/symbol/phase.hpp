#pragma once

// Phase functions phi(x, xi) with x -> e^{2 pi i phi(x, xi)} 1-periodic.
//
//   linear            phi = x.xi
//   linear_plus_psi   phi = x.xi + psi(xi),  psi given on the box, psi(0) = 0
//   general           phi tabulated on grid x box

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "torfio/core/fourier.hpp"

namespace torfio {

enum class PhaseKind { linear, linear_plus_psi, general };

/// Standard homogeneous (and one non-homogeneous) choices of psi.
enum class PsiKind { zero, euclidean, l1, linf, quadratic };

inline double psi_value(PsiKind kind, std::span<const int> xi) {
  double s2 = 0.0, s1 = 0.0, sinf = 0.0;
  for (int v : xi) {
    const double a = std::abs(static_cast<double>(v));
    s2 += a * a;
    s1 += a;
    sinf = std::max(sinf, a);
  }
  switch (kind) {
    case PsiKind::zero: return 0.0;
    case PsiKind::euclidean: return std::sqrt(s2);
    case PsiKind::l1: return s1;
    case PsiKind::linf: return sinf;
    case PsiKind::quadratic: return s2;
  }
  return 0.0;
}

/// Real values over a lattice box.
struct PsiTable {
  LatticeBox box;
  std::vector<double> values;

  double at(std::span<const int> xi) const { return values[box.index(xi)]; }

  static PsiTable make(LatticeBox box, PsiKind kind) {
    PsiTable t{box, std::vector<double>(box.size())};
    for (std::size_t k = 0; k < box.size(); ++k) t.values[k] = psi_value(kind, box.point(k));
    return t;
  }
};

class Phase {
 public:
  static Phase linear(TorusGrid grid, LatticeBox box) {
    return Phase(PhaseKind::linear, grid, box, PsiTable::make(box, PsiKind::zero), {});
  }
  static Phase linear_plus_psi(TorusGrid grid, PsiTable psi) {
    LatticeBox box = psi.box;
    return Phase(PhaseKind::linear_plus_psi, grid, box, std::move(psi), {});
  }
  static Phase linear_plus_psi(TorusGrid grid, LatticeBox box, PsiKind kind) {
    return linear_plus_psi(grid, PsiTable::make(box, kind));
  }
  /// Tabulated phase, layout xi-major like Symbol.
  static Phase general(TorusGrid grid, LatticeBox box, std::vector<double> table) {
    if (table.size() != grid.size() * box.size()) throw DimensionError("Phase: table size mismatch");
    return Phase(PhaseKind::general, grid, box, PsiTable::make(box, PsiKind::zero), std::move(table));
  }
  template <typename Fn>
  static Phase general(TorusGrid grid, LatticeBox box, Fn&& fn) {
    std::vector<double> t(grid.size() * box.size());
    for (std::size_t k = 0; k < box.size(); ++k) {
      const auto xi = box.point(k);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        auto x = grid.point(i);
        t[k * grid.size() + i] = fn(std::span<const double>(x), std::span<const int>(xi));
      }
    }
    return general(grid, box, std::move(t));
  }
  /// phi = x.xi + amplitude * sin(2 pi x_1) * xi_1 / <xi>.
  static Phase sine_perturbed(TorusGrid grid, LatticeBox box, double amplitude) {
    return general(grid, box, [amplitude](std::span<const double> x, std::span<const int> xi) {
      double dot = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) dot += x[j] * xi[j];
      return dot + amplitude * std::sin(2.0 * std::numbers::pi * x[0]) * xi[0] / japanese_bracket(xi);
    });
  }

  PhaseKind kind() const { return kind_; }
  const TorusGrid& grid() const { return grid_; }
  const LatticeBox& box() const { return box_; }
  const PsiTable& psi() const { return psi_; }
  const std::vector<double>& table() const { return table_; }

  /// phi(x, xi) at grid index x_index and box index xi_index.
  double value(std::size_t x_index, std::size_t xi_index) const {
    if (kind_ == PhaseKind::general) return table_[xi_index * grid_.size() + x_index];
    const auto k = grid_.coords(x_index);
    const auto xi = box_.point(xi_index);
    double dot = 0.0;
    for (int j = 0; j < grid_.dim; ++j) dot += static_cast<double>(k[j]) * xi[j] / grid_.samples;
    return dot + psi_.values[xi_index];
  }

  /// Table of e^{2 pi i phi(x, xi)}, xi-major. The linear part is taken from
  /// exact roots of unity.
  std::vector<cplx> exponential_table() const {
    const std::size_t ng = grid_.size(), nb = box_.size();
    std::vector<cplx> out(ng * nb);
    if (kind_ == PhaseKind::general) {
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::polar(1.0, 2.0 * std::numbers::pi * table_[i]);
      return out;
    }
    UnitRoots roots(grid_.samples);
    std::vector<std::vector<int>> coords(ng);
    for (std::size_t i = 0; i < ng; ++i) coords[i] = grid_.coords(i);
    for (std::size_t k = 0; k < nb; ++k) {
      const auto xi = box_.point(k);
      const cplx shift = std::polar(1.0, 2.0 * std::numbers::pi * psi_.values[k]);
      for (std::size_t i = 0; i < ng; ++i) {
        cplx c = shift;
        for (int j = 0; j < grid_.dim; ++j) c *= roots(coords[i][j], xi[j]);
        out[k * ng + i] = c;
      }
    }
    return out;
  }

  /// phi(x, xi) - x.xi, the part of the phase that is periodic in x.
  std::vector<double> nonlinear_part() const {
    const std::size_t ng = grid_.size(), nb = box_.size();
    std::vector<double> out(ng * nb);
    for (std::size_t k = 0; k < nb; ++k) {
      const auto xi = box_.point(k);
      for (std::size_t i = 0; i < ng; ++i) {
        if (kind_ != PhaseKind::general) {
          out[k * ng + i] = psi_.values[k];
          continue;
        }
        const auto x = grid_.point(i);
        double dot = 0.0;
        for (int j = 0; j < grid_.dim; ++j) dot += x[j] * xi[j];
        out[k * ng + i] = table_[k * ng + i] - dot;
      }
    }
    return out;
  }

 private:
  Phase(PhaseKind kind, TorusGrid grid, LatticeBox box, PsiTable psi, std::vector<double> table)
      : kind_(kind), grid_(grid), box_(box), psi_(std::move(psi)), table_(std::move(table)) {
    require_same_dim(grid_.dim, box_.dim, "Phase");
    if (!(psi_.box == box_)) throw DimensionError("Phase: psi table box mismatch");
  }

  PhaseKind kind_ = PhaseKind::linear;
  TorusGrid grid_;
  LatticeBox box_;
  PsiTable psi_;
  std::vector<double> table_;
};

/// phi(x, xi) at grid index and lattice point.
inline double phase_eval(const Phase& phi, std::size_t x_index, std::span<const int> xi) {
  return phi.value(x_index, phi.box().index(xi));
}

/// max over rays t xi0 (t >= 2, xi0 != 0, t xi0 in box) of |psi(t xi0) - t psi(xi0)|.
inline double homogeneity_residual(const PsiTable& psi) {
  if (psi.box.radius < 2) throw DomainError("homogeneity_residual: box radius must be >= 2");
  double worst = 0.0;
  const int n = psi.box.dim;
  std::vector<int> ray(n);
  for (std::size_t k = 0; k < psi.box.size(); ++k) {
    const auto xi0 = psi.box.point(k);
    bool nonzero = false;
    for (int v : xi0) nonzero |= (v != 0);
    if (!nonzero) continue;
    for (int t = 2;; ++t) {
      for (int j = 0; j < n; ++j) ray[j] = t * xi0[j];
      if (!psi.box.contains(ray)) break;
      worst = std::max(worst, std::abs(psi.at(ray) - t * psi.values[k]));
    }
  }
  return worst;
}

/// max over (x, xi) of |d_x^alpha theta(x, xi)| where theta = phi - x.xi is the
/// non-linear part. With `include_linear`, first derivatives also count the
/// linear part's contribution xi_j, which is unbounded in xi.
inline double phase_derivative_bound(const Phase& phi, const MultiIndex& alpha, bool include_linear = false) {
  const auto& g = phi.grid();
  require_same_dim(g.dim, alpha.dim(), "phase_derivative_bound");
  const std::size_t nb = phi.box().size();
  if (phi.kind() != PhaseKind::general && alpha.order() >= 1) {
    // non-linear part depends on xi only
    return (include_linear && alpha.order() == 1) ? static_cast<double>(phi.box().radius) : 0.0;
  }
  auto theta_real = phi.nonlinear_part();
  std::vector<cplx> theta(theta_real.begin(), theta_real.end());
  auto d = spectral_derivative(theta, g, alpha, nb);

  int axis = -1;
  if (include_linear && alpha.order() == 1)
    for (int j = 0; j < g.dim; ++j)
      if (alpha[j] == 1) axis = j;

  double worst = 0.0;
  for (std::size_t k = 0; k < nb; ++k) {
    const double lin = axis >= 0 ? static_cast<double>(phi.box().point(k)[axis]) : 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(d[k * g.size() + i].real() + lin));
  }
  return worst;
}

}  // namespace torfio
