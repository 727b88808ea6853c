#pragma once

// Toroidal Fourier transform on a uniform grid.
//
//   f^(xi) = M^{-n} sum_x e^{-2 pi i x.xi} f(x)     (grid quadrature)
//   f(x)   = sum_{xi in box} e^{2 pi i x.xi} F(xi)
//
// Both directions are evaluated as exact finite sums, one axis at a time.
// There is no fast transform; summation order is fixed, so results are
// reproducible bit for bit.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "torfio/core/lattice.hpp"

namespace torfio {

struct GridFunction {
  TorusGrid grid;
  std::vector<cplx> values;

  GridFunction() = default;
  explicit GridFunction(TorusGrid g) : grid(g), values(g.size()) {}
  GridFunction(TorusGrid g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) throw DimensionError("GridFunction: value count mismatch");
  }

  /// Samples `fn(x)` at every grid point.
  template <typename Fn>
  static GridFunction sample(TorusGrid g, Fn&& fn) {
    GridFunction out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      auto x = g.point(i);
      out.values[i] = cplx(fn(std::span<const double>(x)));
    }
    return out;
  }

  std::size_t size() const { return values.size(); }
};

struct SpectralFunction {
  LatticeBox box;
  std::vector<cplx> coeffs;

  SpectralFunction() = default;
  explicit SpectralFunction(LatticeBox b) : box(b), coeffs(b.size()) {}
  SpectralFunction(LatticeBox b, std::vector<cplx> c) : box(b), coeffs(std::move(c)) {
    if (coeffs.size() != box.size()) throw DimensionError("SpectralFunction: coefficient count mismatch");
  }

  cplx& at(std::span<const int> xi) { return coeffs[box.index(xi)]; }
  const cplx& at(std::span<const int> xi) const { return coeffs[box.index(xi)]; }
  LatticeTable table() const { return LatticeTable(box.region(), coeffs); }
};

/// e^{2 pi i k/M} for k = 0..M-1. Index with (k * xi) mod M to avoid
/// evaluating exponentials of large arguments.
class UnitRoots {
 public:
  explicit UnitRoots(int m) : m_(m), roots_(static_cast<std::size_t>(m)) {
    for (int k = 0; k < m; ++k)
      roots_[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / m);
  }
  int modulus() const { return m_; }
  /// e^{2 pi i k xi / M}
  cplx operator()(long long k, long long xi) const {
    long long r = (k * xi) % m_;
    if (r < 0) r += m_;
    return roots_[static_cast<std::size_t>(r)];
  }

 private:
  int m_;
  std::vector<cplx> roots_;
};

namespace detail {

/// Contract one axis of a row-major array: out[.., i, ..] = sum_k w(i, k) in[.., k, ..].
inline std::vector<cplx> transform_axis(const std::vector<cplx>& in, std::vector<std::size_t>& extents, int axis,
                                        std::size_t out_len,
                                        const std::function<cplx(std::size_t, std::size_t)>& weight) {
  std::size_t outer = 1, inner = 1;
  for (int j = 0; j < axis; ++j) outer *= extents[j];
  for (std::size_t j = axis + 1; j < extents.size(); ++j) inner *= extents[j];
  const std::size_t in_len = extents[axis];

  std::vector<cplx> w(out_len * in_len);
  for (std::size_t i = 0; i < out_len; ++i)
    for (std::size_t k = 0; k < in_len; ++k) w[i * in_len + k] = weight(i, k);

  std::vector<cplx> out(outer * out_len * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < out_len; ++i) {
      const cplx* wi = &w[i * in_len];
      for (std::size_t r = 0; r < inner; ++r) {
        cplx acc{0.0, 0.0};
        const cplx* src = &in[o * in_len * inner + r];
        for (std::size_t k = 0; k < in_len; ++k) acc += wi[k] * src[k * inner];
        out[(o * out_len + i) * inner + r] = acc;
      }
    }
  }
  extents[axis] = out_len;
  return out;
}

}  // namespace detail

/// Quadrature Fourier coefficients on `box`. Exact for trigonometric
/// polynomials of degree < M - N per axis.
inline SpectralFunction fourier_forward(const GridFunction& f, const LatticeBox& box) {
  require_same_dim(f.grid.dim, box.dim, "fourier_forward");
  const int m = f.grid.samples;
  const int n = box.radius;
  if (2 * n >= m) throw DomainError("fourier_forward: box radius N must satisfy 2N < M");

  UnitRoots roots(m);
  const double scale = 1.0 / m;
  std::vector<std::size_t> extents(f.grid.dim, static_cast<std::size_t>(m));
  std::vector<cplx> data = f.values;
  for (int axis = 0; axis < f.grid.dim; ++axis) {
    data = detail::transform_axis(data, extents, axis, static_cast<std::size_t>(2 * n + 1),
                                  [&](std::size_t i, std::size_t k) {
                                    long long xi = static_cast<long long>(i) - n;
                                    return roots(static_cast<long long>(k), -xi) * scale;
                                  });
  }
  return SpectralFunction(box, std::move(data));
}

/// Fourier series sum over the box, evaluated at every grid point.
inline GridFunction fourier_inverse(const SpectralFunction& spec, const TorusGrid& grid) {
  require_same_dim(spec.box.dim, grid.dim, "fourier_inverse");
  const int m = grid.samples;
  const int n = spec.box.radius;
  UnitRoots roots(m);
  std::vector<std::size_t> extents(grid.dim, static_cast<std::size_t>(2 * n + 1));
  std::vector<cplx> data = spec.coeffs;
  for (int axis = 0; axis < grid.dim; ++axis) {
    data = detail::transform_axis(data, extents, axis, static_cast<std::size_t>(m),
                                  [&](std::size_t k, std::size_t i) {
                                    long long xi = static_cast<long long>(i) - n;
                                    return roots(static_cast<long long>(k), xi);
                                  });
  }
  return GridFunction(grid, std::move(data));
}

/// Modes [-floor(M/2), ceil(M/2) - 1]^n: every DFT mode of the grid exactly once.
inline LatticeRegion full_mode_region(const TorusGrid& g) {
  return {std::vector<int>(g.dim, -(g.samples / 2)), std::vector<int>(g.dim, (g.samples + 1) / 2 - 1)};
}

/// True when some component of eta is the unpaired Nyquist mode -M/2 (even M).
inline bool is_nyquist_mode(const TorusGrid& g, std::span<const int> eta) {
  if (g.samples % 2 != 0) return false;
  for (int e : eta)
    if (e == -(g.samples / 2)) return true;
  return false;
}

/// All DFT coefficients M^{-n} sum_x e^{-2 pi i x.eta} v(x), eta over full_mode_region.
///
/// `values` may hold `batch` consecutive grid functions; each is transformed
/// independently and the output keeps the same batch layout.
inline std::vector<cplx> dft_full(std::span<const cplx> values, const TorusGrid& g, std::size_t batch = 1) {
  const int m = g.samples;
  const int lo = -(m / 2);
  UnitRoots roots(m);
  const double scale = 1.0 / m;
  std::vector<std::size_t> extents(g.dim + 1, static_cast<std::size_t>(m));
  extents[0] = batch;
  std::vector<cplx> data(values.begin(), values.end());
  for (int axis = 1; axis <= g.dim; ++axis) {
    data = detail::transform_axis(data, extents, axis, static_cast<std::size_t>(m),
                                  [&](std::size_t i, std::size_t k) {
                                    long long eta = static_cast<long long>(i) + lo;
                                    return roots(static_cast<long long>(k), -eta) * scale;
                                  });
  }
  return data;
}

/// Inverse of dft_full: sum_eta e^{2 pi i x.eta} c(eta) at every grid point.
inline std::vector<cplx> idft_full(std::span<const cplx> coeffs, const TorusGrid& g, std::size_t batch = 1) {
  const int m = g.samples;
  const int lo = -(m / 2);
  UnitRoots roots(m);
  std::vector<std::size_t> extents(g.dim + 1, static_cast<std::size_t>(m));
  extents[0] = batch;
  std::vector<cplx> data(coeffs.begin(), coeffs.end());
  for (int axis = 1; axis <= g.dim; ++axis) {
    data = detail::transform_axis(data, extents, axis, static_cast<std::size_t>(m),
                                  [&](std::size_t k, std::size_t i) {
                                    long long eta = static_cast<long long>(i) + lo;
                                    return roots(static_cast<long long>(k), eta);
                                  });
  }
  return data;
}

/// Spectral derivative d^beta/dx^beta of a grid function viewed as a
/// trigonometric interpolant. Nyquist modes are dropped on differentiated axes,
/// and coefficients below 64 eps times the largest one in their batch member
/// are treated as roundoff and zeroed, so x-constant inputs differentiate to 0.
inline std::vector<cplx> spectral_derivative(std::span<const cplx> values, const TorusGrid& g,
                                             const MultiIndex& beta, std::size_t batch = 1) {
  require_same_dim(g.dim, beta.dim(), "spectral_derivative");
  if (beta.order() == 0) return {values.begin(), values.end()};
  auto coeffs = dft_full(values, g, batch);
  const auto modes = full_mode_region(g);
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<cplx> factors(g.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    auto eta = modes.point(i);
    cplx factor{1.0, 0.0};
    for (int j = 0; j < g.dim; ++j) {
      if (beta[j] == 0) continue;
      if (g.samples % 2 == 0 && eta[j] == -(g.samples / 2)) {
        factor = 0.0;
        break;
      }
      const cplx d{0.0, two_pi * eta[j]};
      for (int p = 0; p < beta[j]; ++p) factor *= d;
    }
    factors[i] = factor;
  }
  const double chop = 64.0 * std::numeric_limits<double>::epsilon();
  for (std::size_t b = 0; b < batch; ++b) {
    double peak = 0.0;
    for (std::size_t i = 0; i < factors.size(); ++i) peak = std::max(peak, std::abs(coeffs[b * factors.size() + i]));
    for (std::size_t i = 0; i < factors.size(); ++i) {
      cplx& c = coeffs[b * factors.size() + i];
      c = std::abs(c) <= chop * peak ? cplx{} : c * factors[i];
    }
  }
  return idft_full(coeffs, g, batch);
}

/// Grid average of |f|^2.
inline double grid_l2_squared(const GridFunction& f) {
  double s = 0.0;
  for (const auto& v : f.values) s += std::norm(v);
  return s * f.grid.cell_measure();
}

inline double max_abs_difference(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw DimensionError("max_abs_difference: size mismatch");
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

inline double max_abs(std::span<const cplx> a) {
  double e = 0.0;
  for (const auto& v : a) e = std::max(e, std::abs(v));
  return e;
}

}  // namespace torfio
