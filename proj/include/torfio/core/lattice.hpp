#pragma once

// Discretization of the torus T^n = [0,1)^n and of the frequency lattice Z^n.
//
// Storage convention everywhere: row-major, axis 0 slowest.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "torfio/core/errors.hpp"

namespace torfio {

using cplx = std::complex<double>;
using LatticePoint = std::vector<int>;

/// Multi-index alpha = (alpha_1, ..., alpha_n) with non-negative entries.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_) {
      if (e < 0) throw DomainError("MultiIndex: negative entry");
    }
  }

  static MultiIndex zero(int dim) { return MultiIndex(std::vector<int>(dim, 0)); }
  static MultiIndex unit(int dim, int axis) {
    std::vector<int> e(dim, 0);
    e.at(axis) = 1;
    return MultiIndex(std::move(e));
  }

  int dim() const { return static_cast<int>(entries_.size()); }
  int operator[](int j) const { return entries_[j]; }
  int order() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }
  const std::vector<int>& entries() const { return entries_; }

  bool operator==(const MultiIndex&) const = default;

 private:
  std::vector<int> entries_;
};

/// All multi-indices of dimension `dim` with order <= max_order, in
/// lexicographic order.
inline std::vector<MultiIndex> multi_indices_up_to(int dim, int max_order) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(dim, 0);
  auto rec = [&](auto&& self, int axis, int budget) -> void {
    if (axis == dim) {
      out.emplace_back(cur);
      return;
    }
    for (int k = 0; k <= budget; ++k) {
      cur[axis] = k;
      self(self, axis + 1, budget - k);
    }
    cur[axis] = 0;
  };
  rec(rec, 0, max_order);
  return out;
}

/// Uniform grid x = k/M on [0,1)^n. Each point carries quadrature weight M^{-n}.
struct TorusGrid {
  int dim = 1;
  int samples = 2;  // M, per axis

  TorusGrid() = default;
  TorusGrid(int n, int m) : dim(n), samples(m) {
    if (n < 1) throw DomainError("TorusGrid: dimension must be >= 1");
    if (m < 2) throw DomainError("TorusGrid: need at least 2 samples per axis");
  }

  std::size_t size() const {
    std::size_t s = 1;
    for (int j = 0; j < dim; ++j) s *= static_cast<std::size_t>(samples);
    return s;
  }
  double cell_measure() const { return 1.0 / static_cast<double>(size()); }

  /// Integer coordinates k of the flat index.
  std::vector<int> coords(std::size_t idx) const {
    std::vector<int> k(dim);
    for (int j = dim - 1; j >= 0; --j) {
      k[j] = static_cast<int>(idx % samples);
      idx /= samples;
    }
    return k;
  }
  std::size_t index(std::span<const int> k) const {
    std::size_t idx = 0;
    for (int j = 0; j < dim; ++j) {
      int kj = ((k[j] % samples) + samples) % samples;
      idx = idx * samples + static_cast<std::size_t>(kj);
    }
    return idx;
  }
  std::vector<double> point(std::size_t idx) const {
    auto k = coords(idx);
    std::vector<double> x(dim);
    for (int j = 0; j < dim; ++j) x[j] = static_cast<double>(k[j]) / samples;
    return x;
  }

  bool operator==(const TorusGrid&) const = default;
};

/// Rectangular region lo_j <= xi_j <= hi_j of Z^n.
struct LatticeRegion {
  std::vector<int> lo;
  std::vector<int> hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool empty() const {
    for (int j = 0; j < dim(); ++j)
      if (hi[j] < lo[j]) return true;
    return false;
  }
  int extent(int j) const { return hi[j] - lo[j] + 1; }
  std::size_t size() const {
    if (empty()) return 0;
    std::size_t s = 1;
    for (int j = 0; j < dim(); ++j) s *= static_cast<std::size_t>(extent(j));
    return s;
  }
  bool contains(std::span<const int> xi) const {
    for (int j = 0; j < dim(); ++j)
      if (xi[j] < lo[j] || xi[j] > hi[j]) return false;
    return true;
  }
  std::size_t index(std::span<const int> xi) const {
    std::size_t idx = 0;
    for (int j = 0; j < dim(); ++j)
      idx = idx * static_cast<std::size_t>(extent(j)) + static_cast<std::size_t>(xi[j] - lo[j]);
    return idx;
  }
  LatticePoint point(std::size_t idx) const {
    LatticePoint xi(dim());
    for (int j = dim() - 1; j >= 0; --j) {
      auto e = static_cast<std::size_t>(extent(j));
      xi[j] = lo[j] + static_cast<int>(idx % e);
      idx /= e;
    }
    return xi;
  }
  /// Flat index stride of axis j.
  std::size_t stride(int j) const {
    std::size_t s = 1;
    for (int k = dim() - 1; k > j; --k) s *= static_cast<std::size_t>(extent(k));
    return s;
  }

  bool operator==(const LatticeRegion&) const = default;
};

/// Symmetric truncation box |xi_j| <= N.
struct LatticeBox {
  int dim = 1;
  int radius = 1;

  LatticeBox() = default;
  LatticeBox(int n, int r) : dim(n), radius(r) {
    if (n < 1) throw DomainError("LatticeBox: dimension must be >= 1");
    if (r < 0) throw DomainError("LatticeBox: radius must be >= 0");
  }

  LatticeRegion region() const {
    return {std::vector<int>(dim, -radius), std::vector<int>(dim, radius)};
  }
  std::size_t size() const { return region().size(); }
  std::size_t index(std::span<const int> xi) const { return region().index(xi); }
  LatticePoint point(std::size_t idx) const { return region().point(idx); }
  bool contains(std::span<const int> xi) const { return region().contains(xi); }

  bool operator==(const LatticeBox&) const = default;
};

/// Complex values indexed by a lattice region.
struct LatticeTable {
  LatticeRegion region;
  std::vector<cplx> values;

  LatticeTable() = default;
  explicit LatticeTable(LatticeRegion r) : region(std::move(r)), values(region.size()) {}
  LatticeTable(LatticeRegion r, std::vector<cplx> v) : region(std::move(r)), values(std::move(v)) {
    if (values.size() != region.size()) throw DimensionError("LatticeTable: value count mismatch");
  }

  int dim() const { return region.dim(); }
  cplx& at(std::span<const int> xi) { return values[region.index(xi)]; }
  const cplx& at(std::span<const int> xi) const { return values[region.index(xi)]; }
};

/// <xi> = (1 + |xi|^2)^{1/2}.
template <typename T>
double japanese_bracket(std::span<const T> xi) {
  double s = 1.0;
  for (T v : xi) s += static_cast<double>(v) * static_cast<double>(v);
  return std::sqrt(s);
}
inline double japanese_bracket(const LatticePoint& xi) {
  return japanese_bracket(std::span<const int>(xi));
}

/// Distance from t to the nearest integer, in [0, 1/2].
inline double wrap_distance(double t) {
  double f = t - std::floor(t);
  return std::min(f, 1.0 - f);
}

/// Periodic distance min_l |x - y + l| on the torus.
inline double periodic_distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double d = wrap_distance(x[j] - y[j]);
    s += d * d;
  }
  return std::sqrt(s);
}

inline double periodic_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) {
    double d = wrap_distance(v);
    s += d * d;
  }
  return std::sqrt(s);
}

inline void require_same_dim(int a, int b, const char* what) {
  if (a != b) throw DimensionError(std::string(what) + ": dimension mismatch");
}

}  // namespace torfio
