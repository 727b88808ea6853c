#pragma once

// Dyadic discretizations of the Hardy-Littlewood and sharp maximal operators.
// Every supremum over r > 0 is a maximum over r = 2^{-k}, k = 1..K, and balls
// are closed periodic balls of grid points.

#include <cmath>
#include <vector>

#include "torfio/core/fourier.hpp"
#include "torfio/core/parallel.hpp"

namespace torfio {

class BallFamily {
 public:
  /// K = 0 selects floor(log2 M).
  explicit BallFamily(TorusGrid g, int levels = 0) : grid_(g) {
    if (levels <= 0) levels = static_cast<int>(std::floor(std::log2(static_cast<double>(g.samples))));
    if (levels < 1) levels = 1;
    levels_ = levels;
    // offsets o with sum_j min(o_j, M - o_j)^2 <= (M / 2^k)^2, exactly in integers
    const long long m = g.samples;
    offsets_.resize(levels_);
    for (std::size_t o = 0; o < g.size(); ++o) {
      const auto k = g.coords(o);
      long long d2 = 0;
      for (int j = 0; j < g.dim; ++j) {
        const long long a = std::min<long long>(k[j], m - k[j]);
        d2 += a * a;
      }
      for (int lvl = 1; lvl <= levels_; ++lvl) {
        const long long scale = 1LL << (2 * lvl);
        if (d2 * scale <= m * m) offsets_[lvl - 1].push_back(k);
      }
    }
  }

  const TorusGrid& grid() const { return grid_; }
  int levels() const { return levels_; }
  double radius(int k) const { return std::ldexp(1.0, -k); }
  /// Integer offsets of the grid points within distance 2^{-k} of the origin.
  const std::vector<std::vector<int>>& offsets(int k) const { return offsets_.at(k - 1); }

  /// Grid indices of B(x_center, 2^{-k}).
  std::vector<std::size_t> members(std::size_t center, int k) const {
    const auto c = grid_.coords(center);
    std::vector<std::size_t> out;
    std::vector<int> y(grid_.dim);
    for (const auto& o : offsets(k)) {
      for (int j = 0; j < grid_.dim; ++j) y[j] = c[j] + o[j];
      out.push_back(grid_.index(y));
    }
    return out;
  }

 private:
  TorusGrid grid_;
  int levels_ = 1;
  std::vector<std::vector<std::vector<int>>> offsets_;
};

namespace detail {

// Flat member lists per level, so the scans below do no index arithmetic.
inline std::vector<std::vector<std::size_t>> ball_members(const BallFamily& balls, std::size_t center) {
  std::vector<std::vector<std::size_t>> out(balls.levels());
  for (int k = 1; k <= balls.levels(); ++k) out[k - 1] = balls.members(center, k);
  return out;
}

}  // namespace detail

/// Mf(x) = max_k average of |f| over B(x, 2^{-k}).
inline GridFunction maximal(const GridFunction& f, const BallFamily& balls) {
  if (!(f.grid == balls.grid())) throw DimensionError("maximal: grid mismatch");
  GridFunction out(f.grid);
  parallel_for(f.size(), [&](std::size_t x) {
    double best = 0.0;
    for (const auto& ball : detail::ball_members(balls, x)) {
      double s = 0.0;
      for (std::size_t y : ball) s += std::abs(f.values[y]);
      best = std::max(best, s / static_cast<double>(ball.size()));
    }
    out.values[x] = best;
  });
  return out;
}

/// M#f(x) = max_k average over B = B(x, 2^{-k}) of |f - f_B|, f_B the average of f over B.
inline GridFunction sharp_maximal(const GridFunction& f, const BallFamily& balls) {
  if (!(f.grid == balls.grid())) throw DimensionError("sharp_maximal: grid mismatch");
  GridFunction out(f.grid);
  parallel_for(f.size(), [&](std::size_t x) {
    double best = 0.0;
    for (const auto& ball : detail::ball_members(balls, x)) {
      cplx avg{};
      for (std::size_t y : ball) avg += f.values[y];
      avg /= static_cast<double>(ball.size());
      double s = 0.0;
      for (std::size_t y : ball) s += std::abs(f.values[y] - avg);
      best = std::max(best, s / static_cast<double>(ball.size()));
    }
    out.values[x] = best;
  });
  return out;
}

/// (M#(|f|^s))^{1/s}
inline GridFunction m_sharp_s(const GridFunction& f, double s, const BallFamily& balls) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("m_sharp_s: s must lie in (0, 1)");
  GridFunction fs(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) fs.values[i] = std::pow(std::abs(f.values[i]), s);
  auto out = sharp_maximal(fs, balls);
  for (auto& v : out.values) v = std::pow(v.real(), 1.0 / s);
  return out;
}

/// For each lambda: (fraction of grid points with |g| > lambda) * lambda / (grid average of |u|).
inline std::vector<double> weak11_profile(const GridFunction& g, const GridFunction& u,
                                          const std::vector<double>& lambdas) {
  if (!(g.grid == u.grid)) throw DimensionError("weak11_profile: grid mismatch");
  double l1 = 0.0;
  for (const auto& v : u.values) l1 += std::abs(v);
  l1 *= u.grid.cell_measure();
  if (l1 == 0.0) throw DomainError("weak11_profile: u must be nonzero");
  std::vector<double> out;
  out.reserve(lambdas.size());
  for (double lambda : lambdas) {
    if (!(lambda > 0.0)) throw DomainError("weak11_profile: lambdas must be positive");
    std::size_t count = 0;
    for (const auto& v : g.values) count += std::abs(v) > lambda ? 1 : 0;
    out.push_back(static_cast<double>(count) * g.grid.cell_measure() * lambda / l1);
  }
  return out;
}

/// Geometric lambda grid spanning [max|g| * 10^{-decades}, max|g|].
inline std::vector<double> weak11_lambdas(const GridFunction& g, int count = 48, double decades = 4.0) {
  const double top = max_abs(g.values);
  std::vector<double> out;
  if (top == 0.0) return {1.0};
  for (int i = 0; i < count; ++i) out.push_back(top * std::pow(10.0, -decades * i / std::max(1, count - 1)));
  return out;
}

}  // namespace torfio
