#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace torfio;

namespace {

GridFunction character(const TorusGrid& g, const std::vector<int>& xi0) {
  GridFunction f(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    f.values[i] = std::polar(1.0, oracle::two_pi * oracle::dot(oracle::grid_point(g, i), xi0));
  return f;
}

}  // namespace

TEST(FourierForward, ConstantHasOnlyTheZeroMode) {
  for (int n : {1, 2}) {
    const TorusGrid g(n, 16);
    const LatticeBox box(n, 5);
    const auto fhat = fourier_forward(GridFunction(g, std::vector<cplx>(g.size(), 1.0)), box);
    for (std::size_t k = 0; k < box.size(); ++k) {
      const bool zero = box.point(k) == LatticePoint(n, 0);
      EXPECT_NEAR(std::abs(fhat.coeffs[k] - cplx(zero ? 1.0 : 0.0)), 0.0, 1e-14);
    }
  }
}

TEST(FourierForward, CharacterTransformsToAnIndicator) {
  const TorusGrid g(2, 12);
  const LatticeBox box(2, 4);
  const std::vector<int> xi0{-3, 2};
  const auto fhat = fourier_forward(character(g, xi0), box);
  for (std::size_t k = 0; k < box.size(); ++k)
    EXPECT_NEAR(std::abs(fhat.coeffs[k] - cplx(box.point(k) == xi0 ? 1.0 : 0.0)), 0.0, 1e-13);
}

TEST(FourierForward, MatchesNaiveQuadrature) {
  for (int n : {1, 2}) {
    const TorusGrid g(n, n == 1 ? 64 : 16);
    const LatticeBox box(n, n == 1 ? 20 : 6);
    const auto f = oracle::random_bandlimited(g, box.radius);
    EXPECT_LT(oracle::max_abs_diff(fourier_forward(f, box).coeffs, oracle::naive_forward(f, box)), 1e-12);
  }
}

TEST(FourierInverse, IndicatorGivesCharacterAndMatchesNaiveSum) {
  const TorusGrid g(1, 32);
  const LatticeBox box(1, 7);
  SpectralFunction ind(box);
  ind.at(std::vector<int>{5}) = 1.0;
  EXPECT_LT(oracle::max_abs_diff(fourier_inverse(ind, g).values, character(g, {5}).values), 1e-13);

  const TorusGrid g2(2, 12);
  const LatticeBox b2(2, 5);
  const auto spec = oracle::random_spectrum(b2);
  EXPECT_LT(oracle::max_abs_diff(fourier_inverse(spec, g2).values, oracle::naive_inverse(spec.coeffs, b2, g2)), 1e-12);
}

TEST(FourierProperty, RoundTripAndParsevalOnBandlimitedFunctions) {
  for (int n : {1, 2}) {
    for (int trial = 0; trial < 5; ++trial) {
      const TorusGrid g(n, n == 1 ? 128 : 24);
      const int radius = n == 1 ? 63 : 11;  // 2N < M
      const LatticeBox box(n, radius);
      const auto f = oracle::random_bandlimited(g, radius);
      const auto fhat = fourier_forward(f, box);
      const auto back = fourier_inverse(fhat, g);
      EXPECT_LT(oracle::max_abs_diff(back.values, f.values), 1e-12 * std::max(1.0, oracle::max_abs(f.values)));
      double spectral = 0.0;
      for (const auto& c : fhat.coeffs) spectral += std::norm(c);
      EXPECT_LT(std::abs(grid_l2_squared(f) - spectral) / spectral, 1e-12);
    }
  }
}

TEST(FourierProperty, TransformsAreLinear) {
  const TorusGrid g(2, 10);
  const LatticeBox box(2, 4);
  const auto f = oracle::random_bandlimited(g, 4), h = oracle::random_bandlimited(g, 4);
  const cplx a{0.3, -1.2}, b{2.0, 0.5};
  GridFunction comb(g);
  for (std::size_t i = 0; i < g.size(); ++i) comb.values[i] = a * f.values[i] + b * h.values[i];
  const auto fa = fourier_forward(f, box), fb = fourier_forward(h, box), fc = fourier_forward(comb, box);
  for (std::size_t k = 0; k < box.size(); ++k)
    EXPECT_LT(std::abs(fc.coeffs[k] - (a * fa.coeffs[k] + b * fb.coeffs[k])), 1e-12);
}

TEST(FourierForward, RejectsAliasedBox) {
  EXPECT_THROW(fourier_forward(GridFunction(TorusGrid(1, 16)), LatticeBox(1, 8)), DomainError);
}

TEST(SpectralDerivative, CharacterIsAnEigenfunction) {
  const TorusGrid g(1, 32);
  const auto f = character(g, {3});
  const auto d = spectral_derivative(f.values, g, MultiIndex({2}));
  for (std::size_t i = 0; i < g.size(); ++i)
    EXPECT_LT(std::abs(d[i] - std::pow(cplx(0.0, oracle::two_pi * 3), 2) * f.values[i]), 1e-10);
}

TEST(SpectralDerivative, ConstantsDifferentiateToExactZero) {
  const TorusGrid g(2, 16);
  std::vector<cplx> c(g.size(), cplx(0.7, -0.2));
  for (const auto& v : spectral_derivative(c, g, MultiIndex({1, 2}))) EXPECT_EQ(v, cplx{});
}
