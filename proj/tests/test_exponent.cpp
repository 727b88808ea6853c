#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace torfio;

namespace {

/// Luxemburg norm by bisection on log(lambda) to full precision.
double luxemburg_oracle(const std::vector<double>& a, const std::vector<double>& p) {
  auto rho = [&](double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(a[i] / lambda, p[i]);
    return s / static_cast<double>(a.size());
  };
  double lo = -60.0, hi = 60.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (rho(std::exp(mid)) > 1.0 ? lo : hi) = mid;
  }
  return std::exp(hi);
}

std::vector<double> magnitudes(const GridFunction& f) {
  std::vector<double> a(f.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(f.values[i]);
  return a;
}

}  // namespace

TEST(Modular, ConstantFunctionAndExponent) {
  const TorusGrid g(1, 16);
  EXPECT_NEAR(modular(GridFunction(g, std::vector<cplx>(16, 2.0)), Exponent::constant(g, 3.0)), 8.0, 1e-14);
  // half the grid at p = 1, half at p = 2, |f| = 3
  EXPECT_NEAR(modular(GridFunction(g, std::vector<cplx>(16, cplx(0.0, 3.0))), Exponent::piecewise(g, 1.0, 2.0)), 6.0, 1e-13);
}

TEST(LuxemburgNorm, ConstantExponentIsTheLpNorm) {
  const TorusGrid g(1, 64);
  const auto f = oracle::random_bandlimited(g, 10);
  for (double p : {1.5, 2.0, 4.0}) {
    double s = 0.0;
    for (const auto& v : f.values) s += std::pow(std::abs(v), p);
    const double lp = std::pow(s / 64.0, 1.0 / p);
    EXPECT_NEAR(luxemburg_norm(f, Exponent::constant(g, p)), lp, 1e-9 * lp);
  }
}

TEST(LuxemburgNorm, ConstantFunctionHasItsModulusAsNorm) {
  const TorusGrid g(2, 8);
  EXPECT_NEAR(luxemburg_norm(GridFunction(g, std::vector<cplx>(64, cplx(3.0, 4.0))), Exponent::sinusoidal(g, 2.0, 0.5)), 5.0,
              1e-9 * 5.0);
  EXPECT_EQ(luxemburg_norm(GridFunction(g), Exponent::constant(g, 2.0)), 0.0);
}

TEST(LuxemburgNorm, MatchesIndependentBisection) {
  for (int trial = 0; trial < 5; ++trial) {
    const TorusGrid g(1, 128);
    const auto f = oracle::random_bandlimited(g, 20);
    for (const auto& p : {Exponent::sinusoidal(g, 2.0, 0.7), Exponent::piecewise(g, 1.2, 3.5),
                          Exponent::localized(g, 2.0, 1.0, 0.3)}) {
      const double expect = luxemburg_oracle(magnitudes(f), p.values);
      EXPECT_NEAR(luxemburg_norm(f, p), expect, 2e-10 * expect);
    }
  }
}

TEST(WeightedNorms, UnitWeightReducesToUnweighted) {
  const TorusGrid g(1, 64);
  const auto f = oracle::random_bandlimited(g, 8);
  const auto p = Exponent::sinusoidal(g, 2.5, 0.5);
  EXPECT_EQ(weighted_variable_norm(f, p, Weight::unit(g)), luxemburg_norm(f, p));
  double s = 0.0;
  for (const auto& v : f.values) s += std::norm(v);
  EXPECT_NEAR(weighted_constant_norm(f, 2.0, Weight::unit(g)), std::sqrt(s / 64.0), 1e-13);
}

TEST(WeightedNorms, WeightEntersInsideOrOutsideThePower) {
  const TorusGrid g(1, 32);
  const auto f = oracle::random_bandlimited(g, 6);
  const auto w = power_weight(g, 0.4);
  // constant-exponent norm: (avg |f|^p w)^{1/p}; variable norm: Luxemburg of |f| w
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::abs(f.values[i]), 3.0) * w.values[i];
  EXPECT_NEAR(weighted_constant_norm(f, 3.0, w), std::cbrt(s / 32.0), 1e-13);
  std::vector<double> a = magnitudes(f);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= w.values[i];
  const auto p = Exponent::sinusoidal(g, 2.0, 0.3);
  const double expect = luxemburg_oracle(a, p.values);
  EXPECT_NEAR(weighted_variable_norm(f, p, w), expect, 2e-10 * expect);
}

TEST(WeightedNormsProperty, ScalingIdentityHolds) {
  const TorusGrid g(1, 64);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = oracle::random_bandlimited(g, 12);
    const auto p = Exponent::sinusoidal(g, 2.5, 0.4);
    const auto w = power_weight(g, 0.3);
    const double norm = weighted_variable_norm(f, p, w);
    for (double s : {0.5, 1.0, 1.9}) EXPECT_LT(scaling_identity_residual(f, p, w, s), 1e-8 * norm);
  }
  EXPECT_THROW(scaling_identity_residual(GridFunction(g), Exponent::constant(g, 2.0), Weight::unit(g), 2.0), DomainError);
}

TEST(LuxemburgNormProperty, NormAxioms) {
  const TorusGrid g(1, 64);
  const auto p = Exponent::localized(g, 1.8, 1.5, 0.2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = oracle::random_bandlimited(g, 10), h = oracle::random_bandlimited(g, 10);
    GridFunction sum(g), scaled(g);
    const cplx c{-1.5, 2.0};
    for (std::size_t i = 0; i < g.size(); ++i) {
      sum.values[i] = f.values[i] + h.values[i];
      scaled.values[i] = c * f.values[i];
    }
    const double nf = luxemburg_norm(f, p), nh = luxemburg_norm(h, p);
    EXPECT_GT(nf, 0.0);
    EXPECT_LE(luxemburg_norm(sum, p), (nf + nh) * (1.0 + 1e-9));
    EXPECT_NEAR(luxemburg_norm(scaled, p), std::abs(c) * nf, 1e-9 * std::abs(c) * nf);
  }
}

TEST(LuxemburgNorm, RejectsExponentAtOne) {
  const TorusGrid g(1, 8);
  EXPECT_THROW(luxemburg_norm(GridFunction(g), Exponent::piecewise(g, 1.0, 2.0)), DomainError);
  EXPECT_THROW(Exponent::constant(g, 0.5), DomainError);
  EXPECT_THROW(luxemburg_norm(GridFunction(TorusGrid(1, 16)), Exponent::constant(g, 2.0)), DimensionError);
}

TEST(LogHolderConstant, ConstantAndJumpExamples) {
  for (int m : {16, 64}) {
    const TorusGrid g(1, m);
    EXPECT_EQ(log_holder_constant(Exponent::constant(g, 2.0)), 0.0);
    // a unit jump between neighbours at distance 1/M
    EXPECT_NEAR(log_holder_constant(Exponent::piecewise(g, 2.0, 3.0)), std::log(m), 1e-12);
  }
}

TEST(LogHolderConstant, MatchesPairEnumerationAndIsStableForSmoothExponents) {
  const TorusGrid g(1, 32);
  const auto p = Exponent::sinusoidal(g, 2.0, 0.5);
  double expect = 0.0;
  for (int x = 0; x < 32; ++x)
    for (int y = 0; y < 32; ++y) {
      int d = std::abs(x - y);
      d = std::min(d, 32 - d);
      if (d == 0) continue;
      expect = std::max(expect, std::abs(p.values[x] - p.values[y]) * -std::log(d / 32.0));
    }
  EXPECT_NEAR(log_holder_constant(p), expect, 1e-14);
  const double a = log_holder_constant(Exponent::sinusoidal(TorusGrid(1, 128), 2.0, 0.5));
  const double b = log_holder_constant(Exponent::sinusoidal(TorusGrid(1, 256), 2.0, 0.5));
  EXPECT_LT(std::abs(b - a) / a, 0.02);
}

TEST(ConjugateExponent, Examples) {
  const TorusGrid g(1, 8);
  const auto c2 = conjugate_exponent(Exponent::constant(g, 2.0));
  for (double v : c2.values) EXPECT_EQ(v, 2.0);
  EXPECT_EQ(*c2.p_infinity, 2.0);
  const auto c3 = conjugate_exponent(Exponent::constant(g, 3.0));
  for (double v : c3.values) EXPECT_DOUBLE_EQ(v, 1.5);
  const auto loc = conjugate_exponent(Exponent::localized(TorusGrid(1, 32), 4.0, 1.0, 0.25));
  EXPECT_DOUBLE_EQ(*loc.p_infinity, 4.0 / 3.0);
  EXPECT_DOUBLE_EQ(loc.values[0], 5.0 / 4.0);
  EXPECT_FALSE(conjugate_exponent(Exponent::sinusoidal(g, 2.0, 0.5)).p_infinity.has_value());
  EXPECT_THROW(conjugate_exponent(Exponent::constant(g, 1.0)), DomainError);
}

TEST(ExponentProperty, ConjugateIsAnInvolution) {
  const TorusGrid g(1, 32);
  const auto p = Exponent::sinusoidal(g, 2.2, 0.9);
  const auto pp = conjugate_exponent(conjugate_exponent(p));
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(pp.values[i], p.values[i], 1e-13);
    EXPECT_NEAR(1.0 / p.values[i] + 1.0 / conjugate_exponent(p).values[i], 1.0, 1e-15);
  }
}
