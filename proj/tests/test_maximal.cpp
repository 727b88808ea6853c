#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace torfio;

namespace {

GridFunction tabulate(const TorusGrid& g, auto&& fn) {
  GridFunction f(g);
  for (std::size_t i = 0; i < g.size(); ++i) f.values[i] = fn(oracle::grid_point(g, i)[0]);
  return f;
}

std::vector<double> real_parts(const GridFunction& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.values[i].real();
  return out;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(BallFamily, LevelsAndClosedRadii) {
  const BallFamily b(TorusGrid(1, 128));
  EXPECT_EQ(b.levels(), 7);
  // radius 1/2 covers the whole circle, radius 1/128 is the point and both neighbours
  EXPECT_EQ(b.members(0, 1).size(), 128u);
  EXPECT_EQ(b.members(5, 7).size(), 3u);
  EXPECT_EQ(b.members(0, 2).size(), 65u);
  const BallFamily b2(TorusGrid(2, 8), 2);
  EXPECT_EQ(b2.levels(), 2);
  // d^2 * 16 <= 64: offsets with d^2 <= 4
  EXPECT_EQ(b2.offsets(2).size(), 13u);
}

TEST(Maximal, MatchesBruteForceOnIndicatorAndSawtooth) {
  const TorusGrid g(1, 128);
  const BallFamily balls(g);
  const auto ind = tabulate(g, [](double x) { return cplx(x < 0.5 ? 1.0 : 0.0); });
  const auto saw = tabulate(g, [](double x) { return cplx(x - 0.5); });
  for (const auto& f : {ind, saw, oracle::random_bandlimited(g, 30)}) {
    const auto [mf, ms] = oracle::maximal_1d(f.values);
    EXPECT_LT(max_diff(real_parts(maximal(f, balls)), mf), 1e-12);
    EXPECT_LT(max_diff(real_parts(sharp_maximal(f, balls)), ms), 1e-12);
  }
}

TEST(Maximal, ConstantsAndIndicatorExamples) {
  const TorusGrid g(1, 64);
  const BallFamily balls(g);
  const GridFunction c(g, std::vector<cplx>(64, cplx(0.0, -2.0)));
  for (const auto& v : maximal(c, balls).values) EXPECT_NEAR(v.real(), 2.0, 1e-15);
  for (const auto& v : sharp_maximal(c, balls).values) EXPECT_EQ(v.real(), 0.0);
  const auto ind = tabulate(g, [](double x) { return cplx(x < 0.5 ? 1.0 : 0.0); });
  const auto mf = maximal(ind, balls);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_LE(mf.values[i].real(), 1.0 + 1e-15);
    EXPECT_GE(mf.values[i].real(), 0.5 - 1e-15);  // the whole circle is one of the balls
  }
  EXPECT_NEAR(mf.values[10].real(), 1.0, 1e-15);
}

TEST(MaximalProperty, SublinearAndDominatesTheFunction) {
  const TorusGrid g(1, 64);
  const BallFamily balls(g);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = oracle::random_bandlimited(g, 12), h = oracle::random_bandlimited(g, 12);
    GridFunction sum(g);
    for (std::size_t i = 0; i < g.size(); ++i) sum.values[i] = f.values[i] + h.values[i];
    const auto mf = maximal(f, balls), mh = maximal(h, balls), msum = maximal(sum, balls);
    const auto sf = sharp_maximal(f, balls), sh = sharp_maximal(h, balls), ssum = sharp_maximal(sum, balls);
    for (std::size_t i = 0; i < g.size(); ++i) {
      EXPECT_LE(msum.values[i].real(), mf.values[i].real() + mh.values[i].real() + 1e-12);
      EXPECT_LE(ssum.values[i].real(), sf.values[i].real() + sh.values[i].real() + 1e-12);
      // avg_B |f - f_B| <= 2 avg_B |f| on every ball
      EXPECT_LE(sf.values[i].real(), 2.0 * mf.values[i].real() + 1e-12);
    }
  }
}

TEST(MSharpS, ComposesPowerSharpMaximalAndRoot) {
  const TorusGrid g(1, 64);
  const BallFamily balls(g);
  const auto f = oracle::random_bandlimited(g, 10);
  const double s = 0.3;
  std::vector<cplx> fs(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) fs[i] = std::pow(std::abs(f.values[i]), s);
  const auto [mf, ms] = oracle::maximal_1d(fs);
  const auto out = m_sharp_s(f, s, balls);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(out.values[i].real(), std::pow(ms[i], 1.0 / s), 1e-12);
}

TEST(MSharpS, ApproachesSharpMaximalOfModulusAsSTendsToOne) {
  const TorusGrid g(1, 64);
  const BallFamily balls(g);
  const auto f = oracle::random_bandlimited(g, 10);
  GridFunction mod(g);
  for (std::size_t i = 0; i < g.size(); ++i) mod.values[i] = std::abs(f.values[i]);
  const auto limit = sharp_maximal(mod, balls);
  const auto near = m_sharp_s(f, 0.999, balls);
  const double scale = oracle::max_abs(limit.values);
  EXPECT_LT(oracle::max_abs_diff(near.values, limit.values), 0.02 * scale);
  EXPECT_THROW(m_sharp_s(f, 1.0, balls), DomainError);
}

TEST(Weak11, ProfileExamples) {
  const TorusGrid g(1, 16);
  // |g| = 4 on a quarter of the grid, u with average 2
  GridFunction gg(g), u(g, std::vector<cplx>(16, 2.0));
  for (int i = 0; i < 4; ++i) gg.values[i] = 4.0;
  const auto prof = weak11_profile(gg, u, {1.0, 3.9, 4.0});
  EXPECT_DOUBLE_EQ(prof[0], 0.25 * 1.0 / 2.0);
  EXPECT_DOUBLE_EQ(prof[1], 0.25 * 3.9 / 2.0);
  EXPECT_EQ(prof[2], 0.0);  // strict inequality
  EXPECT_THROW(weak11_profile(gg, GridFunction(g), {1.0}), DomainError);
  EXPECT_THROW(weak11_profile(gg, u, {0.0}), DomainError);
}

TEST(Weak11, LambdaGridIsGeometric) {
  const TorusGrid g(1, 8);
  GridFunction f(g);
  f.values[3] = cplx(0.0, 5.0);
  const auto l = weak11_lambdas(f, 5, 4.0);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_DOUBLE_EQ(l.front(), 5.0);
  EXPECT_NEAR(l.back(), 5e-4, 1e-18);
  for (std::size_t i = 1; i < l.size(); ++i) EXPECT_NEAR(l[i] / l[i - 1], 0.1, 1e-14);
}

TEST(Weak11Property, MaximalFunctionOfDeltaIsWeakBounded) {
  // M of a point mass grows like 1/|x|; its weak-type ratio stays bounded under refinement
  double previous = 0.0;
  for (int m : {64, 256}) {
    const TorusGrid g(1, m);
    GridFunction delta(g);
    delta.values[0] = static_cast<double>(m);
    const auto mf = maximal(delta, BallFamily(g));
    const auto prof = weak11_profile(mf, delta, weak11_lambdas(mf));
    const double top = *std::max_element(prof.begin(), prof.end());
    EXPECT_LT(top, 2.0);
    if (previous > 0.0) {
      EXPECT_LT(std::abs(top - previous) / previous, 0.2);
    }
    previous = top;
  }
}
