#pragma once

// Exact-identity suites. Each entry is a measured residual against a
// tolerance; random inputs come from a seeded generator.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "torfio/core/differences.hpp"
#include "torfio/fio/operator.hpp"
#include "torfio/lab/spec.hpp"
#include "torfio/spaces/maximal.hpp"
#include "torfio/spaces/muckenhoupt.hpp"
#include "torfio/symbol/library.hpp"

namespace torfio::lab {

struct VerifyResult {
  std::string suite;
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string relation = "<";  // value relation tolerance
};

namespace detail {

inline VerifyResult below(std::string suite, std::string name, double value, double tol) {
  return {std::move(suite), std::move(name), value, tol, value < tol, "<"};
}
inline VerifyResult above(std::string suite, std::string name, double value, double tol) {
  return {std::move(suite), std::move(name), value, tol, value > tol, ">"};
}

inline cplx gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

inline MultiIndex random_multi_index(std::mt19937_64& rng, int dim, int max_order) {
  const auto all = multi_indices_up_to(dim, max_order);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  return all[pick(rng)];
}

inline GridFunction random_bandlimited(std::mt19937_64& rng, const TorusGrid& g, int radius) {
  SpectralFunction c(LatticeBox(g.dim, radius));
  for (std::size_t k = 0; k < c.coeffs.size(); ++k)
    c.coeffs[k] = gaussian(rng) * std::pow(japanese_bracket(c.box.point(k)), -(g.dim + 1) / 2.0);
  return fourier_inverse(c, g);
}

inline double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace detail

/// Summation by parts, binomial-shift differences, per-frequency kernel identity.
inline std::vector<VerifyResult> verify_differences(std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(2, 6);
  double sbp = 0.0, binom = 0.0, lr = 0.0;

  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 2;
    const auto alpha = detail::random_multi_index(rng, n, 3);
    const int margin = alpha.order();
    LatticeRegion r{std::vector<int>(n), std::vector<int>(n)};
    for (int j = 0; j < n; ++j) {
      r.lo[j] = -size(rng) - margin;
      r.hi[j] = size(rng) + margin;
    }
    LatticeTable phi(r), psi(r);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto xi = r.point(i);
      bool inside = true;
      for (int j = 0; j < n; ++j) inside &= xi[j] >= r.lo[j] + margin && xi[j] <= r.hi[j] - margin;
      phi.values[i] = detail::gaussian(rng);
      psi.values[i] = detail::gaussian(rng);
      if (!inside) phi.values[i] = psi.values[i] = 0.0;
    }
    sbp = std::max(sbp, summation_by_parts_residual(phi, psi, alpha));
  }

  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 2;
    const auto alpha = detail::random_multi_index(rng, n, 3);
    LatticeRegion r{std::vector<int>(n), std::vector<int>(n)};
    for (int j = 0; j < n; ++j) {
      r.lo[j] = -size(rng);
      r.hi[j] = r.lo[j] + alpha[j] + size(rng);
    }
    LatticeTable t(r);
    for (auto& v : t.values) v = detail::gaussian(rng);
    const auto a = multi_diff(t, alpha);
    const auto b = diff_via_binomial_shifts(t, alpha);
    binom = std::max(binom, max_abs_difference(a.values, b.values));
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> freq(-20, 20);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 2;
    std::vector<double> x(n), y(n);
    std::vector<int> xi(n);
    for (int j = 0; j < n; ++j) {
      do {
        x[j] = unit(rng);
        y[j] = unit(rng);
      } while (wrap_distance(x[j] - y[j]) < 0.05);
      xi[j] = freq(rng);
    }
    const auto alpha = detail::random_multi_index(rng, n, 3);
    lr = std::max(lr, lr_identity_residual(x, y, xi, detail::gaussian(rng), alpha));
  }

  return {detail::below("differences", "summation by parts (50 pairs, |alpha| <= 3)", sbp, 1e-12),
          detail::below("differences", "multi_diff vs binomial shifts (50 tables)", binom, 1e-12),
          detail::below("differences", "per-frequency kernel identity (100 points)", lr, 1e-11)};
}

/// Transform round trip and Parseval, operator on harmonics, kernel route,
/// multiplier factorization; 1D, M = 256, N = 64.
inline std::vector<VerifyResult> verify_transform(std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  const TorusGrid g(1, 256);
  const LatticeBox box(1, 64);
  std::vector<VerifyResult> out;

  double round = 0.0, parseval = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    SpectralFunction c(box);
    for (auto& v : c.coeffs) v = detail::gaussian(rng);
    const auto f = fourier_inverse(c, g);
    const auto back = fourier_forward(f, box);
    round = std::max(round, max_abs_difference(back.coeffs, c.coeffs) / max_abs(c.coeffs));
    double s = 0.0;
    for (const auto& v : c.coeffs) s += std::norm(v);
    parseval = std::max(parseval, detail::relative(grid_l2_squared(f), s));
  }
  out.push_back(detail::below("transform", "round trip (relative)", round, 1e-12));
  out.push_back(detail::below("transform", "Parseval (relative)", parseval, 1e-12));

  const std::vector<std::pair<std::string, Symbol>> library{
      {"bracket_power(-3)", symbols::bracket_power(g, box, -3.0)},
      {"character_bracket(-2)", symbols::character_bracket(g, box, -2.0)},
      {"cosine_bracket(-3)", symbols::cosine_bracket(g, box, -3.0, 0.5)},
      {"random_trig(-1)", symbols::random_trig_bracket(g, box, -1.0, 3, seed)},
      {"constant(1)", symbols::constant(g, box)},
  };
  const std::vector<Phase> phases{Phase::linear_plus_psi(g, box, PsiKind::euclidean),
                                  Phase::sine_perturbed(g, box, 0.1)};

  double harmonic = 0.0, kernel_route = 0.0, factorization = 0.0;
  const auto f = detail::random_bandlimited(rng, g, box.radius);
  for (const auto& [label, a] : library) {
    for (const auto& phi : phases) {
      const FioOperator op(phi, a);
      const auto e = phi.exponential_table();
      for (int xi0 : {-64, -17, 0, 5, 64}) {
        SpectralFunction c(box);
        const std::size_t k = box.index(std::vector<int>{xi0});
        c.coeffs[k] = 1.0;
        const auto af = apply(op, fourier_inverse(c, g));
        for (std::size_t x = 0; x < g.size(); ++x)
          harmonic = std::max(harmonic, std::abs(af.values[x] - e[k * g.size() + x] * a(x, k)));
      }
      const auto spectral = apply(op, f);
      const auto via_kernel = apply_via_kernel(kernel(op), f);
      kernel_route = std::max(kernel_route, max_abs_difference(spectral.values, via_kernel.values) / max_abs(spectral.values));
      if (phi.kind() != PhaseKind::general)
        factorization = std::max(factorization, multiplier_decomposition_residual(op, f));
    }
  }
  out.push_back(detail::below("transform", "apply on harmonics", harmonic, 1e-10));
  out.push_back(detail::below("transform", "kernel route vs spectral route (relative)", kernel_route, 1e-10));
  out.push_back(detail::below("transform", "multiplier decomposition on the symbol library", factorization, 1e-10));
  return out;
}

/// Constant-exponent reduction, homogeneity, unit-ball modular, scaling identity.
inline std::vector<VerifyResult> verify_norms(std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::vector<VerifyResult> out;
  double reduction = 0.0, homogeneity = 0.0, unit_ball = 0.0, scaling = 0.0;
  for (const TorusGrid& g : {TorusGrid(1, 256), TorusGrid(2, 32)}) {
    for (int trial = 0; trial < 4; ++trial) {
      GridFunction f(g);
      for (auto& v : f.values) v = detail::gaussian(rng);
      for (double p0 : {1.5, 2.0, 3.0}) {
        double s = 0.0;
        for (const auto& v : f.values) s += std::pow(std::abs(v), p0);
        const double closed = std::pow(s * g.cell_measure(), 1.0 / p0);
        reduction = std::max(reduction, detail::relative(luxemburg_norm(f, Exponent::constant(g, p0)), closed));
      }
      const auto p = Exponent::sinusoidal(g, 2.0, 0.25);
      const double norm = luxemburg_norm(f, p);
      const cplx c = detail::gaussian(rng);
      GridFunction cf(g);
      for (std::size_t i = 0; i < f.size(); ++i) cf.values[i] = c * f.values[i];
      homogeneity = std::max(homogeneity, detail::relative(luxemburg_norm(cf, p), std::abs(c) * norm));
      GridFunction scaled(g);
      for (std::size_t i = 0; i < f.size(); ++i) scaled.values[i] = f.values[i] / norm;
      unit_ball = std::max(unit_ball, std::abs(modular(scaled, p) - 1.0));

      WeightStructure ws;
      ws.beta = 0.2;
      ws.factors.push_back({std::vector<double>(g.dim, 0.0), 0.2});
      const Weight w = structured_weight(g, ws);
      for (double sv : {0.25, 0.5, 0.75}) scaling = std::max(scaling, scaling_identity_residual(f, p, w, sv));
    }
  }
  out.push_back(detail::below("norms", "constant-exponent reduction (relative, p0 in {1.5,2,3})", reduction, 1e-8));
  out.push_back(detail::below("norms", "homogeneity (relative)", homogeneity, 1e-8));
  out.push_back(detail::below("norms", "unit-ball modular |rho(f/||f||) - 1|", unit_ball, 1e-8));
  out.push_back(detail::below("norms", "scaling identity (s in {1/4,1/2,3/4})", scaling, 1e-7));
  return out;
}

/// Muckenhoupt constant of power weights between two dyadic depths, the grid
/// refined with the depth (4 samples per finest cube side).
inline double power_weight_depth_ratio(double alpha, double p0, int d1 = 6, int d2 = 8) {
  auto at = [&](int d) { return muckenhoupt_constant(power_weight(TorusGrid(1, 4 << d), alpha), p0, CubeFamily(d)); };
  return at(d2) / at(d1);
}

/// Unit weight, power-weight dichotomy, weight-power inequality.
inline std::vector<VerifyResult> verify_weights() {
  std::vector<VerifyResult> out;
  double unit_dev = 0.0;
  for (double p0 : {1.5, 2.0, 3.0})
    unit_dev = std::max(unit_dev, std::abs(muckenhoupt_constant(Weight::unit(TorusGrid(1, 1024)), p0, CubeFamily(8)) - 1.0));
  out.push_back({"weights", "[1]_p0 == 1 exactly", unit_dev, 0.0, unit_dev == 0.0, "=="});
  for (double a : {-0.5, 0.5})
    out.push_back(detail::below("weights", "depth 8/6 ratio, power " + fmt(a), power_weight_depth_ratio(a, 2.0), 1.25));
  for (double a : {-1.5, 1.5})
    out.push_back(detail::above("weights", "depth 8/6 ratio, power " + fmt(a), power_weight_depth_ratio(a, 2.0), 2.0));

  const TorusGrid g(1, 1024);
  std::vector<Weight> suite{power_weight(g, 0.5), power_weight(g, -0.5), power_weight(g, 0.3)};
  {
    WeightStructure ws;
    ws.beta = 0.2;
    ws.factors.push_back({{0.0}, 0.2});
    suite.push_back(structured_weight(g, ws));
    ws.factors.push_back({{0.5}, -0.3});
    suite.push_back(structured_weight(g, ws));
  }
  double worst = -1e300;
  for (const auto& w : suite)
    for (double p : {2.0, 3.0})
      for (double d : {0.25, 0.5, 0.75}) {
        const auto r = weight_power_check(w, p, d, CubeFamily(8));
        worst = std::max(worst, (r.power_in_q - r.bound) / r.bound);
      }
  out.push_back(detail::below("weights", "[w^delta]_q <= [w]_p^delta (worst relative excess)", worst, 1e-3));
  return out;
}

/// Maximal-operator identities that need no oracle.
inline std::vector<VerifyResult> verify_maximal(std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::vector<VerifyResult> out;
  const TorusGrid g(1, 128);
  const BallFamily balls(g);
  GridFunction c(g), f(g), h(g);
  for (auto& v : c.values) v = cplx(-2.5, 0.0);
  for (auto& v : f.values) v = detail::gaussian(rng);
  for (auto& v : h.values) v = detail::gaussian(rng);
  double constant = 0.0;
  for (const auto& v : maximal(c, balls).values) constant = std::max(constant, std::abs(v - 2.5));
  for (const auto& v : sharp_maximal(c, balls).values) constant = std::max(constant, std::abs(v));
  out.push_back(detail::below("maximal", "constants: Mc = |c|, M#c = 0", constant, 1e-12));

  const auto mf = maximal(f, balls), sf = sharp_maximal(f, balls), mh = maximal(h, balls);
  GridFunction sum(g);
  for (std::size_t i = 0; i < g.size(); ++i) sum.values[i] = f.values[i] + h.values[i];
  const auto ms = maximal(sum, balls);
  double sharp_excess = -1e300, sub_excess = -1e300;
  for (std::size_t i = 0; i < g.size(); ++i) {
    sharp_excess = std::max(sharp_excess, sf.values[i].real() - 2.0 * mf.values[i].real());
    sub_excess = std::max(sub_excess, ms.values[i].real() - mf.values[i].real() - mh.values[i].real());
  }
  out.push_back(detail::below("maximal", "M#f - 2Mf (max)", sharp_excess, 1e-12));
  out.push_back(detail::below("maximal", "M(f+h) - Mf - Mh (max)", sub_excess, 1e-12));

  GridFunction fs(g);
  for (std::size_t i = 0; i < g.size(); ++i) fs.values[i] = std::pow(std::abs(f.values[i]), 0.5);
  auto composed = sharp_maximal(fs, balls);
  for (auto& v : composed.values) v = std::pow(v.real(), 2.0);
  const auto direct = m_sharp_s(f, 0.5, balls);
  const bool identical = composed.values == direct.values;
  out.push_back({"maximal", "m_sharp_s equals its definition bitwise", identical ? 0.0 : 1.0, 0.0, identical, "=="});
  return out;
}

inline std::vector<VerifyResult> verify_all(std::uint64_t seed = 7) {
  std::vector<VerifyResult> out;
  for (auto part : {verify_differences(seed), verify_transform(seed), verify_norms(seed), verify_weights(),
                    verify_maximal(seed)})
    out.insert(out.end(), part.begin(), part.end());
  return out;
}

}  // namespace torfio::lab
