#pragma once

// Empirical checks on a test family:
//
//   ratio sweep        max_f ||Af|| / ||f|| per truncation N, stable in N?
//   msharp domination  max_{f,x} M#_s(Af)(x) / Mf(x), stable in M?
//   msharp control     max_f ||Af||_{p,w} / ||M#(|Af|)||_{p,w}, stable in M?
//   weak11             max_f max_lambda lambda |{|Af| > lambda}| / ||f||_1, stable in M?
//
// Family members run in a worker pool; results are gathered by index.

#include <cmath>
#include <string>
#include <vector>

#include "torfio/core/parallel.hpp"
#include "torfio/fio/operator.hpp"
#include "torfio/lab/family.hpp"
#include "torfio/lab/gate.hpp"
#include "torfio/spaces/maximal.hpp"

namespace torfio::lab {

inline constexpr double denominator_floor = 1e-14;

struct RatioRow {
  int truncation = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  int argmax = -1;
  int excluded = 0;
  std::vector<double> ratios;  // per family member; NaN where excluded
};

struct RatioReport {
  std::string space;
  std::vector<RatioRow> rows;
  double last_change = 0.0;  // signed relative change of max ratio, last two truncations
  double total_growth = 0.0;  // max ratio at last / at first - 1
  std::string verdict;        // bounded-stable | growing | unstable
  std::vector<std::string> warnings;
};

inline std::string space_label(const ExperimentSpec& s) {
  return std::string(to_string(s.norm)) + " p=" + p_label(s) + " w=" + describe(s.weight);
}

inline FioOperator build_operator(const ExperimentSpec& s, const TorusGrid& g, int truncation) {
  const LatticeBox box(s.dim, truncation);
  return FioOperator(build_phase(s, g, box), build_symbol(s, g, box));
}

inline RatioReport boundedness_sweep(const ExperimentSpec& s) {
  RatioReport rep;
  rep.space = space_label(s);
  const TorusGrid g(s.dim, s.samples);
  const Weight w = build_weight(s.weight, g);
  std::optional<Exponent> p;
  if (s.norm != NormKind::weighted_constant) p = build_exponent(*s.exponent, g);

  for (int n : s.truncations) {
    const FioOperator a = build_operator(s, g, n);
    const auto family = gen_test_family(s.family, g, LatticeBox(s.dim, n));
    RatioRow row;
    row.truncation = n;
    row.ratios.assign(family.size(), std::numeric_limits<double>::quiet_NaN());
    parallel_for(family.size(), [&](std::size_t i) {
      const double den = space_norm(s, family[i], p ? &*p : nullptr, w);
      if (den < denominator_floor) return;
      row.ratios[i] = space_norm(s, apply(a, family[i]), p ? &*p : nullptr, w) / den;
    });
    double sum = 0.0;
    int used = 0;
    for (std::size_t i = 0; i < row.ratios.size(); ++i) {
      const double r = row.ratios[i];
      if (std::isnan(r)) {
        ++row.excluded;
        rep.warnings.push_back("N=" + std::to_string(n) + ": member " + std::to_string(i) +
                               " excluded (norm below floor)");
        continue;
      }
      if (!std::isfinite(r)) throw NumericError("boundedness_sweep: non-finite ratio");
      sum += r;
      ++used;
      if (r > row.max_ratio || row.argmax < 0) {
        row.max_ratio = r;
        row.argmax = static_cast<int>(i);
      }
    }
    row.mean_ratio = used ? sum / used : 0.0;
    rep.rows.push_back(std::move(row));
  }

  const double first = rep.rows.front().max_ratio, last = rep.rows.back().max_ratio;
  const double prev = rep.rows.size() >= 2 ? rep.rows[rep.rows.size() - 2].max_ratio : last;
  rep.last_change = prev > 0.0 ? (last - prev) / prev : 0.0;
  rep.total_growth = first > 0.0 ? last / first - 1.0 : 0.0;
  if (std::abs(rep.last_change) < s.stability_threshold)
    rep.verdict = "bounded-stable";
  else
    rep.verdict = rep.last_change > 0.0 ? "growing" : "unstable";
  return rep;
}

struct ResolutionRow {
  int samples = 0;
  double value = 0.0;
  int argmax = -1;
  int excluded = 0;
};

struct ResolutionReport {
  std::string check;
  int truncation = 0;
  std::vector<ResolutionRow> rows;
  double change = 0.0;  // relative change first -> last resolution
  std::string verdict;  // stable | unstable
  std::vector<std::string> warnings;
  json extra = json::object();
};

namespace detail {

inline void finish_resolution(ResolutionReport& r, double threshold) {
  const double a = r.rows.front().value, b = r.rows.back().value;
  r.change = relative_change(a, b, 1e-12);
  r.verdict = r.change < threshold ? "stable" : "unstable";
}

template <typename PerMember>
ResolutionRow resolution_row(const ExperimentSpec& s, int samples, PerMember&& per_member,
                             std::vector<std::string>& warnings, const char* what) {
  const TorusGrid g(s.dim, samples);
  const int n = s.msharp_N();
  const FioOperator a = build_operator(s, g, n);
  const auto family = gen_test_family(s.family, g, LatticeBox(s.dim, n));
  std::vector<double> vals(family.size(), std::numeric_limits<double>::quiet_NaN());
  parallel_for(family.size(), [&](std::size_t i) { vals[i] = per_member(g, a, family[i]); });
  ResolutionRow row;
  row.samples = samples;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (std::isnan(vals[i])) {
      ++row.excluded;
      warnings.push_back(std::string(what) + " M=" + std::to_string(samples) + ": member " + std::to_string(i) +
                         " excluded (denominator below floor)");
      continue;
    }
    if (!std::isfinite(vals[i])) throw NumericError(std::string(what) + ": non-finite value");
    if (row.argmax < 0 || vals[i] > row.value) {
      row.value = vals[i];
      row.argmax = static_cast<int>(i);
    }
  }
  return row;
}

}  // namespace detail

inline ResolutionReport weak11_study(const ExperimentSpec& s);

/// C_s = max over the family and grid points of M#_s(Af)(x) / max(Mf(x), 1e-14),
/// at each resolution, with the kernel derivative sups.
inline ResolutionReport msharp_domination(const ExperimentSpec& s, double sv) {
  if (!(sv > 0.0 && sv < 1.0)) throw DomainError("msharp_domination: s must lie in (0,1)");
  ResolutionReport rep;
  rep.check = "msharp-domination";
  rep.truncation = s.msharp_N();
  rep.extra["s"] = sv;
  rep.extra["kernel"] = json::array();
  for (int samples : s.resolution_list()) {
    const TorusGrid g(s.dim, samples);
    const BallFamily balls(g);
    auto row = detail::resolution_row(
        s, samples,
        [&](const TorusGrid&, const FioOperator& a, const GridFunction& f) {
          const auto af = apply(a, f);
          const auto num = m_sharp_s(af, sv, balls);
          const auto den = maximal(f, balls);
          double c = 0.0;
          for (std::size_t x = 0; x < f.size(); ++x)
            c = std::max(c, num.values[x].real() / std::max(den.values[x].real(), denominator_floor));
          return c;
        },
        rep.warnings, "msharp-domination");
    rep.rows.push_back(row);
    const auto sups = kernel_derivative_sups(build_operator(s, g, s.msharp_N()));
    rep.extra["kernel"].push_back({{"M", samples}, {"x_derivative_sup", sups.x_derivative},
                                   {"y_derivative_sup", sups.y_derivative}});
  }
  detail::finish_resolution(rep, s.resolution_threshold);
  return rep;
}

/// C_s at each resolution, with the kernel derivative sups and the weak-(1,1)
/// study attached under "extra".
inline ResolutionReport msharp_domination(const ExperimentSpec& s) {
  auto rep = msharp_domination(s, s.s);
  const auto weak = weak11_study(s);
  rep.extra["weak11"] = json::array();
  for (const auto& r : weak.rows) rep.extra["weak11"].push_back({{"M", r.samples}, {"max_profile", r.value}});
  return rep;
}

/// max over the family of ||Af||_{p,w} / ||M#(|Af|)||_{p,w} at each resolution.
inline ResolutionReport msharp_control_ratio(const ExperimentSpec& s) {
  ResolutionReport rep;
  rep.check = "msharp-control";
  rep.truncation = s.msharp_N();
  for (int samples : s.resolution_list()) {
    const TorusGrid g(s.dim, samples);
    const BallFamily balls(g);
    const Exponent p = space_exponent(s, g);
    const Weight w = space_multiplier_weight(s, g);
    rep.rows.push_back(detail::resolution_row(
        s, samples,
        [&](const TorusGrid&, const FioOperator& a, const GridFunction& f) {
          auto af = apply(a, f);
          GridFunction mag(af.grid);
          for (std::size_t i = 0; i < af.size(); ++i) mag.values[i] = std::abs(af.values[i]);
          const double den = weighted_variable_norm(sharp_maximal(mag, balls), p, w);
          if (den < denominator_floor) return std::numeric_limits<double>::quiet_NaN();
          return weighted_variable_norm(af, p, w) / den;
        },
        rep.warnings, "msharp-control"));
  }
  detail::finish_resolution(rep, s.resolution_threshold);
  return rep;
}

/// max over the family of the empirical weak-(1,1) constant of A at each resolution.
inline ResolutionReport weak11_study(const ExperimentSpec& s) {
  ResolutionReport rep;
  rep.check = "weak11";
  rep.truncation = s.msharp_N();
  for (int samples : s.resolution_list()) {
    rep.rows.push_back(detail::resolution_row(
        s, samples,
        [&](const TorusGrid&, const FioOperator& a, const GridFunction& f) {
          const auto af = apply(a, f);
          const auto prof = weak11_profile(af, f, weak11_lambdas(af));
          return *std::max_element(prof.begin(), prof.end());
        },
        rep.warnings, "weak11"));
  }
  detail::finish_resolution(rep, s.resolution_threshold);
  return rep;
}

}  // namespace torfio::lab
