// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace torfio;
using namespace torfio::lab;

namespace {

std::string config(const char* name) { return std::string(TORFIO_CONFIG_DIR) + "/" + name; }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
    pass = pass && ok;
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void suite_results(Outcome& o, const std::vector<VerifyResult>& rs) {
  for (const auto& r : rs) o.require(r.pass, r.name + " " + num(r.value) + " " + r.relation + " " + num(r.tolerance));
}

/// max / min - 1 of the per-truncation max ratios.
double variation(const RatioReport& r) {
  double lo = r.rows.front().max_ratio, hi = lo;
  for (const auto& row : r.rows) {
    lo = std::min(lo, row.max_ratio);
    hi = std::max(hi, row.max_ratio);
  }
  return hi / lo - 1.0;
}

Outcome criterion_differences() {
  Outcome o;
  suite_results(o, verify_differences(7));
  return o;
}

Outcome criterion_transform() {
  Outcome o;
  suite_results(o, verify_transform(7));
  return o;
}

Outcome criterion_norms() {
  Outcome o;
  suite_results(o, verify_norms(7));
  return o;
}

Outcome criterion_weights() {
  Outcome o;
  suite_results(o, verify_weights());
  return o;
}

Outcome criterion_sweeps() {
  Outcome o;
  for (const char* name : {"weighted_lp0.json", "variable_lp.json", "weighted_variable_lp.json"}) {
    auto s = parse_spec(read_json_file(config(name)));
    s.checks = {"ratio-sweep"};
    const auto sweep = boundedness_sweep(s);
    const double v = variation(sweep);
    o.require(v < 0.10, s.name + " max-ratio variation " + num(v) + " < 0.1");
    if (s.norm == NormKind::weighted_variable) {
      const auto gate = theorem_gate(s);
      o.require(gate.all_apply, s.name + " gate " + gate.theorems.front().summary);
      for (const auto& c : gate.theorems.front().checks)
        if (c.name.rfind("weight admissibility", 0) == 0)
          o.require(c.slack && *c.slack > 0.0, c.name + " slack " + num(c.slack.value_or(0.0)));
    }
  }
  const auto neg = parse_spec(read_json_file(config("negative_control.json")));
  const auto sweep = boundedness_sweep(neg);
  o.require(sweep.verdict == "growing", "negative control verdict " + sweep.verdict);
  o.require(sweep.total_growth > 0.5, "negative control growth N=32->128 " + num(sweep.total_growth) + " > 0.5");
  return o;
}

Outcome criterion_maximal() {
  Outcome o;
  const TorusGrid g(1, 128);
  const BallFamily balls(g);
  std::vector<GridFunction> fs;
  fs.push_back(GridFunction::sample(g, [](std::span<const double> x) { return cplx(x[0] < 0.5 ? 1.0 : 0.0); }));
  fs.push_back(GridFunction::sample(g, [](std::span<const double> x) { return cplx(x[0] - 0.5); }));
  fs.push_back(GridFunction::sample(g, [](std::span<const double> x) { return cplx(std::abs(x[0] - 0.5) < 0.1 ? 1.0 : 0.0); }));
  fs.push_back(oracle::random_bandlimited(g, 40));
  double err = 0.0;
  for (const auto& f : fs) {
    const auto [mf, ms] = oracle::maximal_1d(f.values);
    const auto a = maximal(f, balls), b = sharp_maximal(f, balls);
    for (std::size_t i = 0; i < g.size(); ++i)
      err = std::max({err, std::abs(a.values[i].real() - mf[i]), std::abs(b.values[i].real() - ms[i])});
  }
  o.require(err < 1e-12, "brute-force M, M# at M=128 " + num(err) + " < 1e-12");

  auto s = parse_spec(read_json_file(config("weighted_variable_lp.json")));
  s.resolutions = {128, 256};
  const auto d = msharp_domination(s, s.s);
  o.require(d.change < 0.2, "msharp-domination change M=128->256 " + num(d.change) + " < 0.2");
  const auto c = msharp_control_ratio(s);
  o.require(c.change < 0.2, "msharp-control change M=128->256 " + num(c.change) + " < 0.2");
  return o;
}

Outcome criterion_determinism() {
  Outcome o;
  const auto a = run_file(config("suite.json")).report.dump(2);
  set_default_threads(3);  // a different worker count must not change a byte
  const auto b = run_file(config("suite.json")).report.dump(2);
  set_default_threads(0);
  o.require(a == b, "standard suite JSON identical across runs and thread counts (" + std::to_string(a.size()) + " bytes)");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "exact-identity suite", 30, criterion_differences},
      {2, "transform/operator calibration", 60, criterion_transform},
      {3, "norm machinery", 60, criterion_norms},
      {4, "weight suite", 120, criterion_weights},
      {5, "boundedness sweeps", 600, criterion_sweeps},
      {6, "maximal-operator suite", 120, criterion_maximal},
      {7, "determinism", 1200, criterion_determinism},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.limit_s, "runtime " + num(secs) + " s < " + num(c.limit_s) + " s");
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
