#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"

using namespace torfio;
using namespace torfio::lab;

namespace {

/// Small 1D spec; callers patch fields with json merge.
json base_spec(json patch = json::object()) {
  json j = {
      {"name", "t"},
      {"dim", 1},
      {"M", 64},
      {"operator",
       {{"symbol", {{"kind", "bracket_power"}, {"m", -3}}}, {"phase", {{"kind", "linear"}}}, {"truncations", {4, 8, 16}}}},
      {"space", {{"norm", "weighted_constant"}, {"p0", 2}}},
      {"family", {{"kind", "random-bandlimited"}, {"count", 12}, {"seed", 3}}},
      {"checks", {"ratio-sweep"}},
      {"epsilon", 0.1},
  };
  j.merge_patch(patch);
  return j;
}

const TheoremVerdict& only(const GateReport& g) {
  EXPECT_EQ(g.theorems.size(), 1u);
  return g.theorems.front();
}

bool has_check(const TheoremVerdict& v, const std::string& name, const std::string& status) {
  for (const auto& c : v.checks)
    if (c.name == name && c.status == status) return true;
  return false;
}

std::vector<json> space_patches() {
  return {
      {{"space", {{"norm", "weighted_constant"}, {"p0", 3}, {"weight", {{"kind", "power"}, {"alpha", 0.4}}}}}},
      {{"space", {{"norm", "variable"}, {"exponent", {{"kind", "sinusoidal"}, {"base", 2}, {"amplitude", 0.5}}}}}},
      {{"space",
        {{"norm", "weighted_variable"},
         {"exponent", {{"kind", "localized"}, {"p_infinity", 2}, {"height", 0.5}, {"radius", 0.25}}},
         {"weight", {{"kind", "structured"}, {"beta", 0.1}, {"factors", {{{"center", {0.5}}, {"exponent", -0.2}}}}}}}}},
  };
}

}  // namespace

TEST(TestFamily, HarmonicsWithOneFrequency) {
  const TorusGrid g(1, 16);
  const LatticeBox box(1, 1);
  const auto fam = gen_test_family("harmonics", 10, 0, g, box);
  ASSERT_EQ(fam.size(), 3u);  // capped at the box size
  for (std::size_t k = 0; k < 3; ++k) {
    const int xi = box.point(k)[0];
    for (std::size_t i = 0; i < g.size(); ++i)
      EXPECT_LT(std::abs(fam[k].values[i] - std::polar(1.0, oracle::two_pi * xi * oracle::grid_point(g, i)[0])), 1e-14);
  }
}

TEST(TestFamily, DeterministicAndSupportedInTheBox) {
  const TorusGrid g(2, 16);
  const LatticeBox box(2, 3), big(2, 7);
  for (const char* kind : {"random-bandlimited", "bumps"}) {
    const auto a = gen_test_family(kind, 4, 11, g, box), b = gen_test_family(kind, 4, 11, g, box);
    for (std::size_t m = 0; m < a.size(); ++m) {
      EXPECT_EQ(a[m].values, b[m].values);
      const auto c = oracle::naive_forward(a[m], big);
      for (std::size_t k = 0; k < big.size(); ++k)
        if (!box.contains(big.point(k))) {
          EXPECT_LT(std::abs(c[k]), 1e-13) << kind;
        }
    }
  }
  EXPECT_NE(gen_test_family("random-bandlimited", 1, 1, g, box)[0].values,
            gen_test_family("random-bandlimited", 1, 2, g, box)[0].values);
  EXPECT_THROW(gen_test_family("nope", 1, 1, g, box), SpecError);
}

TEST(TestFamilyProperty, MembersAreNestedAcrossCountsAndTruncations) {
  const TorusGrid g(1, 64);
  const auto small = gen_test_family("random-bandlimited", 5, 9, g, LatticeBox(1, 8));
  const auto large = gen_test_family("random-bandlimited", 9, 9, g, LatticeBox(1, 8));
  for (std::size_t m = 0; m < small.size(); ++m) EXPECT_EQ(small[m].values, large[m].values);
  // a member at N = 16 restricted to the N = 8 box has the same coefficients
  const auto wide = gen_test_family("random-bandlimited", 1, 9, g, LatticeBox(1, 16));
  const auto c8 = fourier_forward(small[0], LatticeBox(1, 8)), c16 = fourier_forward(wide[0], LatticeBox(1, 8));
  EXPECT_LT(oracle::max_abs_diff(c8.coeffs, c16.coeffs), 1e-13);
}

TEST(Gate, DecayingSymbolAppliesForWeightedLp0) {
  const auto v = only(theorem_gate(parse_spec(base_spec())));
  EXPECT_EQ(v.theorem, "weighted_lp0");
  EXPECT_TRUE(v.applies) << v.summary;
  EXPECT_EQ(v.summary, "applies");
}

TEST(Gate, OrderConditionFailsForWeightedVariable) {
  json patch = space_patches()[2];
  patch["operator"] = {{"symbol", {{"kind", "bracket_power"}, {"m", -1}}}};
  const auto v = only(theorem_gate(parse_spec(base_spec(patch))));
  EXPECT_FALSE(v.applies);
  EXPECT_TRUE(has_check(v, "order m < -(n+1)", "fail"));
  EXPECT_EQ(v.summary.rfind("fails: order m < -(n+1)", 0), 0u) << v.summary;
}

TEST(Gate, LargeCenterExponentFailsTheCenterChain) {
  json patch = space_patches()[2];
  patch["space"]["weight"] = {{"kind", "structured"}, {"beta", 0.0}, {"factors", {{{"center", {0}}, {"exponent", 0.6}}}}};
  patch["space"]["exponent"]["height"] = 0.25;
  const auto v = only(theorem_gate(parse_spec(base_spec(patch))));
  EXPECT_FALSE(v.applies);
  EXPECT_TRUE(has_check(v, "weight admissibility: center chain k=0", "fail"));
  EXPECT_TRUE(has_check(v, "weight admissibility: infinity chain", "fail"));
}

TEST(Gate, WeightedLp0OrderBoundDependsOnP0) {
  // (rho - 1)|1/p0 - 1/2| - eps = -eps for rho = 1, so m = 0 fails and m = -0.2 passes
  auto v = only(theorem_gate(parse_spec(base_spec({{"operator", {{"symbol", {{"m", 0}}}}}}))));
  EXPECT_TRUE(has_check(v, "order m <= (rho-1)|1/p0-1/2| - epsilon", "fail"));
  v = only(theorem_gate(parse_spec(base_spec({{"operator", {{"symbol", {{"m", -0.2}, {"rho", 0.5}}}}}}))));
  // bound = -0.5 * 0 - 0.1 at p0 = 2
  EXPECT_TRUE(has_check(v, "order m <= (rho-1)|1/p0-1/2| - epsilon", "pass"));
  v = only(theorem_gate(parse_spec(base_spec({{"operator", {{"symbol", {{"m", -0.2}, {"rho", 0.5}}}}}, {"space", {{"p0", 4}}}}))));
  // bound = -0.5 * 0.25 - 0.1 = -0.225
  EXPECT_TRUE(has_check(v, "order m <= (rho-1)|1/p0-1/2| - epsilon", "fail"));
}

TEST(Gate, SinePerturbedPhaseIsNotOfDecomposedForm) {
  const auto v = only(theorem_gate(parse_spec(base_spec({{"operator", {{"phase", {{"kind", "sine_perturbed"}, {"amplitude", 0.1}}}}}}))));
  EXPECT_TRUE(has_check(v, "phase is x.xi + psi(xi)", "fail"));
}

TEST(GateProperty, EveryCheckAgreesWithItsOwnNumbers) {
  std::vector<json> specs = {base_spec()};
  for (const auto& p : space_patches()) specs.push_back(base_spec(p));
  json neg = base_spec({{"operator", {{"symbol", {{"m", 1}}}}}});
  specs.push_back(neg);
  for (const auto& j : specs) {
    const auto gate = theorem_gate(parse_spec(j));
    for (const auto& t : gate.theorems) {
      bool any_fail = false;
      for (const auto& c : t.checks) {
        ASSERT_TRUE(c.status == "pass" || c.status == "fail" || c.status == "note") << c.name;
        any_fail = any_fail || c.status == "fail";
        if (c.status == "note") continue;
        if (c.value && c.bound && c.slack && c.name.rfind("weight admissibility", 0) != 0 && c.name != "0 <= delta < rho <= 1" &&
            c.name != "1 < p_minus <= p_plus < infinity") {
          // le checks: slack = bound - value, and the status follows its sign
          EXPECT_DOUBLE_EQ(*c.slack, *c.bound - *c.value) << c.name;
          if (c.status == "pass") {
            EXPECT_GE(*c.slack, 0.0) << c.name;
          } else {
            EXPECT_LE(*c.slack, 0.0) << c.name;
          }
        }
        if (c.name.rfind("weight admissibility", 0) == 0 && c.slack) {
          EXPECT_EQ(c.status == "pass", *c.slack > 0.0);
        }
      }
      EXPECT_EQ(t.applies, !any_fail);
    }
  }
}

TEST(Calibration, IdentityHasRatioOneInEverySpace) {
  std::vector<json> patches = space_patches();
  patches.push_back(json::object());
  for (auto patch : patches) {
    patch["operator"]["symbol"] = {{"kind", "constant"}, {"value", 1}};
    const auto spec = parse_spec(base_spec(patch));
    const auto sweep = boundedness_sweep(spec);
    for (const auto& row : sweep.rows)
      for (double r : row.ratios) EXPECT_NEAR(r, 1.0, 1e-8);
    EXPECT_EQ(sweep.verdict, "bounded-stable");
  }
}

TEST(Calibration, MeanProjectionIsAContraction) {
  for (auto patch : space_patches()) {
    patch["operator"]["symbol"] = {{"kind", "mean_projection"}};
    const auto sweep = boundedness_sweep(parse_spec(base_spec(patch)));
    for (const auto& row : sweep.rows) EXPECT_LE(row.max_ratio, 1.0 + 1e-8);
  }
}

TEST(Sweep, GrowingOrderIsFlagged) {
  const auto sweep = boundedness_sweep(parse_spec(base_spec({{"operator", {{"symbol", {{"m", 1}}}}}})));
  EXPECT_EQ(sweep.verdict, "growing");
  EXPECT_GT(sweep.total_growth, 0.5);
  EXPECT_GT(sweep.last_change, 0.1);
}

TEST(SweepProperty, MaxRatioIsMonotoneInFamilySize) {
  const auto a = boundedness_sweep(parse_spec(base_spec({{"family", {{"count", 5}}}})));
  const auto b = boundedness_sweep(parse_spec(base_spec({{"family", {{"count", 15}}}})));
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    EXPECT_GE(b.rows[r].max_ratio, a.rows[r].max_ratio);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(a.rows[r].ratios[i], b.rows[r].ratios[i]);
  }
}

TEST(Sweep, ZeroFunctionsAreExcludedWithAWarning) {
  // harmonics at N = 4 include nonzero frequencies only when count allows; mean projection kills them
  json patch = space_patches()[1];
  patch["operator"]["symbol"] = {{"kind", "mean_projection"}};
  patch["family"] = {{"kind", "harmonics"}, {"count", 3}};
  patch["checks"] = {"msharp-control"};
  patch["resolutions"] = {64, 128};
  const auto spec = parse_spec(base_spec(patch));
  const auto c = msharp_control_ratio(spec);
  // Af is constant for every member, so M#(|Af|) vanishes and every member is excluded
  EXPECT_EQ(c.rows[0].excluded, 3);
  EXPECT_FALSE(c.warnings.empty());
}

TEST(MSharp, ProjectionHasZeroNumeratorAndIdentityIsBounded) {
  json patch = space_patches()[2];
  patch["operator"]["symbol"] = {{"kind", "mean_projection"}};
  patch["resolutions"] = {64, 128};
  const auto d = msharp_domination(parse_spec(base_spec(patch)));
  for (const auto& row : d.rows) EXPECT_LT(row.value, 1e-20);  // Af is constant up to rounding
  EXPECT_EQ(d.verdict, "stable");

  patch["operator"]["symbol"] = {{"kind", "constant"}, {"value", 1}};
  const auto id = msharp_domination(parse_spec(base_spec(patch)));
  // M#_s f <= (M |f|^s)^{1/s} 2^{1/s} <= 2^{1/s} M f for s = 1/2, by Jensen
  for (const auto& row : id.rows) {
    EXPECT_GT(row.value, 0.0);
    EXPECT_LE(row.value, 4.0 + 1e-12);
  }
}

TEST(Spec, ValidationErrors) {
  EXPECT_THROW(parse_spec(json::array()), SpecError);
  EXPECT_THROW(parse_spec(base_spec({{"operator", {{"truncations", {8, 4}}}}})), SpecError);
  EXPECT_THROW(parse_spec(base_spec({{"operator", {{"truncations", {32}}}}})), SpecError);
  EXPECT_THROW(parse_spec(base_spec({{"space", {{"p0", nullptr}}}})), SpecError);
  EXPECT_THROW(parse_spec(base_spec({{"space", {{"p0", 1}}}})), SpecError);
  EXPECT_THROW(parse_spec(base_spec({{"space", {{"norm", "variable"}}}})), SpecError);
  EXPECT_THROW(parse_spec(base_spec({{"checks", {"nope"}}})), SpecError);
  EXPECT_THROW(parse_spec(base_spec({{"theorems", {"nope"}}})), SpecError);
  EXPECT_THROW(parse_spec(base_spec({{"s", 1.0}})), SpecError);
  EXPECT_THROW(parse_spec(base_spec({{"operator", {{"symbol", {{"kind", "nope"}}}}}})), SpecError);
  EXPECT_THROW(parse_spec(base_spec({{"dim", 4}})), SpecError);
  EXPECT_THROW(parse_spec(base_spec({{"resolutions", {8}}})), SpecError);
  EXPECT_THROW(parse_spec(base_spec({{"expect", "applies"}})), SpecError);
  EXPECT_NO_THROW(parse_spec(base_spec()));
}

TEST(Report, VerdictsFollowExpectations) {
  auto res = run_experiment(parse_spec(base_spec()));
  EXPECT_TRUE(res.pass);
  EXPECT_EQ(res.report["verdicts"].size(), 2u);
  EXPECT_EQ(res.report["verdicts"][0]["check"], "gate:weighted_lp0");
  EXPECT_EQ(res.report["schema_version"], 1);

  res = run_experiment(parse_spec(base_spec({{"operator", {{"symbol", {{"m", 1}}}}}})));
  EXPECT_FALSE(res.pass);
  res = run_experiment(parse_spec(
      base_spec({{"operator", {{"symbol", {{"m", 1}}}}}, {"expect", {{"gate", "fails"}, {"ratio-sweep", "growing"}}}})));
  EXPECT_TRUE(res.pass);

  res = run_experiment(parse_spec(base_spec({{"checks", {"gate-only"}}})));
  EXPECT_FALSE(res.report.contains("ratio_sweep"));
  EXPECT_TRUE(res.tables.count("gate"));
}

TEST(ReportProperty, JsonAndCsvAreDeterministic) {
  const auto spec = parse_spec(base_spec(space_patches()[2]));
  const auto a = run_experiment(spec, base_spec()), b = run_experiment(spec, base_spec());
  EXPECT_EQ(a.report.dump(2), b.report.dump(2));
  ASSERT_EQ(a.tables.size(), b.tables.size());
  for (const auto& [stem, rows] : a.tables) EXPECT_EQ(to_csv(rows), to_csv(b.tables.at(stem)));
  const std::string csv = to_csv(a.tables.at("ratio_sweep"));
  EXPECT_EQ(csv.rfind("check,N,M,p_spec,w_spec,statistic,value\n", 0), 0u);
}

TEST(Report, WriteOutputsAndSuiteFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "torfio_lab_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "one.json") << base_spec({{"name", "one"}}).dump();
    std::ofstream(dir / "suite.json") << json{{"name", "pair"}, {"experiments", {"one.json", base_spec({{"name", "two"}})}}}.dump();
  }
  const auto suite = run_file((dir / "suite.json").string());
  EXPECT_TRUE(suite.pass);
  EXPECT_EQ(suite.report["suite"], "pair");
  ASSERT_EQ(suite.report["experiments"].size(), 2u);
  EXPECT_EQ(suite.report["experiments"][1]["name"], "two");
  EXPECT_EQ(suite.tables.at("ratio_sweep").front().check.rfind("one:", 0), 0u);

  const auto out = dir / "out";
  write_outputs(suite, out);
  EXPECT_TRUE(std::filesystem::exists(out / "report.json"));
  EXPECT_TRUE(std::filesystem::exists(out / "ratio_sweep.csv"));
  std::ifstream in(out / "report.json");
  EXPECT_EQ(json::parse(in), suite.report);

  Overrides o;
  o.checks = std::vector<std::string>{"gate-only"};
  const auto gated = run_file((dir / "one.json").string(), o);
  EXPECT_FALSE(gated.report.contains("ratio_sweep"));
  EXPECT_TRUE(gated.report.contains("pass"));
  std::filesystem::remove_all(dir);
}

TEST(Verify, AllSuitesPass) {
  for (const auto& r : verify_all(7)) EXPECT_TRUE(r.pass) << r.suite << " " << r.name << " " << r.value;
}
