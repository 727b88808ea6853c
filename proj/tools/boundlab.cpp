// boundlab: gate, sweep, verify and report on experiment specs.
//
// Exit codes: 0 all requested verdicts pass, 1 some verdict failed,
// 2 spec or command-line error, 3 numeric or domain failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "torfio/torfio.hpp"

namespace {

using namespace torfio;
using namespace torfio::lab;

void print_verdicts(const json& rep) {
  if (rep.contains("experiments")) {
    for (const auto& e : rep.at("experiments")) print_verdicts(e);
    return;
  }
  const std::string name = rep.value("name", std::string("experiment"));
  for (const auto& t : rep.at("gate").at("theorems"))
    std::printf("%s  gate %-22s %s\n", name.c_str(), t.at("theorem").get<std::string>().c_str(),
                t.at("summary").get<std::string>().c_str());
  for (const auto& v : rep.at("verdicts"))
    std::printf("%s  %-4s %-28s expected %-15s observed %s\n", name.c_str(), v.at("pass").get<bool>() ? "ok" : "FAIL",
                v.at("check").get<std::string>().c_str(), v.at("expected").get<std::string>().c_str(),
                v.at("observed").get<std::string>().c_str());
}

int run_spec(const std::string& spec, const std::string& out, const Overrides& o) {
  const RunResult r = run_file(spec, o);
  print_verdicts(r.report);
  if (!out.empty()) write_outputs(r, out);
  std::printf("%s\n", r.pass ? "PASS" : "FAIL");
  return r.pass ? 0 : 1;
}

int run_verify(const std::string& out, std::uint64_t seed) {
  const auto results = verify_all(seed);
  bool pass = true;
  for (const auto& v : results) {
    std::printf("%-4s %-12s %-52s %.3e %s %.3g\n", v.pass ? "ok" : "FAIL", v.suite.c_str(), v.name.c_str(), v.value,
                v.relation.c_str(), v.tolerance);
    pass = pass && v.pass;
  }
  if (!out.empty()) {
    RunResult r;
    r.report = {{"schema_version", report_schema_version}, {"verify", to_json(results)}, {"pass", pass}};
    for (const auto& v : results) r.tables["verify"].push_back({v.suite, "", "", "", "", v.name, v.value});
    write_outputs(r, out);
  }
  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toroidal FIO experiment harness"};
  app.require_subcommand(1);

  std::string spec, out;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::optional<double> threshold;

  auto add_common = [&](CLI::App* sub, bool needs_spec) {
    if (needs_spec) sub->add_option("--spec", spec, "experiment or suite JSON file")->required();
    sub->add_option("--out", out, "directory for report.json and CSV tables");
    sub->add_option("--seed", seed, "override the test-family seed");
    sub->add_option("--threads", threads, "worker threads (0: hardware concurrency)")->check(CLI::NonNegativeNumber);
    if (needs_spec) sub->add_option("--stability-threshold", threshold, "override the sweep stability threshold");
  };
  auto* gate = app.add_subcommand("gate", "check theorem hypotheses only");
  auto* sweep = app.add_subcommand("sweep", "gate plus the truncation ratio sweep");
  auto* verify = app.add_subcommand("verify", "run the exact-identity suites");
  auto* report = app.add_subcommand("report", "run every check requested by the spec file");
  add_common(gate, true);
  add_common(sweep, true);
  add_common(verify, false);
  add_common(report, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  set_default_threads(static_cast<unsigned>(threads));
  Overrides o;
  o.seed = seed;
  o.stability_threshold = threshold;
  try {
    if (*verify) return run_verify(out, seed.value_or(7));
    if (*gate) o.checks = std::vector<std::string>{"gate-only"};
    if (*sweep) o.checks = std::vector<std::string>{"ratio-sweep"};
    return run_spec(spec, out, o);
  } catch (const SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
