#pragma once

// Runs the checks of an experiment in order gate -> sweep -> domination ->
// control and serializes the results. Reports carry no timestamps or timings,
// so equal inputs give byte-identical output.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "torfio/lab/gate.hpp"
#include "torfio/lab/sweep.hpp"
#include "torfio/lab/verify.hpp"

namespace torfio::lab {

inline constexpr int report_schema_version = 1;

struct CsvRow {
  std::string check;
  std::string truncation;
  std::string samples;
  std::string p_spec;
  std::string w_spec;
  std::string statistic;
  double value = 0.0;
};

struct RunResult {
  json report;
  std::map<std::string, std::vector<CsvRow>> tables;  // file stem -> rows
  bool pass = true;
};

namespace detail {

inline json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace detail

inline json to_json(const GateReport& g) {
  json out = json::object();
  out["all_apply"] = g.all_apply;
  out["theorems"] = json::array();
  for (const auto& t : g.theorems) {
    json jt{{"theorem", t.theorem}, {"applies", t.applies}, {"summary", t.summary}, {"assumed", t.assumed}};
    jt["checks"] = json::array();
    for (const auto& c : t.checks)
      jt["checks"].push_back({{"name", c.name},
                              {"status", c.status},
                              {"value", detail::optional_number(c.value)},
                              {"bound", detail::optional_number(c.bound)},
                              {"slack", detail::optional_number(c.slack)},
                              {"detail", c.detail}});
    out["theorems"].push_back(jt);
  }
  return out;
}

inline json to_json(const RatioReport& r) {
  json out{{"space", r.space},
           {"verdict", r.verdict},
           {"last_change", detail::finite_or_null(r.last_change)},
           {"total_growth", detail::finite_or_null(r.total_growth)},
           {"warnings", r.warnings}};
  out["rows"] = json::array();
  for (const auto& row : r.rows) {
    json ratios = json::array();
    for (double v : row.ratios) ratios.push_back(detail::finite_or_null(v));
    out["rows"].push_back({{"N", row.truncation},
                           {"max_ratio", row.max_ratio},
                           {"mean_ratio", row.mean_ratio},
                           {"argmax", row.argmax},
                           {"excluded", row.excluded},
                           {"ratios", ratios}});
  }
  return out;
}

inline json to_json(const ResolutionReport& r) {
  json out{{"check", r.check},
           {"N", r.truncation},
           {"verdict", r.verdict},
           {"change", detail::finite_or_null(r.change)},
           {"warnings", r.warnings},
           {"extra", r.extra}};
  out["rows"] = json::array();
  for (const auto& row : r.rows)
    out["rows"].push_back({{"M", row.samples}, {"value", row.value}, {"argmax", row.argmax}, {"excluded", row.excluded}});
  return out;
}

inline json to_json(const std::vector<VerifyResult>& v) {
  json out = json::array();
  for (const auto& r : v)
    out.push_back({{"suite", r.suite},
                   {"name", r.name},
                   {"value", r.value},
                   {"relation", r.relation},
                   {"tolerance", r.tolerance},
                   {"pass", r.pass}});
  return out;
}

namespace detail {

/// Expected verdict for `check` (and theorem, for the gate).
inline std::string expected(const ExperimentSpec& s, const std::string& check, const std::string& fallback,
                            const std::string& theorem = {}) {
  if (!s.expect.contains(check)) return fallback;
  const auto& e = s.expect.at(check);
  if (e.is_string()) return e.get<std::string>();
  if (e.is_object() && !theorem.empty() && e.contains(theorem)) return e.at(theorem).get<std::string>();
  return fallback;
}

}  // namespace detail

inline RunResult run_experiment(const ExperimentSpec& s, const json& echo = json::object()) {
  RunResult res;
  json& rep = res.report;
  rep["schema_version"] = report_schema_version;
  rep["name"] = s.name;
  rep["spec"] = echo;
  rep["verdicts"] = json::array();
  const std::string p_spec = p_label(s), w_spec = describe(s.weight);
  const std::string m_str = std::to_string(s.samples);

  auto verdict = [&](const std::string& check, const std::string& expected, const std::string& observed) {
    const bool ok = expected == observed;
    rep["verdicts"].push_back({{"check", check}, {"expected", expected}, {"observed", observed}, {"pass", ok}});
    res.pass = res.pass && ok;
  };

  const GateReport gate = theorem_gate(s);
  rep["gate"] = to_json(gate);
  for (const auto& t : gate.theorems) {
    const std::string observed = t.applies ? "applies" : "fails";
    verdict("gate:" + t.theorem, detail::expected(s, "gate", "applies", t.theorem), observed);
    for (const auto& c : t.checks) {
      if (c.value)
        res.tables["gate"].push_back({"gate:" + t.theorem, "", m_str, p_spec, w_spec, c.name + " [value]", *c.value});
      if (c.slack)
        res.tables["gate"].push_back({"gate:" + t.theorem, "", m_str, p_spec, w_spec, c.name + " [slack]", *c.slack});
    }
  }
  if (s.wants("gate-only")) return res;

  if (s.wants("ratio-sweep")) {
    const auto sweep = boundedness_sweep(s);
    rep["ratio_sweep"] = to_json(sweep);
    verdict("ratio-sweep", detail::expected(s, "ratio-sweep", "bounded-stable"), sweep.verdict);
    auto& t = res.tables["ratio_sweep"];
    for (const auto& row : sweep.rows) {
      const std::string n = std::to_string(row.truncation);
      t.push_back({"ratio-sweep", n, m_str, p_spec, w_spec, "max_ratio", row.max_ratio});
      t.push_back({"ratio-sweep", n, m_str, p_spec, w_spec, "mean_ratio", row.mean_ratio});
      for (std::size_t i = 0; i < row.ratios.size(); ++i)
        if (std::isfinite(row.ratios[i]))
          t.push_back({"ratio-sweep", n, m_str, p_spec, w_spec, "ratio[" + std::to_string(i) + "]", row.ratios[i]});
    }
  }

  auto resolution_tables = [&](const ResolutionReport& r, const std::string& stem) {
    auto& t = res.tables[stem];
    for (const auto& row : r.rows)
      t.push_back({r.check, std::to_string(r.truncation), std::to_string(row.samples), p_spec, w_spec, "max", row.value});
  };
  if (s.wants("msharp-domination")) {
    const auto d = msharp_domination(s);
    rep["msharp_domination"] = to_json(d);
    verdict("msharp-domination", detail::expected(s, "msharp-domination", "stable"), d.verdict);
    resolution_tables(d, "msharp_domination");
  }
  if (s.wants("weak11")) {
    const auto w = weak11_study(s);
    rep["weak11"] = to_json(w);
    verdict("weak11", detail::expected(s, "weak11", "stable"), w.verdict);
    resolution_tables(w, "weak11");
  }
  if (s.wants("msharp-control")) {
    const auto c = msharp_control_ratio(s);
    rep["msharp_control"] = to_json(c);
    verdict("msharp-control", detail::expected(s, "msharp-control", "stable"), c.verdict);
    resolution_tables(c, "msharp_control");
  }
  rep["pass"] = res.pass;
  return res;
}

/// Applies command-line overrides to a parsed spec.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> stability_threshold;
  std::optional<std::vector<std::string>> checks;
};

inline ExperimentSpec apply_overrides(ExperimentSpec s, const Overrides& o) {
  if (o.seed) s.family.seed = *o.seed;
  if (o.stability_threshold) s.stability_threshold = *o.stability_threshold;
  if (o.checks) s.checks = *o.checks;
  return s;
}

/// A spec file holds one experiment, or {"name", "experiments": [...]} whose
/// entries are inline specs or paths relative to the suite file.
inline RunResult run_file(const std::string& path, const Overrides& o = {}) {
  const json j = read_json_file(path);
  if (!j.contains("experiments")) {
    auto res = run_experiment(apply_overrides(parse_spec(j), o), j);
    res.report["pass"] = res.pass;
    return res;
  }
  RunResult out;
  out.report["schema_version"] = report_schema_version;
  out.report["suite"] = j.value("name", std::string("suite"));
  out.report["experiments"] = json::array();
  const auto base = std::filesystem::path(path).parent_path();
  for (const auto& e : j.at("experiments")) {
    json spec_json = e.is_string() ? read_json_file((base / e.get<std::string>()).string()) : e;
    auto res = run_experiment(apply_overrides(parse_spec(spec_json), o), spec_json);
    res.report["pass"] = res.pass;
    for (auto& [stem, rows] : res.tables)
      for (auto& r : rows) {
        r.check = res.report["name"].get<std::string>() + ":" + r.check;
        out.tables[stem].push_back(r);
      }
    out.pass = out.pass && res.pass;
    out.report["experiments"].push_back(std::move(res.report));
  }
  out.report["pass"] = out.pass;
  return out;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline std::string to_csv(const std::vector<CsvRow>& rows) {
  std::string out = "check,N,M,p_spec,w_spec,statistic,value\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g", r.value);
    out += csv_escape(r.check) + "," + r.truncation + "," + r.samples + "," + csv_escape(r.p_spec) + "," +
           csv_escape(r.w_spec) + "," + csv_escape(r.statistic) + "," + buf + "\n";
  }
  return out;
}

inline void write_outputs(const RunResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / "report.json", std::ios::binary);
    os << r.report.dump(2) << "\n";
  }
  for (const auto& [stem, rows] : r.tables) {
    std::ofstream os(dir / (stem + ".csv"), std::ios::binary);
    os << to_csv(rows);
  }
}

}  // namespace torfio::lab
