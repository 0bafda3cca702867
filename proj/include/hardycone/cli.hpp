// Job parsing and execution behind the command-line driver.  Jobs arrive as
// JSON (from a config file or assembled from flags), are validated strictly
// (unknown keys rejected, defaults filled), executed, and reported as
// deterministic JSON/CSV artifacts.
//
// Exit code contract: 0 all pass / computed, 1 any verdict failed, 2 config
// error, 3 I/O error.
#pragma once

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hardycone/json_io.hpp"

namespace hardycone {

struct Job {
  std::string cmd;                       // constant | oracle | verify | sweep | report
  std::string ineq;                      // constant: which characterization
  std::string form;                      // oracle: which inequality form
  std::string cone = "dec";              // oracle cone forms
  std::string theorem;                   // verify target id
  int samples = 20;
  int budget = 2000;
  std::optional<WeightSpec> u, v, w;
  double p = 1.0, q = 1.0, s = 2.0;
  double delta = 0.0;
  double grid_a = 1e-6, grid_b = 1e6;
  int grid_n = 4096;
  Window window{1.0 / 8.0, 8.0};
  unsigned seed = 0;
  std::string out;
  std::string in;               // report input
  std::string format = "json";  // report output format
  std::string lattice;          // sweep lattice file
};

inline const std::vector<std::string>& constant_ineqs() {
  static const std::vector<std::string> v = {"hardy-dec", "hardy-inc", "copson-dec", "copson-inc",
                                             "c1", "c2", "c3", "c4", "c1s1", "c2s1", "c3s1", "c4s1"};
  return v;
}
inline const std::vector<std::string>& oracle_forms() {
  static const std::vector<std::string> v = {"ihi1", "ihi2", "ihi3", "ihi4", "plain-hardy",
                                             "plain-copson", "cone-hardy", "cone-copson"};
  return v;
}

// Strictly validated job from a JSON document; defaults filled.
inline Job parse_config(const Json& doc) {
  if (!doc.is_object()) throw invalid_argument("config must be a JSON object");
  reject_unknown_keys(doc,
                      {"schema_version", "cmd", "ineq", "form", "cone", "theorem", "samples",
                       "budget", "u", "v", "w", "p", "q", "s", "delta", "grid", "window", "seed",
                       "out", "in", "format", "lattice"},
                      "config");
  if (doc.contains("schema_version") && doc.at("schema_version").get<int>() != 1)
    throw invalid_argument("unsupported schema_version");
  Job job;
  if (!doc.contains("cmd")) throw invalid_argument("missing required key \"cmd\"");
  job.cmd = doc.at("cmd").get<std::string>();

  auto get_weight = [&](const char* key) -> std::optional<WeightSpec> {
    if (!doc.contains(key)) return std::nullopt;
    return weight_from_json(doc.at(key), key);
  };
  job.u = get_weight("u");
  job.v = get_weight("v");
  job.w = get_weight("w");
  if (doc.contains("p")) job.p = exponent_from_json(doc.at("p"), "p");
  if (doc.contains("q")) job.q = exponent_from_json(doc.at("q"), "q");
  if (doc.contains("s")) job.s = exponent_from_json(doc.at("s"), "s");
  if (doc.contains("delta")) job.delta = doc.at("delta").get<double>();
  if (doc.contains("grid")) {
    const auto& g = doc.at("grid");
    reject_unknown_keys(g, {"a", "b", "n"}, "grid");
    job.grid_a = g.at("a").get<double>();
    job.grid_b = g.at("b").get<double>();
    job.grid_n = g.at("n").get<int>();
  }
  if (doc.contains("window")) {
    const auto& w = doc.at("window");
    if (!w.is_array() || w.size() != 2) throw invalid_argument("\"window\" must be [lo, hi]");
    job.window.lo = w[0].get<double>();
    job.window.hi = w[1].get<double>();
    if (!(job.window.lo > 0.0 && job.window.lo <= job.window.hi))
      throw invalid_argument("\"window\" must satisfy 0 < lo <= hi");
  }
  if (doc.contains("seed")) job.seed = doc.at("seed").get<unsigned>();
  if (doc.contains("samples")) job.samples = doc.at("samples").get<int>();
  if (doc.contains("budget")) job.budget = doc.at("budget").get<int>();
  if (doc.contains("out")) job.out = doc.at("out").get<std::string>();
  if (doc.contains("in")) job.in = doc.at("in").get<std::string>();
  if (doc.contains("format")) job.format = doc.at("format").get<std::string>();
  if (doc.contains("lattice")) job.lattice = doc.at("lattice").get<std::string>();
  if (doc.contains("ineq")) job.ineq = doc.at("ineq").get<std::string>();
  if (doc.contains("form")) job.form = doc.at("form").get<std::string>();
  if (doc.contains("cone")) job.cone = doc.at("cone").get<std::string>();
  if (doc.contains("theorem")) job.theorem = doc.at("theorem").get<std::string>();

  auto require_weight = [&](const std::optional<WeightSpec>& w, const char* key) {
    if (!w) throw invalid_argument(std::string("missing required weight \"") + key + "\"");
  };
  if (job.cmd == "constant") {
    bool known = false;
    for (const auto& k : constant_ineqs()) known = known || k == job.ineq;
    if (!known) throw invalid_argument("\"ineq\" must be one of the characterization names");
    require_weight(job.u, "u");
    require_weight(job.v, "v");
    require_weight(job.w, "w");
  } else if (job.cmd == "oracle") {
    bool known = false;
    for (const auto& k : oracle_forms()) known = known || k == job.form;
    if (!known) throw invalid_argument("\"form\" must be one of the oracle form names");
    if (job.cone != "nonneg" && job.cone != "dec" && job.cone != "inc")
      throw invalid_argument("\"cone\" must be nonneg|dec|inc");
    require_weight(job.v, "v");
    require_weight(job.w, "w");
    if (job.form != "plain-hardy" && job.form != "plain-copson") require_weight(job.u, "u");
  } else if (job.cmd == "verify") {
    if (job.theorem.empty()) throw invalid_argument("missing required key \"theorem\"");
    if (job.samples < 0) throw invalid_argument("\"samples\" must be >= 0");
  } else if (job.cmd == "sweep") {
    if (job.lattice.empty()) throw invalid_argument("missing required key \"lattice\"");
  } else if (job.cmd == "report") {
    if (job.in.empty()) throw invalid_argument("missing required key \"in\"");
    if (job.format != "json" && job.format != "csv")
      throw invalid_argument("\"format\" must be json|csv");
  } else {
    throw invalid_argument("\"cmd\" must be constant|oracle|verify|sweep|report");
  }
  return job;
}

namespace detail {

inline Json echo_inputs(const Job& job) {
  Json j;
  if (job.u) j["u"] = weight_to_json(*job.u);
  if (job.v) j["v"] = weight_to_json(*job.v);
  if (job.w) j["w"] = weight_to_json(*job.w);
  j["p"] = exponent_to_json(job.p);
  j["q"] = exponent_to_json(job.q);
  j["s"] = exponent_to_json(job.s);
  return j;
}

inline ConstantReport run_constant(const Job& job) {
  ScanContext ctx = ScanContext::with_grid(job.grid_a, job.grid_b, job.grid_n);
  const WeightSpec &u = *job.u, &v = *job.v, &w = *job.w;
  const std::string& k = job.ineq;
  if (k == "hardy-dec") return hardy_decreasing_constant(u, v, w, job.p, job.q, ctx);
  if (k == "hardy-inc") return hardy_increasing_constant(u, v, w, job.p, job.q, ctx);
  if (k == "copson-dec") return copson_decreasing_constant(u, v, w, job.p, job.q, ctx);
  if (k == "copson-inc") return hardy_dual_increasing_constant(u, v, w, job.p, job.q, ctx);
  if (k == "c1") return iterated_constant(IteratedVariant::C1, u, v, w, job.p, job.q, job.s, ctx);
  if (k == "c2") return iterated_constant(IteratedVariant::C2, u, v, w, job.p, job.q, job.s, ctx);
  if (k == "c3") return iterated_constant(IteratedVariant::C3, u, v, w, job.p, job.q, job.s, ctx);
  if (k == "c4") return iterated_constant(IteratedVariant::C4, u, v, w, job.p, job.q, job.s, ctx);
  if (k == "c1s1") return iterated_constant_s1(IteratedS1Variant::C1s1, u, v, w, job.p, job.q, ctx);
  if (k == "c2s1") return iterated_constant_s1(IteratedS1Variant::C2s1, u, v, w, job.p, job.q, ctx);
  if (k == "c3s1") return iterated_constant_s1(IteratedS1Variant::C3s1, u, v, w, job.p, job.q, ctx);
  return iterated_constant_s1(IteratedS1Variant::C4s1, u, v, w, job.p, job.q, ctx);
}

inline InequalitySpec oracle_spec(const Job& job) {
  InequalitySpec spec;
  const std::string& f = job.form;
  spec.form = f == "ihi1"           ? IneqForm::IHI1
              : f == "ihi2"         ? IneqForm::IHI2
              : f == "ihi3"         ? IneqForm::IHI3
              : f == "ihi4"         ? IneqForm::IHI4
              : f == "plain-hardy"  ? IneqForm::PlainHardy
              : f == "plain-copson" ? IneqForm::PlainCopson
              : f == "cone-hardy"   ? IneqForm::ConeHardy
                                    : IneqForm::ConeCopson;
  spec.u = job.u.value_or(WeightSpec::power(1.0, 0.0));
  spec.v = *job.v;
  spec.w = *job.w;
  spec.p = job.p;
  spec.q = job.q;
  spec.s = job.s;
  spec.cone = is_iterated(spec.form) || spec.form == IneqForm::PlainHardy ||
                      spec.form == IneqForm::PlainCopson
                  ? Cone::Nonneg
                  : (job.cone == "inc" ? Cone::Inc : Cone::Dec);
  return spec;
}

inline bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << text;
  return static_cast<bool>(f);
}

// dotted-path assignment into a JSON object
inline void assign_path(Json& doc, const std::string& key, const Json& value) {
  Json* cur = &doc;
  size_t start = 0;
  while (true) {
    size_t dot = key.find('.', start);
    std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (dot == std::string::npos) {
      (*cur)[part] = value;
      return;
    }
    cur = &(*cur)[part];
    start = dot + 1;
  }
}

}  // namespace detail

struct RunResult {
  int exit_code = 0;
  Json report;
  std::string csv;  // optional side artifact
};

// Executes a validated job.  Throws invalid_argument for config-level
// problems discovered late; I/O failures surface as exit code 3.
inline RunResult run_job(const Job& job) {
  RunResult res;
  Json& out = res.report;
  out["schema_version"] = 1;
  out["cmd"] = job.cmd;

  if (job.cmd == "constant") {
    out["ineq"] = job.ineq;
    out["inputs"] = detail::echo_inputs(job);
    ConstantReport rep = detail::run_constant(job);
    out["result"] = report_to_json(rep);
    return res;
  }
  if (job.cmd == "oracle") {
    out["form"] = job.form;
    out["cone"] = job.cone;
    out["inputs"] = detail::echo_inputs(job);
    InequalitySpec spec = detail::oracle_spec(job);
    Grid grid = make_log_grid(job.grid_a, job.grid_b, job.grid_n);
    OracleEstimate est = best_constant_estimate(spec, grid, job.budget, job.seed);
    out["estimate"] = estimate_to_json(est);
    res.csv = witness_to_csv(est.witness);
    return res;
  }
  if (job.cmd == "verify") {
    SuiteConfig cfg;
    cfg.targets = {job.theorem};
    cfg.samples = job.samples;
    cfg.seed = job.seed;
    cfg.vc.oracle_grid = make_log_grid(job.grid_a, job.grid_b, job.grid_n);
    cfg.vc.approx_window = job.window;
    cfg.vc.budget = job.budget;
    SuiteReport rep = run_suite(cfg);
    out["seed"] = job.seed;
    out["samples"] = job.samples;
    Json sj = suite_report_to_json(rep);
    out["entries"] = sj["entries"];
    out["summary"] = sj["summary"];
    res.csv = suite_summary_to_csv(rep);
    for (const auto& e : rep.entries)
      if (e.verdict.status == VerdictStatus::Fail) res.exit_code = 1;
    return res;
  }
  if (job.cmd == "report") {
    std::ifstream f(job.in, std::ios::binary);
    if (!f) {
      res.exit_code = 3;
      out["error"] = "cannot open input: " + job.in;
      return res;
    }
    Json doc = Json::parse(f, nullptr, true);
    if (job.format == "json") {
      res.report = doc;
      return res;
    }
    // csv: flatten the entries table when present
    std::string csv = "id,target,case,left,right,ratio,status\n";
    if (doc.contains("entries")) {
      for (const auto& e : doc.at("entries")) {
        const auto& v = e.at("verdict");
        auto num = [](const Json& x) {
          return x.is_string() ? std::string("") : csv_number(x.get<double>());
        };
        csv += e.at("id").dump() + "," + e.at("target").get<std::string>() + "," +
               v.at("case").get<std::string>() + "," + num(v.at("left")) + "," +
               num(v.at("right")) + "," + num(v.at("ratio")) + "," +
               v.at("status").get<std::string>() + "\n";
      }
    }
    res.csv = csv;
    return res;
  }
  // sweep
  std::ifstream f(job.lattice, std::ios::binary);
  if (!f) {
    res.exit_code = 3;
    out["error"] = "cannot open lattice: " + job.lattice;
    return res;
  }
  Json lat = Json::parse(f, nullptr, true);
  reject_unknown_keys(lat, {"base", "axes"}, "lattice");
  Json base = lat.at("base");
  std::vector<std::pair<std::string, Json>> axes;
  for (const auto& ax : lat.at("axes")) {
    reject_unknown_keys(ax, {"key", "values"}, "lattice.axes");
    axes.emplace_back(ax.at("key").get<std::string>(), ax.at("values"));
  }
  // long-format CSV: one row per lattice point
  std::string csv;
  for (const auto& [k, vals] : axes) csv += k + ",";
  csv += "value,status\n";
  std::vector<size_t> idx(axes.size(), 0);
  bool done = axes.empty();
  int rows = 0;
  while (!done || rows == 0) {
    Json doc = base;
    std::string prefix;
    for (size_t a = 0; a < axes.size(); ++a) {
      const Json& val = axes[a].second[idx[a]];
      detail::assign_path(doc, axes[a].first, val);
      prefix += val.is_string() ? val.get<std::string>() : csv_number(val.get<double>());
      prefix += ",";
    }
    Job inner = parse_config(doc);
    RunResult rr = run_job(inner);
    double value = 0.0;
    std::string status = "ok";
    if (inner.cmd == "constant") {
      const Json& t = rr.report.at("result").at("total");
      value = t.is_string() ? kInf : t.get<double>();
    } else if (inner.cmd == "oracle") {
      const Json& t = rr.report.at("estimate").at("heuristic_best");
      value = t.is_string() ? kInf : t.get<double>();
    } else {
      int pass = 0, fail = 0;
      for (const auto& sm : rr.report.at("summary")) {
        pass += sm.at("pass").get<int>();
        fail += sm.at("fail").get<int>();
      }
      value = pass;
      status = fail > 0 ? "fail" : "ok";
      if (fail > 0) res.exit_code = 1;
    }
    csv += prefix + csv_number(value) + "," + status + "\n";
    ++rows;
    // advance the lattice index
    done = true;
    for (size_t a = axes.size(); a-- > 0;) {
      if (++idx[a] < axes[a].second.size()) {
        done = false;
        break;
      }
      idx[a] = 0;
    }
    if (axes.empty()) break;
  }
  res.csv = csv;
  out["rows"] = rows;
  return res;
}

// Full driver: parse, run, write artifacts.
inline int run_cli_job(const Json& doc) {
  Job job;
  try {
    job = parse_config(doc);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  RunResult res;
  try {
    res = run_job(job);
  } catch (const invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const condition_failed& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const unsupported& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  if (res.exit_code == 3) {
    std::cerr << (res.report.contains("error") ? res.report["error"].get<std::string>()
                                               : std::string("I/O error"))
              << "\n";
    return 3;
  }
  std::string text = job.format == "csv" && !res.csv.empty() && job.cmd == "report"
                         ? res.csv
                         : dump_deterministic(res.report);
  if (!job.out.empty()) {
    if (!detail::write_file(job.out, text)) {
      std::cerr << "I/O error: cannot write " << job.out << "\n";
      return 3;
    }
    if (!res.csv.empty() && job.cmd != "report") {
      std::string side = job.out + (job.cmd == "oracle" ? ".witness.csv" : ".csv");
      if (!detail::write_file(side, res.csv)) {
        std::cerr << "I/O error: cannot write " << side << "\n";
        return 3;
      }
    }
  } else {
    std::cout << text;
  }
  return res.exit_code;
}

}  // namespace hardycone
