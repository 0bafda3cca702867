// Command-line driver: computes characterization constants, runs the
// brute-force oracle, executes verification suites, sweeps parameter
// lattices, and converts report files.
//
//   hardycone_cli constant --ineq c1 --u '{"kind":"power","c":1,"alpha":0}' ...
//   hardycone_cli oracle --form plain-hardy --p 2 --q 2 ...
//   hardycone_cli verify --theorem hardy-dec:I --samples 20 --seed 1 --out r.json
//   hardycone_cli sweep --lattice configs/sweep.json --out sweep.csv
//   hardycone_cli report --in r.json --format csv
//
// Any subcommand also accepts --config <file> with a full JSON job; flags
// given alongside override the file's values.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hardycone/hardycone.hpp"

namespace {

using hardycone::Json;

struct CommonFlags {
  std::string config, grid, window, out;
  unsigned seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& c) {
  cmd->add_option("--config", c.config, "JSON job file; flags override its entries");
  cmd->add_option("--grid", c.grid, "oracle/scan grid as a,b,n (default 1e-6,1e6,4096)");
  cmd->add_option("--window", c.window, "comparability window as lo,hi (default 0.125,8)");
  cmd->add_option("--out", c.out, "output path (stdout when omitted)");
  cmd->add_option("--seed", c.seed, "sampler seed")->each([&c](const std::string&) { c.seed_set = true; });
}

bool split_list(const std::string& text, std::vector<double>& out) {
  out.clear();
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      out.push_back(std::stod(part));
    } catch (...) {
      return false;
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return true;
}

int apply_common(Json& doc, const CommonFlags& c) {
  if (!c.config.empty()) {
    std::ifstream f(c.config);
    if (!f) {
      std::cerr << "config error: cannot open " << c.config << "\n";
      return 2;
    }
    Json file = Json::parse(f, nullptr, false);
    if (file.is_discarded()) {
      std::cerr << "config error: " << c.config << " is not valid JSON\n";
      return 2;
    }
    std::string cmd = doc["cmd"];
    for (auto it = file.begin(); it != file.end(); ++it)
      if (!doc.contains(it.key())) doc[it.key()] = it.value();
    doc["cmd"] = cmd;
  }
  std::vector<double> nums;
  if (!c.grid.empty()) {
    if (!split_list(c.grid, nums) || nums.size() != 3) {
      std::cerr << "config error: --grid expects a,b,n\n";
      return 2;
    }
    doc["grid"] = Json{{"a", nums[0]}, {"b", nums[1]}, {"n", static_cast<int>(nums[2])}};
  }
  if (!c.window.empty()) {
    if (!split_list(c.window, nums) || nums.size() != 2) {
      std::cerr << "config error: --window expects lo,hi\n";
      return 2;
    }
    doc["window"] = Json::array({nums[0], nums[1]});
  }
  if (!c.out.empty()) doc["out"] = c.out;
  if (c.seed_set) doc["seed"] = c.seed;
  return -1;
}

bool put_weight(Json& doc, const char* key, const std::string& text) {
  if (text.empty()) return true;
  Json w = Json::parse(text, nullptr, false);
  if (w.is_discarded()) {
    std::cerr << "config error: --" << key << " is not valid JSON\n";
    return false;
  }
  doc[key] = w;
  return true;
}

bool put_exponent(Json& doc, const char* key, const std::string& text) {
  if (text.empty()) return true;
  if (text == "inf") {
    doc[key] = "inf";
    return true;
  }
  try {
    doc[key] = std::stod(text);
  } catch (...) {
    std::cerr << "config error: --" << key << " must be a number or inf\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"best-constant characterizations of weighted Hardy-type inequalities"};
  app.require_subcommand(0, 1);

  CommonFlags c_const, c_oracle, c_verify, c_sweep, c_report;
  std::string ineq, form, cone = "dec", theorem, uw, vw, ww, ps, qs, ss, in_path, format = "json";
  std::string lattice;
  double delta = 0.0;
  int samples = 20, budget = 2000;

  auto* cc = app.add_subcommand("constant", "evaluate a best-constant characterization");
  cc->add_option("--ineq", ineq, "hardy-dec|hardy-inc|copson-dec|copson-inc|c1..c4|c1s1..c4s1");
  cc->add_option("--u", uw, "weight u as JSON");
  cc->add_option("--v", vw, "weight v as JSON");
  cc->add_option("--w", ww, "weight w as JSON");
  cc->add_option("--p", ps, "exponent p (number or inf)");
  cc->add_option("--q", qs, "exponent q (number or inf)");
  cc->add_option("--s", ss, "exponent s");
  cc->add_option("--delta", delta, "delta parameter where applicable");
  add_common(cc, c_const);

  auto* co = app.add_subcommand("oracle", "brute-force best constant estimate");
  co->add_option("--form", form, "ihi1..ihi4|plain-hardy|plain-copson|cone-hardy|cone-copson");
  co->add_option("--cone", cone, "nonneg|dec|inc (cone forms)");
  co->add_option("--u", uw, "weight u as JSON");
  co->add_option("--v", vw, "weight v as JSON");
  co->add_option("--w", ww, "weight w as JSON");
  co->add_option("--p", ps, "exponent p");
  co->add_option("--q", qs, "exponent q");
  co->add_option("--s", ss, "exponent s");
  co->add_option("--budget", budget, "ratio-evaluation budget");
  add_common(co, c_oracle);

  auto* cv = app.add_subcommand("verify", "run a verification suite target");
  cv->add_option("--theorem", theorem, "target id, e.g. hardy-dec:I or rt-main-3");
  cv->add_option("--samples", samples, "instances per target");
  cv->add_option("--budget", budget, "oracle budget per instance");
  add_common(cv, c_verify);

  auto* cs = app.add_subcommand("sweep", "iterate a parameter lattice");
  cs->add_option("--lattice", lattice, "lattice JSON file");
  add_common(cs, c_sweep);

  auto* cr = app.add_subcommand("report", "convert a report file");
  cr->add_option("--in", in_path, "input report JSON");
  cr->add_option("--format", format, "json|csv");
  add_common(cr, c_report);

  CLI11_PARSE(app, argc, argv);

  Json doc;
  CommonFlags* flags = nullptr;
  if (cc->parsed()) {
    doc["cmd"] = "constant";
    flags = &c_const;
    if (!ineq.empty()) doc["ineq"] = ineq;
    if (!put_weight(doc, "u", uw) || !put_weight(doc, "v", vw) || !put_weight(doc, "w", ww)) return 2;
    if (!put_exponent(doc, "p", ps) || !put_exponent(doc, "q", qs) || !put_exponent(doc, "s", ss))
      return 2;
    if (delta > 0.0) doc["delta"] = delta;
  } else if (co->parsed()) {
    doc["cmd"] = "oracle";
    flags = &c_oracle;
    if (!form.empty()) doc["form"] = form;
    doc["cone"] = cone;
    if (!put_weight(doc, "u", uw) || !put_weight(doc, "v", vw) || !put_weight(doc, "w", ww)) return 2;
    if (!put_exponent(doc, "p", ps) || !put_exponent(doc, "q", qs) || !put_exponent(doc, "s", ss))
      return 2;
    if (co->count("--budget")) doc["budget"] = budget;
  } else if (cv->parsed()) {
    doc["cmd"] = "verify";
    flags = &c_verify;
    if (!theorem.empty()) doc["theorem"] = theorem;
    if (cv->count("--samples")) doc["samples"] = samples;
    if (cv->count("--budget")) doc["budget"] = budget;
  } else if (cs->parsed()) {
    doc["cmd"] = "sweep";
    flags = &c_sweep;
    if (!lattice.empty()) doc["lattice"] = lattice;
  } else if (cr->parsed()) {
    doc["cmd"] = "report";
    flags = &c_report;
    if (!in_path.empty()) doc["in"] = in_path;
    doc["format"] = format;
  } else {
    std::cerr << app.help();
    return 2;
  }
  int rc = apply_common(doc, *flags);
  if (rc >= 0) return rc;
  return hardycone::run_cli_job(doc);
}
