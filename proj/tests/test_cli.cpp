#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>

#include "hardycone/cli.hpp"

using namespace hardycone;
using Catch::Approx;

namespace {
Json golden_constant_job() {
  Json j;
  j["cmd"] = "constant";
  j["ineq"] = "hardy-dec";
  j["u"] = Json{{"kind", "power"}, {"c", 1.0}, {"alpha", 0.0}};
  j["v"] = Json{{"kind", "power"}, {"c", 1.0}, {"alpha", 0.0}};
  j["w"] = Json{{"kind", "two_piece"}, {"c1", 1.0}, {"alpha", 0.0}, {"c2", 1.0}, {"beta", -4.0},
                {"knot", 1.0}};
  j["p"] = 2.0;
  j["q"] = 2.0;
  j["grid"] = Json{{"a", 1e-8}, {"b", 1e8}, {"n", 1025}};
  return j;
}

int run_binary(const std::string& args) {
  const char* bin = std::getenv("HC_CLI");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}
}  // namespace

TEST_CASE("config parsing: round trip, defaults, rejections") {
  Job job = parse_config(golden_constant_job());
  CHECK(job.cmd == "constant");
  CHECK(job.ineq == "hardy-dec");
  CHECK(job.p == 2.0);
  CHECK(job.window.hi == Approx(8.0));  // default window
  CHECK(job.seed == 0);

  // unknown key rejected with its path
  Json bad = golden_constant_job();
  bad["foo"] = 1;
  CHECK_THROWS_WITH(parse_config(bad), Catch::Matchers::ContainsSubstring("foo"));

  // missing weight named in the diagnostic
  Json missing = golden_constant_job();
  missing.erase("u");
  CHECK_THROWS_WITH(parse_config(missing), Catch::Matchers::ContainsSubstring("u"));

  // nested unknown key in a weight
  Json badw = golden_constant_job();
  badw["u"]["extra"] = 2;
  CHECK_THROWS_WITH(parse_config(badw), Catch::Matchers::ContainsSubstring("extra"));

  // "inf" exponents parse
  Json qinf = golden_constant_job();
  qinf["q"] = "inf";
  CHECK(std::isinf(parse_config(qinf).q));
}

TEST_CASE("constant job surfaces the characterization end to end") {
  Job job = parse_config(golden_constant_job());
  RunResult res = run_job(job);
  CHECK(res.exit_code == 0);
  const Json& terms = res.report.at("result").at("terms");
  CHECK(terms.at("A0").get<double>() == Approx(2.0 / 3.0).epsilon(1e-5));
  CHECK(terms.at("A1").get<double>() == Approx(2.0 / 3.0).epsilon(1e-5));
  CHECK(res.report.at("result").at("regime").get<std::string>() == "I");
}

TEST_CASE("infinite totals serialize as the literal string inf") {
  Json j = golden_constant_job();
  j["w"] = Json{{"kind", "power"}, {"c", 1.0}, {"alpha", 0.0}};  // total becomes infinite
  RunResult res = run_job(parse_config(j));
  CHECK(res.report.at("result").at("total").is_string());
  CHECK(res.report.at("result").at("total").get<std::string>() == "inf");
  std::string text = dump_deterministic(res.report);
  CHECK(text.find("\"inf\"") != std::string::npos);
}

TEST_CASE("deterministic emission: identical jobs give identical bytes") {
  Json j;
  j["cmd"] = "verify";
  j["theorem"] = "hardy-dec:I";
  j["samples"] = 1;
  j["seed"] = 9;
  j["budget"] = 300;
  j["grid"] = Json{{"a", 1e-4}, {"b", 1e4}, {"n", 513}};
  RunResult a = run_job(parse_config(j));
  RunResult b = run_job(parse_config(j));
  CHECK(dump_deterministic(a.report) == dump_deterministic(b.report));
  CHECK(a.csv == b.csv);
}

TEST_CASE("csv cells: infinities become empty cells") {
  CHECK(csv_number(kInf).empty());
  CHECK(csv_number(1.5) == "1.5");
  SuiteReport rep;
  SuiteEntry e;
  e.id = 0;
  e.target = "t";
  e.verdict.left = kInf;
  e.verdict.right = 1.0;
  e.verdict.status = VerdictStatus::Fail;
  rep.entries.push_back(e);
  std::string csv = suite_entries_to_csv(rep);
  CHECK(csv.find("0,t,,,1,") != std::string::npos);
}

TEST_CASE("exit codes through the real binary") {
  // config error: bad subcommand arguments
  CHECK(run_binary("constant --ineq nonsense") == 2);
  // verify with zero samples: empty report, success
  CHECK(run_binary("verify --theorem hardy-dec:I --samples 0 --grid 1e-3,1e3,129") == 0);
  // I/O error: unwritable output path
  CHECK(run_binary("verify --theorem hardy-dec:I --samples 0 --grid 1e-3,1e3,129 "
                   "--out /nonexistent-dir/report.json") == 3);
}

TEST_CASE("sweep lattice drives the constant computation") {
  std::string lat_path = "/tmp/hc_test_lattice.json";
  {
    Json base = golden_constant_job();
    base["grid"] = Json{{"a", 1e-6}, {"b", 1e6}, {"n", 513}};
    Json lat;
    lat["base"] = base;
    lat["axes"] = Json::array({Json{{"key", "p"}, {"values", Json::array({2.0, 2.5})}},
                               Json{{"key", "q"}, {"values", Json::array({2.0, 3.0})}}});
    std::ofstream f(lat_path);
    f << lat.dump();
  }
  Json j;
  j["cmd"] = "sweep";
  j["lattice"] = lat_path;
  RunResult res = run_job(parse_config(j));
  CHECK(res.exit_code == 0);
  // header + 4 rows
  int lines = 0;
  for (char c : res.csv) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 5);
  CHECK(res.csv.rfind("p,q,value,status\n", 0) == 0);
}
