// JSON schemas and deterministic serialization.  Reports are built as
// insertion-ordered JSON and dumped with a fixed number format (12
// significant digits, "inf" for infinities), so identical inputs produce
// byte-identical report files.
#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "hardycone/constants.hpp"
#include "hardycone/oracle.hpp"
#include "hardycone/verify.hpp"

namespace hardycone {

using Json = nlohmann::ordered_json;

// -- weights -------------------------------------------------------------------

inline Json weight_to_json(const WeightSpec& w) {
  return std::visit(
      [](const auto& ww) -> Json {
        using T = std::decay_t<decltype(ww)>;
        Json j;
        if constexpr (std::is_same_v<T, PowerWeight>) {
          j["kind"] = "power";
          j["c"] = ww.coeff;
          j["alpha"] = ww.alpha;
        } else if constexpr (std::is_same_v<T, TwoPiecePowerWeight>) {
          j["kind"] = "two_piece";
          j["c1"] = ww.c1;
          j["alpha"] = ww.alpha;
          j["c2"] = ww.c2;
          j["beta"] = ww.beta;
          j["knot"] = ww.knot;
        } else if constexpr (std::is_same_v<T, StepTableWeight>) {
          j["kind"] = "step";
          j["breaks"] = ww.breaks;
          j["values"] = ww.values;
        } else {
          j["kind"] = "zero";
        }
        return j;
      },
      w.variant());
}

inline void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed,
                                const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw invalid_argument("unknown key \"" + path + "." + it.key() + "\"");
  }
}

inline WeightSpec weight_from_json(const Json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("kind"))
    throw invalid_argument("weight \"" + path + "\" must be an object with a \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") {
    reject_unknown_keys(j, {"kind", "c", "alpha"}, path);
    return WeightSpec::power(j.at("c").get<double>(), j.at("alpha").get<double>());
  }
  if (kind == "two_piece") {
    reject_unknown_keys(j, {"kind", "c1", "alpha", "c2", "beta", "knot"}, path);
    return WeightSpec::two_piece(j.at("c1").get<double>(), j.at("alpha").get<double>(),
                                 j.at("c2").get<double>(), j.at("beta").get<double>(),
                                 j.at("knot").get<double>());
  }
  if (kind == "step") {
    reject_unknown_keys(j, {"kind", "breaks", "values"}, path);
    return WeightSpec::step(j.at("breaks").get<std::vector<double>>(),
                            j.at("values").get<std::vector<double>>());
  }
  if (kind == "zero") {
    reject_unknown_keys(j, {"kind"}, path);
    return WeightSpec::zero();
  }
  throw invalid_argument("weight \"" + path + "\" has unknown kind \"" + kind + "\"");
}

// exponents appear as numbers or the string "inf"
inline double exponent_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return kInf;
    throw invalid_argument("\"" + path + "\" must be a number or \"inf\"");
  }
  return j.get<double>();
}

inline Json exponent_to_json(double x) {
  if (std::isinf(x)) return Json("inf");
  return Json(x);
}

// -- deterministic dumping -------------------------------------------------------

namespace detail {

inline std::string format_number(double x) {
  if (std::isinf(x)) return "\"inf\"";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

inline void dump_rec(const Json& j, std::string& out, int indent, int depth) {
  auto pad = [&](int d) { out.append(static_cast<size_t>(indent * d), ' '); };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        pad(depth + 1);
        out += Json(it.key()).dump();
        out += ": ";
        dump_rec(it.value(), out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      pad(depth);
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      for (size_t i = 0; i < j.size(); ++i) {
        dump_rec(j[i], out, indent, depth);
        if (i + 1 < j.size()) out += ", ";
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace detail

// fixed-format dump: floats at 12 significant digits, "inf" for infinities
inline std::string dump_deterministic(const Json& j) {
  std::string out;
  detail::dump_rec(j, out, 2, 0);
  out += "\n";
  return out;
}

// -- report serialization ---------------------------------------------------------

inline Json report_to_json(const ConstantReport& rep) {
  Json j;
  j["total"] = rep.total.is_inf() ? Json("inf") : Json(rep.total.value());
  Json terms;
  for (const auto& [k, v] : rep.terms) terms[k] = std::isinf(v) ? Json("inf") : Json(v);
  j["terms"] = terms;
  j["regime"] = rep.regime.label;
  j["exactness"] = rep.exactness == Exactness::Equal ? "Equal" : "Equivalent";
  j["grid"] = Json{{"a", rep.grid.a}, {"b", rep.grid.b}, {"n", rep.grid.n}};
  j["flags"] = rep.flags;
  return j;
}

inline Json estimate_to_json(const OracleEstimate& est) {
  Json j;
  j["lower_bound"] = std::isinf(est.lower_bound) ? Json("inf") : Json(est.lower_bound);
  j["heuristic_best"] = std::isinf(est.heuristic_best) ? Json("inf") : Json(est.heuristic_best);
  j["iterations"] = est.iterations;
  j["stable"] = est.stable;
  j["tail_share"] = est.tail_share;
  j["grid"] = Json{{"a", est.grid.a}, {"b", est.grid.b}, {"n", est.grid.n}};
  return j;
}

inline Json verdict_to_json(const Verdict& v) {
  Json j;
  j["theorem"] = v.theorem;
  j["case"] = v.case_label;
  j["left"] = std::isinf(v.left) ? Json("inf") : Json(v.left);
  j["right"] = std::isinf(v.right) ? Json("inf") : Json(v.right);
  double r = v.ratio();
  j["ratio"] = std::isinf(r) ? Json("inf") : Json(r);
  j["window"] = Json::array({v.window.lo, v.window.hi});
  j["status"] = to_string(v.status);
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

inline Json suite_report_to_json(const SuiteReport& rep) {
  Json j;
  Json entries = Json::array();
  for (const auto& e : rep.entries) {
    Json je;
    je["id"] = e.id;
    je["target"] = e.target;
    je["inputs"] = e.inputs;
    je["verdict"] = verdict_to_json(e.verdict);
    entries.push_back(je);
  }
  j["entries"] = entries;
  Json sums = Json::array();
  for (const auto& s : rep.summaries) {
    Json js;
    js["target"] = s.target;
    js["pass"] = s.pass;
    js["fail"] = s.fail;
    js["inconclusive"] = s.inconclusive;
    js["min_ratio"] = s.min_ratio;
    js["max_ratio"] = s.max_ratio;
    sums.push_back(js);
  }
  j["summary"] = sums;
  return j;
}

// -- CSV -----------------------------------------------------------------------

inline std::string csv_number(double x) {
  if (std::isinf(x)) return "";  // empty cell for extended values
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// witness serialization: one (node, value) row per cell (left node)
inline std::string witness_to_csv(const DiscreteFunction& h) {
  std::string out = "node,value\n";
  for (size_t i = 0; i < h.values.size(); ++i) {
    out += csv_number(h.grid.points[i]);
    out += ",";
    out += csv_number(h.values[i]);
    out += "\n";
  }
  return out;
}

inline std::string suite_summary_to_csv(const SuiteReport& rep) {
  std::string out = "target,pass,fail,inconclusive,min_ratio,max_ratio\n";
  for (const auto& s : rep.summaries) {
    out += s.target + "," + std::to_string(s.pass) + "," + std::to_string(s.fail) + "," +
           std::to_string(s.inconclusive) + "," + csv_number(s.min_ratio) + "," +
           csv_number(s.max_ratio) + "\n";
  }
  return out;
}

inline std::string suite_entries_to_csv(const SuiteReport& rep) {
  std::string out = "id,target,case,left,right,ratio,status\n";
  for (const auto& e : rep.entries) {
    out += std::to_string(e.id) + "," + e.target + "," + e.verdict.case_label + "," +
           csv_number(e.verdict.left) + "," + csv_number(e.verdict.right) + "," +
           csv_number(e.verdict.ratio()) + "," + to_string(e.verdict.status) + "\n";
  }
  return out;
}

}  // namespace hardycone
