#pragma once

// JSON/CSV surfaces: function descriptors, embedding reports and verification
// reports.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "orlicz/embedding.hpp"
#include "orlicz/error.hpp"
#include "orlicz/tail.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Function descriptors

struct FunctionDescriptor {
  enum class Kind { step, indicator, analytic_tail, extremal };

  Kind kind = Kind::step;
  std::vector<Piece> pieces;             // step
  double a = 0;                          // indicator: measure of the set
  std::string family;                    // analytic-tail: "power" or "exp"
  std::map<std::string, double> params;  // analytic-tail parameters
  std::optional<double> mass;            // total mass, +inf allowed

  friend bool operator==(const FunctionDescriptor& x, const FunctionDescriptor& y) {
    if (x.kind != y.kind || x.a != y.a || x.family != y.family || x.params != y.params || x.mass != y.mass)
      return false;
    if (x.pieces.size() != y.pieces.size()) return false;
    for (std::size_t i = 0; i < x.pieces.size(); ++i)
      if (x.pieces[i].value != y.pieces[i].value || x.pieces[i].mass != y.pieces[i].mass) return false;
    return true;
  }
};

inline std::string_view to_string(FunctionDescriptor::Kind k) {
  switch (k) {
    case FunctionDescriptor::Kind::step: return "step";
    case FunctionDescriptor::Kind::indicator: return "indicator";
    case FunctionDescriptor::Kind::analytic_tail: return "analytic-tail";
    case FunctionDescriptor::Kind::extremal: return "extremal";
  }
  return "?";
}

/// Mass as JSON: a number, or the string "inf".
inline json mass_to_json(double m) { return std::isinf(m) ? json("inf") : json(m); }

inline double parse_mass_text(const std::string& s, const std::string& where) {
  if (s == "inf") return inf;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    if (!(v > 0)) throw Error(ErrorKind::parse_error, where + ": mass must be positive");
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorKind::parse_error, where + ": expected a positive number or \"inf\", got '" + s + "'");
  }
}

namespace detail {

inline void only_fields(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw Error(ErrorKind::parse_error, where + ": unknown field '" + it.key() + "'");
}

inline double number_field(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw Error(ErrorKind::parse_error, where + ": missing field '" + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) throw Error(ErrorKind::parse_error, where + "." + key + ": expected a number");
  return v.get<double>();
}

inline double mass_field(const json& v, const std::string& where) {
  if (v.is_string()) return parse_mass_text(v.get<std::string>(), where);
  if (!v.is_number()) throw Error(ErrorKind::parse_error, where + ": expected a number or \"inf\"");
  const double m = v.get<double>();
  if (!(m > 0)) throw Error(ErrorKind::parse_error, where + ": mass must be positive");
  return m;
}

}  // namespace detail

inline FunctionDescriptor parse_descriptor(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::parse_error, "descriptor: expected a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw Error(ErrorKind::parse_error, "descriptor: missing string field 'kind'");
  FunctionDescriptor d;
  const auto kind = j.at("kind").get<std::string>();
  if (j.contains("mass")) d.mass = detail::mass_field(j.at("mass"), "mass");

  if (kind == "step") {
    d.kind = FunctionDescriptor::Kind::step;
    detail::only_fields(j, {"kind", "pieces", "mass"}, "step descriptor");
    if (!j.contains("pieces") || !j.at("pieces").is_array())
      throw Error(ErrorKind::parse_error, "step descriptor: 'pieces' must be an array");
    const auto& arr = j.at("pieces");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "pieces[" + std::to_string(i) + "]";
      if (!arr[i].is_object()) throw Error(ErrorKind::parse_error, where + ": expected an object");
      detail::only_fields(arr[i], {"value", "mass"}, where);
      Piece p{detail::number_field(arr[i], "value", where), detail::number_field(arr[i], "mass", where)};
      if (!(p.value >= 0)) throw Error(ErrorKind::parse_error, where + ".value: must be non-negative");
      if (!(p.mass > 0)) throw Error(ErrorKind::parse_error, where + ".mass: must be positive");
      d.pieces.push_back(p);
    }
  } else if (kind == "indicator") {
    d.kind = FunctionDescriptor::Kind::indicator;
    detail::only_fields(j, {"kind", "a", "mass"}, "indicator descriptor");
    d.a = detail::number_field(j, "a", "indicator descriptor");
    if (!(d.a > 0)) throw Error(ErrorKind::parse_error, "indicator descriptor.a: must be positive");
  } else if (kind == "analytic-tail") {
    d.kind = FunctionDescriptor::Kind::analytic_tail;
    detail::only_fields(j, {"kind", "family", "params", "mass"}, "analytic-tail descriptor");
    if (!j.contains("family") || !j.at("family").is_string())
      throw Error(ErrorKind::parse_error, "analytic-tail descriptor: missing string field 'family'");
    d.family = j.at("family").get<std::string>();
    std::set<std::string> keys;
    if (d.family == "power")
      keys = {"p"};
    else if (d.family == "exp")
      keys = {"c", "q"};
    else
      throw Error(ErrorKind::parse_error, "analytic-tail descriptor.family: unknown family '" + d.family + "'");
    if (!j.contains("params") || !j.at("params").is_object())
      throw Error(ErrorKind::parse_error, "analytic-tail descriptor: 'params' must be an object");
    detail::only_fields(j.at("params"), keys, "params");
    for (const auto& k : keys) d.params[k] = detail::number_field(j.at("params"), k, "params");
  } else if (kind == "extremal") {
    d.kind = FunctionDescriptor::Kind::extremal;
    detail::only_fields(j, {"kind", "mass"}, "extremal descriptor");
  } else {
    throw Error(ErrorKind::parse_error, "descriptor.kind: unknown kind '" + kind + "'");
  }
  return d;
}

/// Inline JSON text or a path to a JSON file.
inline FunctionDescriptor parse_descriptor_text(const std::string& text) {
  std::string body = text;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') {
    std::ifstream in(text);
    if (!in) throw Error(ErrorKind::parse_error, "cannot open descriptor file '" + text + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return parse_descriptor(json::parse(body));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse_error, std::string("descriptor JSON: ") + e.what());
  }
}

inline json to_json(const FunctionDescriptor& d) {
  json j;
  j["kind"] = std::string(to_string(d.kind));
  switch (d.kind) {
    case FunctionDescriptor::Kind::step: {
      j["pieces"] = json::array();
      for (const auto& p : d.pieces) j["pieces"].push_back({{"value", p.value}, {"mass", p.mass}});
      break;
    }
    case FunctionDescriptor::Kind::indicator: j["a"] = d.a; break;
    case FunctionDescriptor::Kind::analytic_tail: {
      j["family"] = d.family;
      j["params"] = json::object();
      for (const auto& [k, v] : d.params) j["params"][k] = v;
      break;
    }
    case FunctionDescriptor::Kind::extremal: break;
  }
  if (d.mass) j["mass"] = mass_to_json(*d.mass);
  return j;
}

/// Builds the tail representation; `young` is needed for extremal functions.
inline TailRepFunction to_tail_rep(const FunctionDescriptor& d, const std::optional<YoungFunction>& young,
                                   double default_mass = 1) {
  const double mass = d.mass.value_or(default_mass);
  switch (d.kind) {
    case FunctionDescriptor::Kind::step: return tail_of_step(d.pieces, mass);
    case FunctionDescriptor::Kind::indicator:
      if (d.a > mass) throw Error(ErrorKind::mass_overflow, "indicator set larger than the total mass");
      return indicator(d.a, mass);
    case FunctionDescriptor::Kind::analytic_tail:
      if (d.family == "power") return {power_tail(d.params.at("p"), mass), mass};
      return {exp_tail(d.params.at("c"), d.params.at("q"), mass), mass};
    case FunctionDescriptor::Kind::extremal:
      if (!young) throw Error(ErrorKind::parse_error, "extremal descriptor needs a Young function");
      return extremal_function(*young, mass);
  }
  throw Error(ErrorKind::internal, "unhandled descriptor kind");
}

// ---------------------------------------------------------------------------
// Reports

/// JSON has no infinities; non-finite numbers are written as strings.
inline json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline json to_json(const DecadeRecord& r) {
  return {{"cutoff", num(r.cutoff)}, {"partial", num(r.partial)}, {"increment", num(r.increment)},
          {"slope", num(r.slope)}};
}

inline json to_json(const EmbeddingReport& r) {
  json j;
  j["young"] = r.young;
  j["family"] = std::string(to_string(r.family));
  j["parameter"] = num(r.parameter);
  j["total_mass"] = mass_to_json(r.total_mass);
  j["t0"] = num(r.t0);
  j["verdict"] = std::string(to_string(r.verdict));
  j["numeric_verdict"] = std::string(to_string(r.numeric_verdict));
  j["analytic_verdict"] = r.analytic ? json(std::string(to_string(*r.analytic))) : json(nullptr);
  j["classifier_agrees"] = r.classifier_agrees;
  j["witness_C"] = r.witness ? num(*r.witness) : json(nullptr);
  j["k0"] = r.k0 ? num(*r.k0) : json(nullptr);
  j["q_at_k0"] = r.q_at_k0 ? num(*r.q_at_k0) : json(nullptr);
  j["criterion_steps"] = json::array();
  for (const auto& s : r.criterion_steps)
    j["criterion_steps"].push_back({{"C", num(s.c)}, {"verdict", std::string(to_string(s.verdict))}, {"value", num(s.value)}});
  j["q_trace"] = json::array();
  for (const auto& s : r.q_trace)
    j["q_trace"].push_back({{"k", num(s.k)}, {"verdict", std::string(to_string(s.verdict))}, {"Q", num(s.value)}});
  j["evidence"] = json::array();
  for (const auto& e : r.evidence) j["evidence"].push_back(to_json(e));
  j["diagnostics"] = r.diagnostics;
  j["sharpness"] = r.sharpness;
  return j;
}

struct CheckRecord {
  std::string id;
  std::string anchor;
  double expected = 0;
  double computed = 0;
  double tol = 0;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;

  int passed() const {
    int n = 0;
    for (const auto& c : checks) n += c.pass ? 1 : 0;
    return n;
  }
  int failed() const { return static_cast<int>(checks.size()) - passed(); }
};

inline json to_json(const VerifyReport& r) {
  json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["checks"] = json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"id", c.id},
                           {"anchor", c.anchor},
                           {"expected", num(c.expected)},
                           {"computed", num(c.computed)},
                           {"tol", num(c.tol)},
                           {"pass", c.pass}});
  j["summary"] = {{"total", r.checks.size()}, {"passed", r.passed()}, {"failed", r.failed()}};
  return j;
}

inline std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string to_csv(const VerifyReport& r) {
  std::ostringstream os;
  os << "id,anchor,expected,computed,tol,pass\n";
  for (const auto& c : r.checks)
    os << csv_field(c.id) << ',' << csv_field(c.anchor) << ',' << csv_number(c.expected) << ','
       << csv_number(c.computed) << ',' << csv_number(c.tol) << ',' << (c.pass ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace orlicz
