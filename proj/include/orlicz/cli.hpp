#pragma once

// Command implementations behind the orlicz executable. Each returns the
// text to emit and the process exit code:
//   0 success, 1 input error, 2 divergent or infinite result (still emitted).

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

#include "orlicz/embedding.hpp"
#include "orlicz/error.hpp"
#include "orlicz/exp_family.hpp"
#include "orlicz/io.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/verify.hpp"
#include "orlicz/young.hpp"

namespace orlicz::cli {

enum ExitCode : int { ok = 0, input_error = 1, infinite_result = 2 };

struct CommandOutput {
  int exit_code = ok;
  std::string out;
  std::string err;
};

inline CommandOutput failure(const Error& e) {
  return {input_error, "", std::string("error: ") + e.what() + "\n"};
}

/// "strong", "weak", "both" or "lp:<p>".
struct NormKind {
  bool strong = false;
  bool weak = false;
  std::optional<double> lp;
};

inline NormKind parse_norm_kind(const std::string& s) {
  NormKind k;
  if (s == "strong") k.strong = true;
  else if (s == "weak") k.weak = true;
  else if (s == "both") k.strong = k.weak = true;
  else if (s.rfind("lp:", 0) == 0) {
    const std::string rest = s.substr(3);
    try {
      std::size_t used = 0;
      k.lp = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(rest);
    } catch (const std::exception&) {
      throw Error(ErrorKind::parse_error, "--kind: '" + s + "' has no numeric exponent");
    }
  } else {
    throw Error(ErrorKind::parse_error, "--kind: expected strong, weak, both or lp:<p>, got '" + s + "'");
  }
  return k;
}

namespace detail {

inline json norm_json(const NormResult& r) {
  return {{"value", num(r.value)},
          {"verdict", r.is_finite() ? "finite" : "infinite"},
          {"modular_at_value", num(r.modular_at_value)},
          {"bisection_iterations", r.bisection_iterations},
          {"quadrature_evaluations", r.quadrature_evaluations}};
}

inline std::string csv_row(const std::string& name, const NormResult& r) {
  return name + "," + csv_number(r.value) + "," + (r.is_finite() ? "finite" : "infinite") + "," +
         csv_number(r.modular_at_value) + "," + std::to_string(r.bisection_iterations) + "\n";
}

}  // namespace detail

/// `mass` is empty when not given on the command line.
inline CommandOutput cmd_norm(const std::string& young, const std::string& fn, const std::string& kind,
                              const std::string& mass, const std::string& format) {
  try {
    if (format != "json" && format != "csv")
      throw Error(ErrorKind::parse_error, "--out: expected json or csv, got '" + format + "'");
    const auto n = parse_young(young);
    const auto k = parse_norm_kind(kind);
    auto desc = parse_descriptor_text(fn);
    if (!mass.empty()) {
      const double m = parse_mass_text(mass, "--mass");
      if (desc.mass && *desc.mass != m)
        throw Error(ErrorKind::parse_error, "--mass disagrees with the descriptor's mass field");
      desc.mass = m;
    }
    const auto f = to_tail_rep(desc, n);

    bool infinite = false;
    json j;
    j["young"] = n.name();
    j["function"] = to_json(desc);
    j["mass"] = mass_to_json(f.total_mass);
    j["kind"] = kind;
    std::string csv = "norm,value,verdict,modular_at_value,iterations\n";

    if (k.strong) {
      const auto r = luxemburg_norm(n, f);
      infinite = infinite || !r.is_finite();
      j["strong"] = detail::norm_json(r);
      json trace = json::array();
      if (r.is_finite() && r.value > 0)
        for (double s : {0.5, 0.9, 1.0, 1.1, 2.0}) {
          const auto m = modular(n, f, s * r.value);
          trace.push_back({{"k", num(s * r.value)}, {"modular", num(m.is_finite() ? m.value : inf)}});
        }
      j["strong"]["modular_trace"] = trace;
      csv += detail::csv_row("strong", r);
    }
    if (k.weak) {
      const auto r = weak_norm(n, f);
      infinite = infinite || !r.is_finite();
      j["weak"] = detail::norm_json(r);
      csv += detail::csv_row("weak", r);
    }
    if (k.lp) {
      const auto r = lebesgue_norm(f, *k.lp);
      const double v = r.is_finite() ? r.value : inf;
      infinite = infinite || !std::isfinite(v);
      j["lp"] = {{"p", *k.lp}, {"value", num(v)}, {"verdict", std::isfinite(v) ? "finite" : "infinite"}};
      csv += "lp:" + csv_number(*k.lp) + "," + csv_number(v) + "," + (std::isfinite(v) ? "finite" : "infinite") +
             ",nan,0\n";
    }
    return {infinite ? infinite_result : ok, format == "json" ? j.dump(2) + "\n" : csv, ""};
  } catch (const Error& e) {
    return failure(e);
  }
}

/// Non-coincident spaces have k₀ = +inf, reported with exit code 2.
inline CommandOutput cmd_embed(const std::string& young, const std::string& mass) {
  try {
    const auto n = parse_young(young);
    const double m = mass.empty() ? 1.0 : parse_mass_text(mass, "--mass");
    const auto rep = embedding_report(n, m);
    const bool infinite = !rep.k0.has_value();
    return {infinite ? infinite_result : ok, to_json(rep).dump(2) + "\n", ""};
  } catch (const Error& e) {
    return failure(e);
  }
}

/// G(α) by series and quadrature; G is infinite for α >= 1.
inline CommandOutput cmd_gseries(double alpha) {
  if (std::isnan(alpha)) return {input_error, "", "error: --alpha is not a number\n"};
  try {
    json j;
    j["alpha"] = alpha;
    if (alpha >= 1) {
      j["series"] = "inf";
      j["quadrature"] = "inf";
      return {infinite_result, j.dump(2) + "\n", ""};
    }
    j["series"] = num(exp_family::g_series(alpha));
    j["quadrature"] = num(exp_family::g_quadrature(alpha));
    if (alpha > 0) j["lower_bound"] = num(exp_family::g_lower_bound(alpha));
    return {ok, j.dump(2) + "\n", ""};
  } catch (const Error& e) {
    return failure(e);
  }
}

inline CommandOutput cmd_beta0(double tol) {
  try {
    const double b = exp_family::beta0(tol);
    json j{{"beta0", num(b)}, {"tol", tol}, {"residual", num(exp_family::g_series(b) - 2)}};
    return {ok, j.dump(2) + "\n", ""};
  } catch (const Error& e) {
    return failure(e);
  }
}

/// Exit code 1 when any check fails.
inline CommandOutput cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& format) {
  try {
    if (format != "json" && format != "csv")
      throw Error(ErrorKind::parse_error, "--format: expected json or csv, got '" + format + "'");
    const auto rep = verify::run_suite(suite, seed);
    std::string text = format == "json" ? to_json(rep).dump(2) + "\n" : to_csv(rep);
    return {rep.failed() == 0 ? ok : input_error, std::move(text), ""};
  } catch (const Error& e) {
    return failure(e);
  }
}

}  // namespace orlicz::cli
