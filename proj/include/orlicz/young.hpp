#pragma once

// Young-Orlicz functions N(u): the three builtin families and user-supplied
// custom functions, plus report-only validation and a Δ₂ diagnostic.

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/error.hpp"
#include "orlicz/numerics.hpp"

namespace orlicz {

enum class Family { power, exp_m, delta, custom };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::power: return "power";
    case Family::exp_m: return "exp_m";
    case Family::delta: return "delta";
    case Family::custom: return "custom";
  }
  return "?";
}

/// N is evaluated on |u|, so evenness holds by construction. Builtins:
///   power(p)  N(u) = |u|^p,                      p > 1
///   exp_m(m)  N(u) = exp(|u|^m / m) - 1,         m > 0
///   delta(Δ)  N(u) = exp(ln(1 + |u|)^Δ) - 1,     Δ > 1
/// Custom functions must bring their own inverse.
/// Shortest-round-trip-safe decimal text for parameters and ids.
inline std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

class YoungFunction {
 public:
  struct Custom {
    RealFn eval;
    RealFn inverse;
    RealFn derivative;  // optional
    std::string name = "custom";
  };

  static YoungFunction power(double p) {
    if (!(p > 1) || !std::isfinite(p))
      throw Error(ErrorKind::bad_parameter, "power family needs p > 1, got " + num(p));
    return YoungFunction(Family::power, p);
  }
  static YoungFunction exp_m(double m) {
    if (!(m > 0) || !std::isfinite(m))
      throw Error(ErrorKind::bad_parameter, "exp_m family needs m > 0, got " + num(m));
    return YoungFunction(Family::exp_m, m);
  }
  static YoungFunction delta(double d) {
    if (!(d > 1) || !std::isfinite(d))
      throw Error(ErrorKind::bad_parameter, "delta family needs Delta > 1, got " + num(d));
    return YoungFunction(Family::delta, d);
  }
  static YoungFunction custom(Custom c) {
    if (!c.eval || !c.inverse)
      throw Error(ErrorKind::bad_parameter, "custom Young function needs an evaluator and an inverse");
    YoungFunction y(Family::custom, 0);
    y.custom_ = std::make_shared<const Custom>(std::move(c));
    return y;
  }

  Family family() const { return family_; }
  double parameter() const { return param_; }

  /// "power:2", "exp_m:1.5", ... ; custom functions report their own name.
  std::string name() const {
    if (family_ == Family::custom) return custom_->name;
    return std::string(to_string(family_)) + ":" + num(param_);
  }

  double operator()(double u) const {
    const double a = std::abs(u);
    switch (family_) {
      case Family::power: return std::pow(a, param_);
      case Family::exp_m: return std::expm1(std::pow(a, param_) / param_);
      case Family::delta: return std::expm1(std::pow(std::log1p(a), param_));
      case Family::custom: return custom_->eval(a);
    }
    return 0;
  }

  /// Inverse on w >= 0.
  double inverse(double w) const {
    switch (family_) {
      case Family::power: return std::pow(w, 1 / param_);
      case Family::exp_m: return std::pow(param_ * std::log1p(w), 1 / param_);
      case Family::delta: return std::expm1(std::pow(std::log1p(w), 1 / param_));
      case Family::custom: return custom_->inverse(w);
    }
    return 0;
  }

  /// N'(u) for u >= 0; custom functions without a derivative fall back to a
  /// central difference with step u·1e-6.
  double derivative(double u) const {
    const double a = std::abs(u);
    switch (family_) {
      case Family::power: return param_ * std::pow(a, param_ - 1);
      case Family::exp_m: {
        if (a == 0) return param_ > 1 ? 0.0 : (param_ == 1 ? 1.0 : inf);
        return std::pow(a, param_ - 1) * std::exp(std::pow(a, param_) / param_);
      }
      case Family::delta: {
        const double l = std::log1p(a);
        if (l == 0) return 0;
        return std::exp(std::pow(l, param_)) * param_ * std::pow(l, param_ - 1) / (1 + a);
      }
      case Family::custom: {
        if (custom_->derivative) return custom_->derivative(a);
        if (a == 0) {
          const double h = 1e-8;
          return (custom_->eval(h) - custom_->eval(0)) / h;
        }
        const double h = a * 1e-6;
        return (custom_->eval(a + h) - custom_->eval(a - h)) / (2 * h);
      }
    }
    return 0;
  }

  bool is_builtin() const { return family_ != Family::custom; }

 private:
  YoungFunction(Family f, double p) : family_(f), param_(p) {}

  static std::string num(double x) { return format_number(x); }

  Family family_;
  double param_;
  std::shared_ptr<const Custom> custom_;
};

/// Builtin family by tag; BadParameter for out-of-range parameters.
inline YoungFunction make_family(Family tag, double parameter) {
  switch (tag) {
    case Family::power: return YoungFunction::power(parameter);
    case Family::exp_m: return YoungFunction::exp_m(parameter);
    case Family::delta: return YoungFunction::delta(parameter);
    case Family::custom: break;
  }
  throw Error(ErrorKind::bad_parameter, "custom functions are built with YoungFunction::custom");
}

/// Parses "power:2", "exp_m:1.5", "delta:2".
inline YoungFunction parse_young(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw Error(ErrorKind::parse_error, "young spec '" + text + "' must look like family:parameter");
  const std::string tag = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  double p = 0;
  try {
    std::size_t used = 0;
    p = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(rest);
  } catch (const std::exception&) {
    throw Error(ErrorKind::parse_error, "young spec '" + text + "': parameter is not a number");
  }
  if (tag == "power") return YoungFunction::power(p);
  if (tag == "exp_m") return YoungFunction::exp_m(p);
  if (tag == "delta") return YoungFunction::delta(p);
  throw Error(ErrorKind::parse_error, "young spec '" + text + "': unknown family '" + tag + "'");
}

// ---------------------------------------------------------------------------
// Validation

struct YoungViolation {
  std::string check;  // convexity | monotonicity | small_ratio | large_ratio | inverse
  double u = 0;
  std::string detail;
};

struct YoungReport {
  std::vector<YoungViolation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& check) const {
    for (const auto& v : violations)
      if (v.check == check) return true;
    return false;
  }
};

/// Log-spaced grid from lo to hi with `per_decade` points per decade.
inline std::vector<double> log_grid(double lo, double hi, int per_decade = 10) {
  std::vector<double> g;
  const double l0 = std::log10(lo), l1 = std::log10(hi);
  const int n = std::max(1, static_cast<int>(std::ceil((l1 - l0) * per_decade)));
  for (int i = 0; i <= n; ++i) g.push_back(std::pow(10.0, l0 + (l1 - l0) * i / n));
  return g;
}

/// Report-only check of the Young-Orlicz axioms on a positive grid:
/// midpoint convexity, strict monotonicity, N(u)/u small at the bottom of the
/// grid and large at the top, and N(N^{-1}(w)) = w.
inline YoungReport validate_young(const YoungFunction& n, const std::vector<double>& grid,
                                  double small_ratio = 1e-2, double large_ratio = 1e2) {
  if (grid.empty()) throw Error(ErrorKind::bad_parameter, "validation grid is empty");
  for (double u : grid)
    if (!(u > 0)) throw Error(ErrorKind::bad_parameter, "validation grid must be positive");

  YoungReport rep;
  auto add = [&](const char* check, double u, std::string d) { rep.violations.push_back({check, u, std::move(d)}); };
  constexpr double slack = 1e-12;

  if (n(0.0) != 0) add("zero", 0, "N(0) != 0");

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double u = grid[i];
    const double nu = n(u);
    if (!std::isfinite(nu)) continue;
    if (i > 0) {
      const double prev = n(grid[i - 1]);
      if (!(nu > prev)) add("monotonicity", u, "N not strictly increasing");
      // midpoint convexity on the pair and against the origin
      const double a = grid[i - 1];
      const double mid = n(0.5 * (a + u));
      if (mid > 0.5 * (prev + nu) * (1 + slack)) add("convexity", u, "midpoint above chord");
    }
    const double m0 = n(0.5 * u);
    if (m0 > 0.5 * nu * (1 + slack)) add("convexity", u, "midpoint with origin above chord");

    const double back = n(n.inverse(nu));
    if (nu > 0 && std::abs(back - nu) > 1e-10 * nu) add("inverse", u, "N(N^-1(w)) != w");
  }

  auto ratio = [&](double u) { return n(u) / u; };
  if (grid.size() >= 2) {
    const double r0 = ratio(grid[0]), r1 = ratio(grid[1]);
    if (!(r0 <= small_ratio) || !(r0 < r1)) add("small_ratio", grid[0], "N(u)/u does not tend to 0");
    const double rn = ratio(grid.back()), rp = ratio(grid[grid.size() - 2]);
    if (!(rn >= large_ratio) || !(rn > rp || std::isinf(rn))) add("large_ratio", grid.back(), "N(u)/u does not tend to infinity");
  }
  return rep;
}

struct Delta2Estimate {
  double sup = 0;
  bool unbounded = false;
};

/// sup of N(2u)/N(u) over the grid; unbounded when the ratio keeps growing
/// (by more than 1%) across the top two decades, or overflows.
inline Delta2Estimate delta2_estimate(const YoungFunction& n, const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorKind::bad_parameter, "delta2 grid is empty");
  Delta2Estimate est;
  std::vector<std::pair<double, double>> ratios;
  for (double u : grid) {
    if (!(u > 0)) throw Error(ErrorKind::bad_parameter, "delta2 grid must be positive");
    const double lo = n(u), hi = n(2 * u);
    if (!std::isfinite(lo)) break;
    if (!(lo > 0)) continue;
    if (!std::isfinite(hi)) {
      est.unbounded = true;
      est.sup = inf;
      return est;
    }
    ratios.emplace_back(u, hi / lo);
    est.sup = std::max(est.sup, hi / lo);
  }
  if (ratios.size() >= 2) {
    const double top = ratios.back().first;
    std::vector<double> tail;
    for (const auto& [u, r] : ratios)
      if (u >= top / 100) tail.push_back(r);
    bool increasing = tail.size() >= 2;
    for (std::size_t i = 1; i < tail.size(); ++i)
      if (!(tail[i] >= tail[i - 1])) increasing = false;
    if (increasing && tail.back() > tail.front() * 1.01) {
      est.unbounded = true;
      est.sup = inf;
    }
  }
  return est;
}

}  // namespace orlicz
