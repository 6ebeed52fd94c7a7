#pragma once

// Strong/weak coincidence criterion and the exact embedding constant k₀[N].
//
// Every improper integral runs in the substituted form
//     Q(k) = ∫_{1/μ(X)}^∞ N(N^{-1}(w)/k) w^{-2} dw,
// which equals ∫_{y₀}^∞ N(y/k) |d(1/N(y))| with y₀ = N^{-1}(1/μ(X)).
// The criterion integral ∫ N(Ct) |dV[N](t)| is Q(1/C).

#include <cmath>
#include <limits>
#include <string_view>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/error.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/numerics.hpp"
#include "orlicz/tail.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

enum class Coincidence { coincident, non_coincident, inconclusive };

inline std::string_view to_string(Coincidence c) {
  switch (c) {
    case Coincidence::coincident: return "coincident";
    case Coincidence::non_coincident: return "non-coincident";
    case Coincidence::inconclusive: return "inconclusive";
  }
  return "?";
}

/// N^{-1}(1/μ(X)); 0 for infinite mass.
inline double y0(const YoungFunction& n, double total_mass) {
  check_mass(total_mass);
  if (std::isinf(total_mass)) return 0;
  return n.inverse(1 / total_mass);
}

inline FiniteOrDivergent q_of_k(const YoungFunction& n, double k, double total_mass = 1,
                                const QuadratureSpec& spec = {}) {
  if (!(k > 0)) throw Error(ErrorKind::bad_parameter, "Q(k) needs k > 0");
  check_mass(total_mass);
  const double lower = std::isinf(total_mass) ? 0.0 : 1 / total_mass;
  RealFn integrand = [&n, k](double w) { return n(n.inverse(w) / k) / (w * w); };
  return integrate(integrand, lower, inf, spec);
}

/// ∫_0^∞ N(C t) |dV[N](t)|.
inline FiniteOrDivergent criterion_integral(const YoungFunction& n, double c, double total_mass = 1,
                                            const QuadratureSpec& spec = {}) {
  if (!(c > 0)) throw Error(ErrorKind::bad_parameter, "criterion constant must be positive");
  return q_of_k(n, 1 / c, total_mass, spec);
}

inline std::vector<double> default_c_ladder() {
  std::vector<double> c;
  for (int j = 0; j <= 10; ++j) c.push_back(std::ldexp(1.0, -j));
  return c;
}

struct CriterionStep {
  double c = 0;
  Verdict verdict = Verdict::inconclusive;
  double value = 0;
};

struct CriterionResult {
  Coincidence verdict = Coincidence::inconclusive;
  std::optional<double> witness;       // largest C with a finite integral
  std::vector<CriterionStep> steps;    // one per tested C, in ladder order
  std::vector<DecadeRecord> evidence;  // ladder trace at the deciding C
};

/// Walks a decreasing ladder of C. Coincident at the first finite integral;
/// non-coincident only if every C diverges and the smallest C is conclusive.
inline CriterionResult j_criterion(const YoungFunction& n, double total_mass = 1,
                                   const std::vector<double>& c_ladder = default_c_ladder(),
                                   const QuadratureSpec& spec = {}) {
  if (c_ladder.empty()) throw Error(ErrorKind::bad_parameter, "criterion ladder is empty");
  for (std::size_t i = 0; i < c_ladder.size(); ++i) {
    if (!(c_ladder[i] > 0)) throw Error(ErrorKind::bad_parameter, "criterion ladder must be positive");
    if (i > 0 && !(c_ladder[i] < c_ladder[i - 1]))
      throw Error(ErrorKind::bad_parameter, "criterion ladder must be decreasing");
  }
  CriterionResult out;
  bool all_divergent = true;
  for (double c : c_ladder) {
    CriterionStep step{c, Verdict::inconclusive, 0};
    try {
      auto r = criterion_integral(n, c, total_mass, spec);
      step.value = r.value;
      step.verdict = r.is_finite() ? Verdict::finite : Verdict::divergent;
      out.evidence = std::move(r.evidence);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::inconclusive && e.kind() != ErrorKind::budget_exceeded) throw;
      step.value = std::numeric_limits<double>::quiet_NaN();
      out.evidence.clear();
    }
    out.steps.push_back(step);
    if (step.verdict == Verdict::finite) {
      out.verdict = Coincidence::coincident;
      out.witness = c;
      return out;
    }
    if (step.verdict != Verdict::divergent) all_divergent = false;
  }
  out.verdict = all_divergent ? Coincidence::non_coincident : Coincidence::inconclusive;
  return out;
}

struct K0Result {
  double value = 0;
  double q_at_value = 0;
  int iterations = 0;
};

/// Unique root of Q(k) = 1 on (1, ∞). The bracket starts at k = 2 and doubles
/// while Q(k) >= 1; if Q(2) < 1 the lower end is 1, where Q(1+) = ∞.
inline K0Result k0_detail(const YoungFunction& n, double total_mass = 1, const QuadratureSpec& spec = {},
                          double rel_tol = 1e-13) {
  const auto crit = j_criterion(n, total_mass, default_c_ladder(), spec);
  if (crit.verdict != Coincidence::coincident)
    throw Error(ErrorKind::divergent_modular, "criterion integral diverges for " + n.name() + "; k0 = +inf");

  auto below_one = [&](double k) {
    try {
      const auto q = q_of_k(n, k, total_mass, spec);
      return q.is_finite() && q.value < 1;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::inconclusive) return false;
      throw;
    }
  };
  double lo = 1, hi = 2;
  int iters = 0;
  while (!below_one(hi)) {
    lo = hi;
    hi *= 2;
    if (++iters > 64) throw Error(ErrorKind::divergent_modular, "Q(k) stays above 1 up to k = 2^64");
  }
  const auto r = bisect_monotone(below_one, lo, hi, rel_tol);
  K0Result out;
  out.value = 0.5 * (r.lo + r.hi);
  out.q_at_value = q_of_k(n, out.value, total_mass, spec).value;
  out.iterations = iters + r.iterations;
  if (!(out.value > 1)) throw Error(ErrorKind::internal, "computed k0 <= 1 for " + n.name());
  if (!(std::abs(out.q_at_value - 1) <= 1e-8))
    throw Error(ErrorKind::non_convergence, "Q(k0) = " + std::to_string(out.q_at_value) + " is not 1");
  return out;
}

inline double k0(const YoungFunction& n, double total_mass = 1, const QuadratureSpec& spec = {}) {
  return k0_detail(n, total_mass, spec).value;
}

/// The function g with T[g] = V[N]: weak norm 1 and strong norm k₀[N].
inline TailRepFunction extremal_function(const YoungFunction& n, double total_mass = 1) {
  check_mass(total_mass);
  return {v_of_n(n, total_mass), total_mass};
}

/// Known ground truth for the builtin families on finite measure spaces.
inline std::optional<Coincidence> analytic_verdict(const YoungFunction& n, double total_mass) {
  if (!std::isfinite(total_mass)) return std::nullopt;
  switch (n.family()) {
    case Family::power: return Coincidence::non_coincident;
    case Family::exp_m: return Coincidence::coincident;
    case Family::delta: return Coincidence::non_coincident;
    case Family::custom: break;
  }
  return std::nullopt;
}

struct QSample {
  double k = 0;
  Verdict verdict = Verdict::inconclusive;
  double value = 0;
};

struct EmbeddingReport {
  std::string young;
  Family family = Family::custom;
  double parameter = 0;
  double total_mass = 1;
  double t0 = 0;
  Coincidence verdict = Coincidence::inconclusive;
  Coincidence numeric_verdict = Coincidence::inconclusive;
  std::optional<Coincidence> analytic;
  bool classifier_agrees = true;
  std::optional<double> witness;
  std::optional<double> k0;
  std::optional<double> q_at_k0;
  std::vector<CriterionStep> criterion_steps;
  std::vector<QSample> q_trace;
  std::vector<DecadeRecord> evidence;
  std::vector<std::string> diagnostics;
  std::string sharpness;
};

inline std::vector<double> default_q_grid() { return {1.05, 1.1, 1.25, 1.5, 2, 3, 5, 10, 100}; }

inline EmbeddingReport embedding_report(const YoungFunction& n, double total_mass = 1, const QuadratureSpec& spec = {},
                                        const std::vector<double>& c_ladder = default_c_ladder()) {
  check_mass(total_mass);
  EmbeddingReport rep;
  rep.young = n.name();
  rep.family = n.family();
  rep.parameter = n.parameter();
  rep.total_mass = total_mass;
  rep.t0 = y0(n, total_mass);

  const auto crit = j_criterion(n, total_mass, c_ladder, spec);
  rep.numeric_verdict = crit.verdict;
  rep.witness = crit.witness;
  rep.criterion_steps = crit.steps;
  rep.evidence = crit.evidence;
  rep.analytic = analytic_verdict(n, total_mass);
  rep.verdict = rep.analytic.value_or(crit.verdict);
  rep.classifier_agrees = !rep.analytic || *rep.analytic == crit.verdict;
  if (!rep.classifier_agrees)
    rep.diagnostics.push_back("numeric classifier says " + std::string(to_string(crit.verdict)) +
                              ", known verdict for the family is " + std::string(to_string(*rep.analytic)));

  for (double k : default_q_grid()) {
    QSample s{k, Verdict::inconclusive, std::numeric_limits<double>::quiet_NaN()};
    try {
      const auto q = q_of_k(n, k, total_mass, spec);
      s.verdict = q.is_finite() ? Verdict::finite : Verdict::divergent;
      s.value = q.value;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::inconclusive && e.kind() != ErrorKind::budget_exceeded) throw;
    }
    rep.q_trace.push_back(s);
  }

  if (rep.verdict == Coincidence::coincident) {
    try {
      const auto r = k0_detail(n, total_mass, spec);
      rep.k0 = r.value;
      rep.q_at_k0 = r.q_at_value;
      rep.sharpness = "Y(N) = k0[N]: ||f||_s <= k0 ||f||_w, attained by the extremal function";
    } catch (const Error& e) {
      rep.diagnostics.push_back(std::string("k0 unavailable: ") + e.what());
    }
  }
  return rep;
}

}  // namespace orlicz
