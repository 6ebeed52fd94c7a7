#pragma once

// Modular, strong (Luxemburg) norm, weak Orlicz norm, Lebesgue norms and the
// monotone coupling check, all computed from the tail of the function.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "orlicz/error.hpp"
#include "orlicz/numerics.hpp"
#include "orlicz/tail.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct NormResult {
  double value = 0;          // +inf for functions outside the space
  double modular_at_value = 0;
  int bisection_iterations = 0;
  std::size_t quadrature_evaluations = 0;
  double cap = 0;            // largest scale tried when the value is infinite

  bool is_finite() const { return std::isfinite(value); }
};

namespace detail {

// ∫ over (0, ∞) split at the tail's breakpoints; the last piece runs the
// semi-infinite ladder, and without breakpoints both ends are classified.
inline FiniteOrDivergent integrate_over_tail(const RealFn& integrand, std::vector<double> breaks,
                                             const QuadratureSpec& spec, double left_singularity = 0) {
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [](double b) { return !(b > 0) || !std::isfinite(b); }),
               breaks.end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  if (breaks.empty()) return integrate(integrand, 0, inf, spec);

  auto total = integrate(integrand, 0, breaks.front(), spec, left_singularity);
  for (std::size_t i = 1; i < breaks.size() && total.is_finite(); ++i)
    total = total + integrate(integrand, breaks[i - 1], breaks[i], spec);
  if (!total.is_finite()) return total;
  return total + integrate(integrand, breaks.back(), inf, spec);
}

inline double origin_singularity(const YoungFunction& n) {
  if (n.family() == Family::exp_m && n.parameter() < 1) return 1 - n.parameter();
  return 0;
}

}  // namespace detail

/// ∫_X N(|f|/k) dμ = ∫_0^∞ T(t) dN(t/k).
/// Step tails are summed exactly over their constancy intervals; analytic
/// tails go through the quadrature kernel with N' (analytic for builtins).
inline FiniteOrDivergent modular(const YoungFunction& n, const TailRepFunction& f, double k,
                                 const QuadratureSpec& spec = {}) {
  if (!(k > 0)) throw Error(ErrorKind::bad_parameter, "modular needs k > 0");
  const auto& tail = f.tail;
  if (tail.is_step()) {
    double sum = 0, prev_n = 0;
    for (const auto& st : tail.step().steps()) {
      const double cur = n(st.threshold / k);
      sum += st.level * (cur - prev_n);
      prev_n = cur;
    }
    if (!std::isfinite(sum)) return FiniteOrDivergent::divergent();
    return FiniteOrDivergent::finite(sum);
  }
  RealFn integrand = [&n, &tail, k](double t) {
    const double tv = tail(t);
    if (tv == 0) return 0.0;
    const double d = n.derivative(t / k);
    if (d == 0) return 0.0;
    return tv * d / k;
  };
  return detail::integrate_over_tail(integrand, tail.breakpoints(), spec, detail::origin_singularity(n));
}

/// inf{k > 0 : modular(k) <= 1}, by bisection on k. The upper bracket doubles
/// from 1 up to 2^64; if the modular is still divergent there the norm is +inf.
inline NormResult luxemburg_norm(const YoungFunction& n, const TailRepFunction& f, const QuadratureSpec& spec = {},
                                 double rel_tol = 1e-13) {
  NormResult out;
  if (f.tail.is_zero()) return out;

  std::size_t evals = 0;
  auto mod = [&](double k) {
    auto m = modular(n, f, k, spec);
    evals += m.evaluations;
    return m;
  };
  auto ok = [&](double k) {
    const auto m = mod(k);
    return m.is_finite() && m.value <= 1;
  };

  constexpr double cap = 18446744073709551616.0;  // 2^64
  double lo = 1, hi = 1;
  int iters = 0;
  if (ok(1)) {
    lo = 0.5;
    while (ok(lo)) {
      hi = lo;
      lo /= 2;
      if (++iters > 2000 || lo == 0) break;
    }
  } else {
    while (!ok(hi)) {
      lo = hi;
      hi *= 2;
      ++iters;
      if (hi > cap) {
        out.value = inf;
        out.modular_at_value = inf;
        out.cap = cap;
        out.bisection_iterations = iters;
        out.quadrature_evaluations = evals;
        return out;
      }
    }
  }
  const auto r = bisect_monotone(ok, lo, hi, rel_tol);
  out.value = r.hi;
  out.modular_at_value = mod(r.hi).value;
  out.bisection_iterations = iters + r.iterations;
  out.quadrature_evaluations = evals;
  return out;
}

/// Weak Orlicz norm: tail quasi-norm of T[f] against V[N].
inline NormResult weak_norm(const YoungFunction& n, const TailRepFunction& f, const TailNormOptions& opt = {}) {
  NormResult out;
  const auto r = tail_norm_detail(f.tail, v_of_n(n, f.total_mass), opt);
  out.value = r.value;
  out.bisection_iterations = r.iterations;
  if (std::isfinite(r.value) && r.value > 0) {
    try {
      out.modular_at_value = modular(n, f, r.value).value;
    } catch (const Error&) {
      out.modular_at_value = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return out;
}

/// (∫|f|^p dμ)^{1/p} = (p ∫_0^∞ t^{p-1} T(t) dt)^{1/p}.
inline FiniteOrDivergent lebesgue_norm(const TailRepFunction& f, double p, const QuadratureSpec& spec = {}) {
  if (!(p >= 1)) throw Error(ErrorKind::bad_parameter, "Lebesgue exponent must be >= 1");
  const auto& tail = f.tail;
  if (tail.is_step()) {
    double sum = 0, prev = 0;
    for (const auto& st : tail.step().steps()) {
      const double cur = std::pow(st.threshold, p);
      sum += st.level * (cur - prev);
      prev = cur;
    }
    if (!std::isfinite(sum)) return FiniteOrDivergent::divergent();
    return FiniteOrDivergent::finite(std::pow(sum, 1 / p));
  }
  RealFn integrand = [&tail, p](double t) {
    const double tv = tail(t);
    if (tv == 0) return 0.0;
    return p * std::pow(t, p - 1) * tv;
  };
  auto r = detail::integrate_over_tail(integrand, tail.breakpoints(), spec);
  if (r.is_finite()) {
    r.error = r.value > 0 ? std::pow(r.value, 1 / p) / p * r.error / r.value : 0;
    r.value = std::pow(r.value, 1 / p);
  }
  return r;
}

struct CouplingReport {
  double modular_f = 0;
  double modular_g = 0;
  bool modular_ordered = false;       // modular(f) <= modular(g)
  bool rearrangement_ordered = false; // f*(s) <= g*(s) on a grid of s
  bool holds() const { return modular_ordered && rearrangement_ordered; }
};

/// T[f] <= T[g] pointwise implies ∫N(f) <= ∫N(g). Checks the premise on the
/// joint breakpoint set (plus a log grid for analytic tails), then compares
/// the modulars at k = 1 and the decreasing rearrangements.
inline CouplingReport coupling_check(const YoungFunction& n, const TailRepFunction& f, const TailRepFunction& g,
                                     const QuadratureSpec& spec = {}) {
  std::vector<double> pts = f.tail.breakpoints();
  const auto gb = g.tail.breakpoints();
  pts.insert(pts.end(), gb.begin(), gb.end());
  if (!f.tail.is_step() || !g.tail.is_step()) {
    const auto grid = log_grid(1e-6, 1e8, 20);
    pts.insert(pts.end(), grid.begin(), grid.end());
  }
  std::sort(pts.begin(), pts.end());
  for (double t : pts) {
    if (!(t > 0)) continue;
    // level sums of equal masses may differ in the last bits
    if (f.tail(t) > g.tail(t) * (1 + 1e-12))
      throw Error(ErrorKind::not_dominated, "T[f] exceeds T[g] at t=" + std::to_string(t));
  }

  CouplingReport rep;
  const auto mf = modular(n, f, 1, spec);
  const auto mg = modular(n, g, 1, spec);
  rep.modular_f = mf.value;
  rep.modular_g = mg.value;
  rep.modular_ordered = !mg.is_finite() || (mf.is_finite() && mf.value <= mg.value * (1 + 1e-12));

  const double mass = std::min(f.total_mass, g.total_mass);
  const double top = std::isfinite(mass) ? mass : 1e6;
  rep.rearrangement_ordered = true;
  constexpr int n_s = 64;
  for (int i = 1; i < n_s; ++i) {
    const double s = top * i / n_s;
    if (left_inverse(f.tail, s) > left_inverse(g.tail, s) * (1 + 1e-12)) rep.rearrangement_ordered = false;
  }
  return rep;
}

}  // namespace orlicz
