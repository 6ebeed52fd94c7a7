#pragma once

// Quadrature on finite and semi-infinite intervals, bracketed root finding and
// the decade-ladder divergence classifier for improper integrals of
// non-negative integrands.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "orlicz/error.hpp"

namespace orlicz {

using RealFn = std::function<double(double)>;

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Decades 1e-12 .. 1e12; only cutoffs above the lower limit are used.
inline std::vector<double> default_cutoffs() {
  std::vector<double> c;
  for (int j = -12; j <= 12; ++j) c.push_back(std::pow(10.0, j));
  return c;
}

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_depth = 60;
  std::size_t max_panels = 20000;
  std::vector<double> cutoffs = default_cutoffs();
  double divergence_delta = 0.05;
  int persistence = 3;

  void validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0))
      throw Error(ErrorKind::bad_parameter, "quadrature tolerances must be positive");
    if (max_depth <= 0 || max_panels == 0)
      throw Error(ErrorKind::bad_parameter, "quadrature budget must be positive");
    if (cutoffs.empty())
      throw Error(ErrorKind::bad_parameter, "cutoff ladder is empty");
    for (std::size_t i = 1; i < cutoffs.size(); ++i)
      if (!(cutoffs[i] > cutoffs[i - 1]))
        throw Error(ErrorKind::bad_parameter, "cutoff ladder must be strictly increasing");
    if (!(divergence_delta > 0) || persistence < 1)
      throw Error(ErrorKind::bad_parameter, "divergence threshold must be positive");
  }
};

/// One rung of the semi-infinite ladder: running integral up to `cutoff`,
/// the contribution of the last decade, and the log-log slope of the
/// integrand at the cutoff.
struct DecadeRecord {
  double cutoff = 0;
  double partial = 0;
  double increment = 0;
  double slope = 0;
};

enum class Verdict { finite, divergent, inconclusive };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::finite: return "finite";
    case Verdict::divergent: return "divergent";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

/// Result of an improper integral. A divergent result carries value +inf and
/// the ladder trace that justified the verdict.
struct FiniteOrDivergent {
  enum class Tag { finite, divergent };

  Tag tag = Tag::finite;
  double value = 0;
  double error = 0;
  std::vector<DecadeRecord> evidence;
  std::size_t evaluations = 0;

  static FiniteOrDivergent finite(double v, double err = 0) {
    FiniteOrDivergent r;
    r.value = v;
    r.error = err;
    return r;
  }
  static FiniteOrDivergent divergent(std::vector<DecadeRecord> ev = {}) {
    FiniteOrDivergent r;
    r.tag = Tag::divergent;
    r.value = inf;
    r.evidence = std::move(ev);
    return r;
  }

  bool is_finite() const { return tag == Tag::finite; }
  bool is_divergent() const { return tag == Tag::divergent; }
};

/// Sum of two independent pieces of one integral.
inline FiniteOrDivergent operator+(const FiniteOrDivergent& x, const FiniteOrDivergent& y) {
  if (!x.is_finite() || !y.is_finite()) {
    auto r = FiniteOrDivergent::divergent(!x.is_finite() ? x.evidence : y.evidence);
    r.evaluations = x.evaluations + y.evaluations;
    return r;
  }
  auto r = FiniteOrDivergent::finite(x.value + y.value, x.error + y.error);
  r.evidence = x.evidence;
  r.evidence.insert(r.evidence.end(), y.evidence.begin(), y.evidence.end());
  r.evaluations = x.evaluations + y.evaluations;
  return r;
}

struct ClassifyResult {
  Verdict verdict = Verdict::inconclusive;
  double partial = 0;
  double tail = 0;
  double error = 0;
  std::vector<DecadeRecord> trace;
  std::size_t evaluations = 0;
};

namespace detail {

// Raised internally when the integrand returns +inf; turned into a divergent
// verdict by the callers.
struct InfiniteSample {};

class CheckedFn {
 public:
  explicit CheckedFn(const RealFn& f) : f_(f) {}

  double operator()(double x) const {
    ++count_;
    const double v = f_(x);
    if (std::isnan(v))
      throw Error(ErrorKind::non_evaluable, "integrand is NaN at x=" + std::to_string(x));
    if (v < 0)
      throw Error(ErrorKind::non_evaluable, "integrand is negative at x=" + std::to_string(x));
    if (std::isinf(v)) throw InfiniteSample{};
    return v;
  }

  std::size_t count() const { return count_; }

 private:
  const RealFn& f_;
  mutable std::size_t count_ = 0;
};

struct Panel {
  double a = 0, b = 0;
  double value = 0, error = 0, l1 = 0;
  int depth = 0;
};

// 21-point Gauss-Kronrod panel with the embedded 10-point Gauss error estimate.
template <class F>
Panel gk21(const F& f, double a, double b, int depth) {
  using gk = boost::math::quadrature::gauss_kronrod<double, 21>;
  using g = boost::math::quadrature::gauss<double, 10>;
  const auto& x = gk::abscissa();
  const auto& wk = gk::weights();
  const auto& wg = g::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double f0 = f(mid);
  double kron = f0 * wk[0];
  double gauss = 0;
  double l1 = std::abs(f0) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double fp = f(mid + half * x[i]);
    const double fm = f(mid - half * x[i]);
    kron += (fp + fm) * wk[i];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
    if (i % 2 == 1) gauss += (fp + fm) * wg[i / 2];
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kron * half;
  p.error = std::abs((kron - gauss) * half);
  p.l1 = l1 * std::abs(half);
  p.depth = depth;
  return p;
}

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

struct AdaptiveResult {
  double value = 0;
  double error = 0;
};

// Global adaptive bisection: always refines the panel with the largest error.
template <class F>
AdaptiveResult adaptive(const F& f, double a, double b, const QuadratureSpec& spec) {
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
  std::vector<Panel> done;
  queue.push(gk21(f, a, b, 0));
  std::size_t panels = 1;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  double value = queue.top().value;
  double error = queue.top().error;
  double l1 = queue.top().l1;
  while (true) {
    const double target = std::max({spec.abs_tol, spec.rel_tol * std::abs(value), 50 * eps * l1});
    if (error <= target) break;
    if (queue.empty()) break;
    Panel worst = queue.top();
    // Panels that cannot be split further are frozen at their estimate.
    if (worst.depth >= spec.max_depth || worst.b - worst.a <= 4 * eps * std::abs(worst.a)) {
      queue.pop();
      done.push_back(worst);
      if (queue.empty()) {
        if (error > target)
          throw Error(ErrorKind::budget_exceeded,
                      "subdivision depth exhausted on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
        break;
      }
      continue;
    }
    if (panels + 1 > spec.max_panels)
      throw Error(ErrorKind::budget_exceeded,
                  "panel budget exhausted on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
    queue.pop();
    const double m = 0.5 * (worst.a + worst.b);
    Panel left = gk21(f, worst.a, m, worst.depth + 1);
    Panel right = gk21(f, m, worst.b, worst.depth + 1);
    ++panels;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    queue.push(left);
    queue.push(right);
  }

  // Resum in panel order so the result does not depend on update history.
  std::vector<Panel> all = done;
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  AdaptiveResult r;
  for (const auto& p : all) {
    r.value += p.value;
    r.error += p.error;
  }
  return r;
}

inline double log_slope(const CheckedFn& f, double w) {
  const double h = std::log(10.0) / 20;
  const double up = f(w * std::exp(h));
  const double down = f(w * std::exp(-h));
  if (up == 0) return -inf;
  if (down == 0) return inf;
  return (std::log(up) - std::log(down)) / (2 * h);
}

// Finite piece integrated in the logarithmic variable, which flattens power laws.
inline AdaptiveResult log_panel(const CheckedFn& f, double lo, double hi, const QuadratureSpec& spec) {
  auto g = [&](double s) {
    const double w = std::exp(s);
    return f(w) * w;
  };
  return adaptive(g, std::log(lo), std::log(hi), spec);
}

inline std::vector<double> ladder_above(double a, const QuadratureSpec& spec) {
  std::vector<double> c;
  for (double x : spec.cutoffs)
    if (x > a * (1 + 1e-12)) c.push_back(x);
  const std::size_t need = static_cast<std::size_t>(spec.persistence) + 1;
  while (c.size() < need) c.push_back((c.empty() ? std::max(a, 1.0) : c.back()) * 10);
  return c;
}

inline ClassifyResult classify_impl(const RealFn& fn, double a, const QuadratureSpec& spec) {
  CheckedFn f(fn);
  ClassifyResult out;
  const auto cut = ladder_above(a, spec);
  double partial = 0, qerr = 0, lo = a;
  try {
    for (double c : cut) {
      const auto piece = log_panel(f, lo, c, spec);
      partial += piece.value;
      qerr += piece.error;
      out.trace.push_back({c, partial, piece.value, log_slope(f, c)});
      lo = c;
    }
  } catch (const InfiniteSample&) {
    out.verdict = Verdict::divergent;
    out.partial = inf;
    out.evaluations = f.count();
    return out;
  }
  out.evaluations = f.count();
  out.partial = partial;

  const auto& last = out.trace.back();
  const double threshold = -1 - spec.divergence_delta;
  auto extrapolate = [&](double slope) {
    if (!(slope < -1)) return 0.0;
    if (std::isinf(slope)) return 0.0;
    return f(last.cutoff) * last.cutoff / (-slope - 1);
  };

  // relative only: an absolute floor would call w^{-1} tails convergent once
  // their scale drops below it
  const bool cauchy = last.increment <= spec.rel_tol * partial;
  const std::size_t n = out.trace.size();
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(spec.persistence), n);
  bool all_above = true, all_below = true;
  for (std::size_t i = n - k; i < n; ++i) {
    if (out.trace[i].slope >= threshold)
      all_below = false;
    else
      all_above = false;
  }

  if (cauchy || all_below) {
    // Tail beyond the last cutoff from the local power law; the spread between
    // the last two slope estimates is booked as error.
    const double tail = extrapolate(last.slope);
    const double alt = n >= 2 ? extrapolate(out.trace[n - 2].slope) : tail;
    out.verdict = Verdict::finite;
    out.tail = tail;
    out.error = qerr + std::abs(tail - alt) + (cauchy ? last.increment : 0.0);
  } else if (all_above) {
    out.verdict = Verdict::divergent;
  } else {
    out.verdict = Verdict::inconclusive;
  }
  out.evaluations = f.count();
  return out;
}

inline FiniteOrDivergent upper_tail(const RealFn& f, double a, const QuadratureSpec& spec) {
  auto c = classify_impl(f, a, spec);
  if (c.verdict == Verdict::inconclusive)
    throw Error(ErrorKind::inconclusive,
                "log-log slope oscillates across -1-delta near w=" +
                    std::to_string(c.trace.empty() ? a : c.trace.back().cutoff));
  if (c.verdict == Verdict::divergent) {
    auto r = FiniteOrDivergent::divergent(std::move(c.trace));
    r.evaluations = c.evaluations;
    return r;
  }
  auto r = FiniteOrDivergent::finite(c.partial + c.tail, c.error);
  r.evidence = std::move(c.trace);
  r.evaluations = c.evaluations;
  return r;
}

}  // namespace detail

/// Classifies ∫_a^∞ f by running partial integrals over the decade ladder.
/// Divergent when the last decade has not Cauchy-converged and the log-log
/// slope stays at or above -1-delta over the last `persistence` cutoffs;
/// inconclusive when the slope straddles the threshold.
inline ClassifyResult divergence_classify(const RealFn& f, double a, const QuadratureSpec& spec = {}) {
  spec.validate();
  if (!(a > 0)) throw Error(ErrorKind::bad_parameter, "classifier needs a positive lower limit");
  return detail::classify_impl(f, a, spec);
}

/// ∫_a^b f for a non-negative integrand. `b` may be +inf. On a finite
/// interval, `left_singularity` = α announces f ~ (x-a)^{-α} and switches to
/// x = a + s^{1/(1-α)}, which cancels the singular factor exactly.
/// With a = 0 and b = inf the origin is classified too, through t = 1/v.
inline FiniteOrDivergent integrate(const RealFn& f, double a, double b, const QuadratureSpec& spec = {},
                                   double left_singularity = 0) {
  spec.validate();
  if (std::isnan(a) || std::isnan(b) || !(b >= a))
    throw Error(ErrorKind::bad_parameter, "integration limits must satisfy a <= b");
  if (a == b) return FiniteOrDivergent::finite(0);
  if (!(left_singularity < 1))
    throw Error(ErrorKind::bad_parameter, "endpoint singularity exponent must be < 1");

  if (std::isfinite(b)) {
    detail::CheckedFn cf(f);
    try {
      detail::AdaptiveResult r;
      if (left_singularity != 0) {
        const double p = 1 / (1 - left_singularity);
        // Below s_min the substituted integrand is flat; s^p would underflow.
        const double s_min = std::pow(1e-280, 1 / p);
        auto g = [&](double s) {
          s = std::max(s, s_min);
          const double sp = std::pow(s, p);
          return cf(a + sp) * p * sp / s;
        };
        r = detail::adaptive(g, 0, std::pow(b - a, 1 - left_singularity), spec);
      } else {
        r = detail::adaptive(cf, a, b, spec);
      }
      auto out = FiniteOrDivergent::finite(r.value, r.error);
      out.evaluations = cf.count();
      return out;
    } catch (const detail::InfiniteSample&) {
      return FiniteOrDivergent::divergent();
    }
  }

  if (a > 0) return detail::upper_tail(f, a, spec);

  // [0, 1] becomes [1, inf) under t = 1/v, so both ends share the classifier.
  RealFn mirrored = [&f](double v) { return f(1 / v) / (v * v); };
  auto lower = detail::upper_tail(mirrored, 1, spec);
  if (!lower.is_finite()) return lower;
  return lower + detail::upper_tail(f, 1, spec);
}

/// Root of a continuous g on [lo, hi] with a sign change; TOMS 748 iteration
/// until the bracket is no wider than `tol`.
inline double find_root(const RealFn& g, double lo, double hi, double tol, int max_iter = 200) {
  if (!(lo < hi)) std::swap(lo, hi);
  if (!(tol > 0)) throw Error(ErrorKind::bad_parameter, "root tolerance must be positive");
  const double flo = g(lo);
  const double fhi = g(hi);
  if (std::isnan(flo) || std::isnan(fhi))
    throw Error(ErrorKind::non_evaluable, "root function is NaN at bracket end");
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo < 0) == (fhi < 0))
    throw Error(ErrorKind::no_sign_change, "g has the same sign at " + std::to_string(lo) + " and " +
                                               std::to_string(hi));
  boost::uintmax_t iters = static_cast<boost::uintmax_t>(max_iter);
  auto within = [tol](double x, double y) { return std::abs(y - x) <= tol; };
  const auto br = boost::math::tools::toms748_solve(g, lo, hi, flo, fhi, within, iters);
  if (iters >= static_cast<boost::uintmax_t>(max_iter) && !within(br.first, br.second))
    throw Error(ErrorKind::non_convergence, "root bracket did not shrink below tolerance");
  return 0.5 * (br.first + br.second);
}

struct BisectResult {
  double lo = 0;
  double hi = 0;
  int iterations = 0;
};

/// Shrinks [lo, hi] around the switch point of a monotone predicate with
/// pred(lo) == false and pred(hi) == true, to relative width `rel_tol`.
template <class Pred>
BisectResult bisect_monotone(const Pred& pred, double lo, double hi, double rel_tol, int max_iter = 400) {
  BisectResult r{lo, hi, 0};
  while (r.iterations < max_iter && r.hi - r.lo > rel_tol * std::abs(r.hi)) {
    const double mid = 0.5 * (r.lo + r.hi);
    if (mid <= r.lo || mid >= r.hi) break;
    if (pred(mid))
      r.hi = mid;
    else
      r.lo = mid;
    ++r.iterations;
  }
  return r;
}

}  // namespace orlicz
