#pragma once

// Tail functions T(t) = μ{|f| >= t}: finite step lists and analytic callables,
// the canonical tail V[N], generalized left inverses (decreasing
// rearrangement) and the tail quasi-norm.

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orlicz/error.hpp"
#include "orlicz/numerics.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

/// A value/mass pair: the function equals `value` on a set of measure `mass`.
struct Piece {
  double value = 0;
  double mass = 0;
};

/// T(t) = level on (previous threshold, threshold]; 0 past the last threshold.
struct TailStep {
  double threshold = 0;
  double level = 0;

  friend bool operator==(const TailStep&, const TailStep&) = default;
};

class StepTail {
 public:
  StepTail() = default;

  /// Thresholds strictly increasing, levels strictly decreasing and positive.
  explicit StepTail(std::vector<TailStep> steps) : steps_(std::move(steps)) {
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      if (!(steps_[i].threshold > 0) || !std::isfinite(steps_[i].threshold) || !(steps_[i].level > 0))
        throw Error(ErrorKind::bad_parameter, "step tail needs positive finite thresholds and levels");
      if (i > 0 && (!(steps_[i].threshold > steps_[i - 1].threshold) || !(steps_[i].level < steps_[i - 1].level)))
        throw Error(ErrorKind::bad_parameter, "step tail must be non-increasing with sorted thresholds");
    }
  }

  double operator()(double t) const {
    if (!(t > 0)) return steps_.empty() ? 0.0 : steps_.front().level;
    auto it = std::lower_bound(steps_.begin(), steps_.end(), t,
                               [](const TailStep& s, double x) { return s.threshold < x; });
    return it == steps_.end() ? 0.0 : it->level;
  }

  const std::vector<TailStep>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }

  /// Jumps of the tail as value/mass pieces, largest value last.
  std::vector<Piece> pieces() const {
    std::vector<Piece> out;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      const double next = i + 1 < steps_.size() ? steps_[i + 1].level : 0.0;
      out.push_back({steps_[i].threshold, steps_[i].level - next});
    }
    return out;
  }

  friend bool operator==(const StepTail&, const StepTail&) = default;

 private:
  std::vector<TailStep> steps_;
};

/// A tail given by a callable. `breakpoints` lists points where the tail has
/// a kink or jump, so integrators can split there.
struct AnalyticTail {
  RealFn fn;
  std::vector<double> breakpoints;
};

class TailFunction {
 public:
  TailFunction() : rep_(StepTail{}) {}
  TailFunction(StepTail s) : rep_(std::move(s)) {}
  TailFunction(AnalyticTail a) : rep_(std::move(a)) {
    if (!std::get<AnalyticTail>(rep_).fn) throw Error(ErrorKind::bad_parameter, "analytic tail without callable");
  }

  double operator()(double t) const {
    if (auto s = std::get_if<StepTail>(&rep_)) return (*s)(t);
    return std::get<AnalyticTail>(rep_).fn(t);
  }

  bool is_step() const { return std::holds_alternative<StepTail>(rep_); }
  const StepTail& step() const { return std::get<StepTail>(rep_); }
  const AnalyticTail& analytic() const { return std::get<AnalyticTail>(rep_); }

  /// True only for the empty step tail; analytic tails are assumed non-zero.
  bool is_zero() const { return is_step() && step().empty(); }

  std::vector<double> breakpoints() const {
    if (is_step()) {
      std::vector<double> b;
      for (const auto& s : step().steps()) b.push_back(s.threshold);
      return b;
    }
    return analytic().breakpoints;
  }

 private:
  std::variant<StepTail, AnalyticTail> rep_;
};

/// Tail of c·f: t ↦ T(t/c) for c > 0.
inline TailFunction dilate(const TailFunction& tail, double c) {
  if (!(c > 0)) throw Error(ErrorKind::bad_parameter, "dilation factor must be positive");
  if (tail.is_step()) {
    std::vector<TailStep> s;
    for (const auto& st : tail.step().steps()) s.push_back({st.threshold * c, st.level});
    return StepTail(std::move(s));
  }
  auto fn = tail.analytic().fn;
  std::vector<double> b;
  for (double x : tail.analytic().breakpoints) b.push_back(x * c);
  return AnalyticTail{[fn, c](double t) { return fn(t / c); }, std::move(b)};
}

/// A measurable function known through its tail and the total mass μ(X).
struct TailRepFunction {
  TailFunction tail;
  double total_mass = 1;
};

inline void check_mass(double total_mass) {
  if (!(total_mass > 0) || std::isnan(total_mass))
    throw Error(ErrorKind::bad_parameter, "total mass must lie in (0, inf]");
}

/// Step function from value/mass pieces: T(t) = Σ_{v_j >= t} m_j.
inline TailRepFunction tail_of_step(const std::vector<Piece>& pieces, double total_mass = 1) {
  check_mass(total_mass);
  std::vector<Piece> ps;
  double sum = 0;
  for (const auto& p : pieces) {
    if (!(p.value >= 0) || !std::isfinite(p.value))
      throw Error(ErrorKind::bad_parameter, "piece values must be finite and non-negative");
    if (!(p.mass > 0) || !std::isfinite(p.mass)) throw Error(ErrorKind::bad_parameter, "piece masses must be positive");
    sum += p.mass;
    if (p.value > 0) ps.push_back(p);
  }
  if (sum > total_mass * (1 + 1e-12))
    throw Error(ErrorKind::mass_overflow,
                "pieces carry mass " + std::to_string(sum) + " > total mass " + std::to_string(total_mass));
  std::sort(ps.begin(), ps.end(), [](const Piece& a, const Piece& b) { return a.value > b.value; });

  // accumulate from the largest value down, then store ascending thresholds
  std::vector<TailStep> desc;
  double level = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    level += ps[i].mass;
    if (i + 1 < ps.size() && ps[i + 1].value == ps[i].value) continue;
    desc.push_back({ps[i].value, level});
  }
  std::reverse(desc.begin(), desc.end());
  for (auto& s : desc) s.level = std::min(s.level, total_mass);
  return {StepTail(std::move(desc)), total_mass};
}

/// Indicator of a set of measure a.
inline TailRepFunction indicator(double a, double total_mass = 1) { return tail_of_step({{1.0, a}}, total_mass); }

/// V[N](t) = min(μ(X), 1/N(t)).
inline TailFunction v_of_n(const YoungFunction& n, double total_mass) {
  check_mass(total_mass);
  std::vector<double> b;
  if (std::isfinite(total_mass)) b.push_back(n.inverse(1 / total_mass));
  return AnalyticTail{[n, total_mass](double t) {
                        const double nt = n(t);
                        if (nt == 0) return total_mass;
                        return std::min(total_mass, 1 / nt);
                      },
                      std::move(b)};
}

/// Analytic tail min(mass, t^{-p}).
inline TailFunction power_tail(double p, double total_mass) {
  check_mass(total_mass);
  if (!(p > 0)) throw Error(ErrorKind::bad_parameter, "power tail needs p > 0");
  std::vector<double> b;
  if (std::isfinite(total_mass)) b.push_back(std::pow(total_mass, -1 / p));
  return AnalyticTail{[p, total_mass](double t) { return std::min(total_mass, std::pow(t, -p)); }, std::move(b)};
}

/// Analytic tail min(mass, exp(-c t^q)).
inline TailFunction exp_tail(double c, double q, double total_mass) {
  check_mass(total_mass);
  if (!(c > 0) || !(q > 0)) throw Error(ErrorKind::bad_parameter, "exp tail needs c > 0 and q > 0");
  std::vector<double> b;
  if (std::isfinite(total_mass) && total_mass < 1) b.push_back(std::pow(-std::log(total_mass) / c, 1 / q));
  return AnalyticTail{[c, q, total_mass](double t) { return std::min(total_mass, std::exp(-c * std::pow(t, q))); },
                      std::move(b)};
}

/// inf{t > 0 : T(t) <= s}, i.e. the decreasing rearrangement at s.
inline double left_inverse(const TailFunction& tail, double s) {
  if (tail.is_step()) {
    double prev = 0;
    for (const auto& st : tail.step().steps()) {
      if (st.level <= s) return prev;
      prev = st.threshold;
    }
    return prev;
  }
  const double tiny = 1e-300;
  if (tail(tiny) <= s) return 0;
  double hi = 1;
  int guard = 0;
  while (tail(hi) > s) {
    hi *= 2;
    if (++guard > 2000) return inf;
  }
  double lo = hi / 2;
  while (lo > tiny && tail(lo) <= s) lo /= 2;
  const auto r = bisect_monotone([&](double t) { return tail(t) <= s; }, lo, hi, 1e-15);
  return r.hi;
}

// ---------------------------------------------------------------------------
// Tail quasi-norm

struct TailNormOptions {
  double rel_tol = 1e-13;
  double grid_lo = 1e-8;
  double grid_hi = 1e12;
  int per_decade = 40;
  double cap = 18446744073709551616.0;  // 2^64
};

namespace detail {

// Does T(t) <= θ(t/K) hold for every t > 0?
inline bool dominated(const TailFunction& tail, const TailFunction& theta, double k, const TailNormOptions& opt) {
  if (tail.is_step()) {
    // both sides non-increasing and left-continuous: right endpoints bind
    for (const auto& st : tail.step().steps())
      if (st.level > theta(st.threshold / k)) return false;
    return true;
  }
  const auto grid = log_grid(opt.grid_lo, opt.grid_hi, opt.per_decade);
  double worst = -inf;
  std::size_t at = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double tv = tail(grid[i]);
    if (tv == 0) continue;
    const double gap = tv - theta(grid[i] / k);
    if (gap > 0) return false;
    const double rel = gap / tv;
    if (rel > worst) {
      worst = rel;
      at = i;
    }
  }
  // past the grid ends: a tail with a flatter log-log slope than θ at the top
  // (or a steeper one at the bottom) eventually crosses every dilation
  auto slope = [](const TailFunction& f, double t) {
    constexpr double h = 0.1151292546497023;  // ln(10)/20
    const double a = f(t * std::exp(h)), b = f(t * std::exp(-h));
    if (!(a > 0) || !(b > 0)) return -inf;
    return (std::log(a) - std::log(b)) / (2 * h);
  };
  constexpr double margin = 1e-2;
  if (tail(grid.back()) > 0 && slope(tail, grid.back()) > slope(theta, grid.back() / k) + margin) return false;
  if (std::isfinite(tail(grid.front())) && slope(tail, grid.front()) < slope(theta, grid.front() / k) - margin &&
      std::isfinite(slope(theta, grid.front() / k)))
    return false;

  // refine around the tightest grid point
  if (worst > -inf) {
    double lo = grid[at > 0 ? at - 1 : 0], hi = grid[std::min(at + 1, grid.size() - 1)];
    for (int pass = 0; pass < 3; ++pass) {
      constexpr int n = 64;
      double best = -inf, best_t = lo;
      for (int i = 0; i <= n; ++i) {
        const double t = lo * std::pow(hi / lo, static_cast<double>(i) / n);
        const double tv = tail(t);
        if (tv == 0) continue;
        const double gap = tv - theta(t / k);
        if (gap > 0) return false;
        if (gap / tv > best) {
          best = gap / tv;
          best_t = t;
        }
      }
      const double step = std::pow(hi / lo, 1.0 / n);
      lo = best_t / step;
      hi = best_t * step;
    }
  }
  return true;
}

}  // namespace detail

struct TailNormResult {
  double value = 0;  // +inf when no K dominates
  int iterations = 0;
};

/// inf{K > 0 : T(t) <= θ(t/K) for all t > 0}. Feasibility is monotone in K,
/// so the infimum is bracketed by doubling/halving and then bisected.
inline TailNormResult tail_norm_detail(const TailFunction& tail, const TailFunction& theta,
                                       const TailNormOptions& opt = {}) {
  if (tail.is_zero()) return {0, 0};
  auto feasible = [&](double k) { return detail::dominated(tail, theta, k, opt); };
  double lo = 1, hi = 1;
  int iters = 0;
  if (feasible(1)) {
    while (feasible(lo)) {
      hi = lo;
      lo /= 2;
      if (++iters > 2200) return {0, iters};
    }
  } else {
    while (!feasible(hi)) {
      lo = hi;
      hi *= 2;
      ++iters;
      if (hi > opt.cap) return {inf, iters};
    }
  }
  const auto r = bisect_monotone(feasible, lo, hi, opt.rel_tol);
  return {r.hi, iters + r.iterations};
}

inline double tail_norm(const TailFunction& tail, const TailFunction& theta, const TailNormOptions& opt = {}) {
  return tail_norm_detail(tail, theta, opt).value;
}

}  // namespace orlicz
