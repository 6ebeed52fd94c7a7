#pragma once

// Closed forms for N(u) = exp(|u|^m/m) - 1. With θ = k^{-m},
//     Q_m(k) = G(θ) - 1,   G(α) = ∫_0^{1/2} (1-z)^{-2} z^{-α} dz,
// so k₀ = β₀^{-1/m} where G(β₀) = 2.

#include <cmath>
#include <utility>

#include "orlicz/error.hpp"
#include "orlicz/numerics.hpp"

namespace orlicz::exp_family {

struct GSeriesConfig {
  double tolerance = 1e-14;
  int max_terms = 10000;
};

/// G(α) = Σ_{n>=0} (n+1) 2^{α-n-1} / (n+1-α), α < 1. Terms are positive with
/// ratio tending to 1/2; summation stops once a term drops below
/// tolerance·sum, leaving a remainder of at most twice that term.
inline double g_series(double alpha, const GSeriesConfig& cfg = {}) {
  if (!(alpha < 1)) throw Error(ErrorKind::bad_alpha, "G(alpha) needs alpha < 1");
  if (!(cfg.tolerance > 0)) throw Error(ErrorKind::bad_parameter, "series tolerance must be positive");
  double sum = 0;
  double scale = std::exp2(alpha - 1);  // 2^{α-n-1}
  for (int n = 0; n < cfg.max_terms; ++n) {
    const double term = (n + 1) * scale / (n + 1 - alpha);
    sum += term;
    if (term < cfg.tolerance * sum) return sum;
    scale *= 0.5;
  }
  throw Error(ErrorKind::non_convergence, "G series did not reach tolerance");
}

/// G(α) by quadrature, cancelling the z^{-α} factor at the origin by substitution.
inline double g_quadrature(double alpha, const QuadratureSpec& spec = {}) {
  if (!(alpha < 1)) throw Error(ErrorKind::bad_alpha, "G(alpha) needs alpha < 1");
  RealFn f = [alpha](double z) { return std::pow(z, -alpha) / ((1 - z) * (1 - z)); };
  return integrate(f, 0, 0.5, spec, alpha).value;
}

/// 2^{α-1}/(1-α), a strict lower bound for G on (0, 1).
inline double g_lower_bound(double alpha) { return std::exp2(alpha - 1) / (1 - alpha); }

/// Root of G(β) = 2 on the fixed bracket (0.3, 0.6).
inline double beta0(double tol = 1e-10) {
  if (!(tol > 0)) throw Error(ErrorKind::bad_parameter, "beta0 tolerance must be positive");
  constexpr double lo = 0.3, hi = 0.6;
  if (!(g_series(lo) < 2 && g_series(hi) > 2))
    throw Error(ErrorKind::internal, "G(0.3) < 2 < G(0.6) does not hold");
  const GSeriesConfig cfg{1e-17, 10000};
  auto g = [&cfg](double a) { return g_series(a, cfg) - 2; };
  const double b = find_root(g, lo, hi, std::min(tol * 1e-2, 1e-13));
  if (!(std::abs(g(b)) <= tol)) throw Error(ErrorKind::non_convergence, "|G(beta0) - 2| above tolerance");
  return b;
}

namespace detail {
inline double beta0_cached() {
  static const double b = beta0(1e-13);
  return b;
}
}  // namespace detail

/// k₀[N⁽ᵐ⁾] = β₀^{-1/m}.
inline double k0_exp(double m) {
  if (!(m > 0)) throw Error(ErrorKind::bad_parameter, "k0_exp needs m > 0");
  return std::pow(detail::beta0_cached(), -1 / m);
}

/// Q_m(k) = G(k^{-m}) - 1 for k > 1.
inline double q_exp_closed(double m, double k) {
  if (!(m > 0) || !(k > 1)) throw Error(ErrorKind::bad_parameter, "q_exp_closed needs m > 0 and k > 1");
  return g_series(std::pow(k, -m)) - 1;
}

/// (quadrature of ∫_0^{1/2} |ln z| (1-z)^{-2} dz, 2 ln 2).
inline std::pair<double, double> c5_verify(const QuadratureSpec& spec = {}) {
  RealFn f = [](double z) { return -std::log(z) / ((1 - z) * (1 - z)); };
  // z = s² removes the logarithmic singularity at the origin
  const double q = integrate(f, 0, 0.5, spec, 0.5).value;
  return {q, 2 * std::log(2.0)};
}

}  // namespace orlicz::exp_family
