#pragma once

// Finite-region risk machinery: Kaiser-window priors, their tail risks, the
// composite risk bound, the finite-N minimax lower bound and its positivity
// margin, and the single-parameter Bayesian bounds.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "phaselimit/errors.hpp"
#include "phaselimit/quadrature.hpp"

namespace phaselimit::riskbounds {

/// Prior shape alphaK, bandwidth L, region [-delta/2, delta/2], coarse budget N0.
struct RiskParams {
  int p;
  double delta;
  int N0;
  double alphaK;
  double L;

  /// alphaK = N0 delta / 4 and L = 2 N0, so that delta/2 = 4 alphaK / L.
  static RiskParams from(int p, double delta, int N0) {
    phaselimit::detail::require(p >= 1 && N0 >= 1, "RiskParams: p and N0 must be positive");
    phaselimit::detail::require(delta > 0.0 && std::isfinite(delta), "RiskParams: delta must be positive");
    const double alpha = N0 * delta / 4.0;
    phaselimit::detail::require(alpha > 0.5, "RiskParams: N0 delta / 4 must exceed 1/2");
    return {p, delta, N0, alpha, 2.0 * N0};
  }
};

namespace detail {

/// ln of sinh(x)/x for x >= 0.
inline double log_sinhc(double x) {
  if (x < 1e-4) return x * x / 6.0;
  return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0) - std::log(x);
}

inline double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

/// ln of the Kaiser profile at u = 0.
inline double log_profile_peak(double alpha) { return 4.0 * log_sinhc(std::numbers::pi * alpha); }

/// Kaiser profile in u = L phi / (4 alpha), divided by its value at u = 0.
inline double scaled_profile(double alpha, double u) {
  u = std::abs(u);
  const double shift = log_profile_peak(alpha);
  if (u < 1.0) {
    const double x = std::numbers::pi * alpha * std::sqrt((1.0 - u) * (1.0 + u));
    return std::exp(4.0 * log_sinhc(x) - shift);
  }
  const double x = std::numbers::pi * alpha * std::sqrt((u - 1.0) * (u + 1.0));
  const double s = sinc(x);
  return s * s * s * s * std::exp(-shift);
}

inline constexpr double kTailCut = 100.0;

struct ProfileIntegrals {
  double core;       // int_0^1 f
  double tail;       // int_1^inf f
  double tail_moment;  // int_1^inf f (u+1)^2
};

/// Integrals of the scaled profile. The sinc^4 tail is integrated between its
/// zeros up to u = kTailCut; beyond, sin^4 is replaced by its mean 3/8.
inline ProfileIntegrals profile_integrals(double alpha) {
  auto f = [alpha](double u) { return scaled_profile(alpha, u); };
  const double core = quadrature::integrate_adaptive(f, 0.0, 1.0, 1e-12).value;

  double tail = 0.0;
  double moment = 0.0;
  double lo = 1.0;
  for (long k = 1;; ++k) {
    const double hi = std::min(std::sqrt(1.0 + (k / alpha) * (k / alpha)), kTailCut);
    tail += boost::math::quadrature::gauss<double, 20>::integrate(f, lo, hi);
    moment += boost::math::quadrature::gauss<double, 20>::integrate(
        [&](double u) { return f(u) * (u + 1.0) * (u + 1.0); }, lo, hi);
    lo = hi;
    if (hi >= kTailCut) break;
  }
  const double U = kTailCut;
  const double amp = 0.375 / std::pow(std::numbers::pi * alpha, 4) * std::exp(-log_profile_peak(alpha));
  tail += amp * 0.25 * (1.0 / (U - 1.0) + 1.0 / (U + 1.0) - std::log((U + 1.0) / (U - 1.0)));
  moment += amp / (U - 1.0);
  return {core, tail, moment};
}

} // namespace detail

/// Unnormalized prior L sinc^4(pi alpha sqrt((L phi/4 alpha)^2 - 1)), with the
/// sinh^4 continuation inside |L phi / 4 alpha| < 1.
inline double kaiser_prior(double alphaK, double L, double phi) {
  phaselimit::detail::require(alphaK > 0.0 && L > 0.0, "kaiser_prior: alphaK and L must be positive");
  const double u = std::abs(L * phi / (4.0 * alphaK));
  if (u < 1.0) return L * std::exp(4.0 * detail::log_sinhc(std::numbers::pi * alphaK * std::sqrt((1.0 - u) * (1.0 + u))));
  const double s = detail::sinc(std::numbers::pi * alphaK * std::sqrt((u - 1.0) * (u + 1.0)));
  return L * s * s * s * s;
}

struct Normalization {
  double numeric;         // N such that N * int kaiser_prior = 1
  double analytic_bound;  // 4 sqrt2 pi^4 alpha^(7/2) exp(-4 pi alpha)
};

inline double normalization_bound(double alphaK) {
  return 4.0 * std::numbers::sqrt2 * std::pow(std::numbers::pi, 4) * std::pow(alphaK, 3.5) *
         std::exp(-4.0 * std::numbers::pi * alphaK);
}

/// The normalization does not depend on L.
inline Normalization prior_normalization(double alphaK, double L) {
  phaselimit::detail::require(alphaK > 0.0 && L > 0.0, "prior_normalization: alphaK and L must be positive");
  const auto in = detail::profile_integrals(alphaK);
  const double scaled = 8.0 * alphaK * (in.core + in.tail);
  return {std::exp(-detail::log_profile_peak(alphaK)) / scaled, normalization_bound(alphaK)};
}

struct TailRisks {
  double R1;  // prior mass outside [-delta/2, delta/2]
  double R2;  // 2 int_{delta/2}^inf p(phi) (phi + delta/2)^2
};

inline TailRisks tail_risks(const RiskParams& rp) {
  const auto in = detail::profile_integrals(rp.alphaK);
  const double total = in.core + in.tail;
  const double half = 0.5 * rp.delta;
  return {in.tail / total, half * half * in.tail_moment / total};
}

/// p (p-1) R1 delta^2 + p R2 from the quadrature tail risks.
inline double exact_total_risk(const RiskParams& rp) {
  const auto r = tail_risks(rp);
  return rp.p * (rp.p - 1.0) * r.R1 * rp.delta * rp.delta + rp.p * r.R2;
}

/// (15/2) N_bound(N0 delta/4) N0 delta^3 p^2.
inline double total_risk_bound(const RiskParams& rp) {
  const double d = rp.delta;
  return 7.5 * normalization_bound(rp.alphaK) * rp.N0 * d * d * d * static_cast<double>(rp.p) * rp.p;
}

struct FiniteBound {
  double value;
  bool vacuous;  // correction exceeded the leading term; value clamped to 0
};

/// (c p^3/N^2)(1 - 8 p log(p N delta)/(N delta)), valid for p N delta >= 2.
inline FiniteBound finite_region_bound(int p, int N, double delta, double c) {
  phaselimit::detail::require(p >= 1 && N >= 1 && delta > 0.0, "finite_region_bound: invalid arguments");
  const double y = p * static_cast<double>(N) * delta;
  phaselimit::detail::require(y >= 2.0, "finite_region_bound: requires p N delta >= 2");
  const double lead = c * p * p * static_cast<double>(p) / (static_cast<double>(N) * N);
  const double factor = 1.0 - 8.0 * p * std::log(y) / (N * delta);
  if (factor < 0.0) return {0.0, true};
  return {lead * factor, false};
}

/// pi^2/[N dl]^2 (1 - 8 log(N dl delta)/(N dl delta)) with dl = lambda_plus - lambda_minus.
inline FiniteBound single_param_finite_bound(int N, double delta, double lambda_minus, double lambda_plus) {
  phaselimit::detail::require(lambda_plus > lambda_minus, "single_param_finite_bound: need lambda_plus > lambda_minus");
  const double n_eff = N * (lambda_plus - lambda_minus);
  const double y = n_eff * delta;
  phaselimit::detail::require(N >= 1 && delta > 0.0 && y >= 2.0, "single_param_finite_bound: requires N dl delta >= 2");
  const double lead = std::numbers::pi * std::numbers::pi / (n_eff * n_eff);
  const double factor = 1.0 - 8.0 * std::log(y) / y;
  if (factor < 0.0) return {0.0, true};
  return {lead * factor, false};
}

/// Lower bound on the gap between the curvature gain and the prior risk at
/// y = p N delta; positive values mean the finite-N bound is justified.
inline double positivity_margin(double y, double c) {
  phaselimit::detail::require(y >= 2.0, "positivity_margin: requires y >= 2");
  phaselimit::detail::require(c > 0.0, "positivity_margin: c must be positive");
  const double r = std::log(y) / y;
  const double gain = (48.0 * r * r + 128.0 * r * r * r) / ((1.0 + 4.0 * r) * (1.0 + 4.0 * r));
  const double risk = 120.0 * std::numbers::sqrt2 * std::pow(std::numbers::pi, 4) / c *
                      std::exp((2.0 - 4.0 * std::numbers::pi) * std::log(y)) * std::pow(std::log(y), 4.5);
  return gain - risk;
}

struct MarginScan {
  double min_margin;
  double argmin;
};

/// Minimum of positivity_margin over a logarithmic grid on [ymin, ymax].
inline MarginScan scan_margin(double ymin, double ymax, double c, int points = 10000) {
  phaselimit::detail::require(ymin >= 2.0 && ymax > ymin && points >= 2, "scan_margin: invalid grid");
  MarginScan best{INFINITY, ymin};
  const double step = std::log(ymax / ymin) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double y = ymin * std::exp(step * i);
    const double m = positivity_margin(y, c);
    if (m < best.min_margin) best = {m, y};
  }
  return best;
}

/// pi^2/(N (lambda_plus - lambda_minus) + L/2)^2.
inline double single_param_bayes_bound(int N, double L, double lambda_minus, double lambda_plus) {
  phaselimit::detail::require(N >= 1 && L >= 0.0 && lambda_plus > lambda_minus,
                              "single_param_bayes_bound: invalid arguments");
  const double denom = N * (lambda_plus - lambda_minus) + 0.5 * L;
  return std::numbers::pi * std::numbers::pi / (denom * denom);
}

} // namespace phaselimit::riskbounds
