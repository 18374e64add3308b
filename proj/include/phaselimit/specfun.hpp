#pragma once

// Special functions used across the library: Airy Ai/Ai', the first Airy zero,
// log-Gamma, and the Fourier coefficients of the squared phase error.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "phaselimit/errors.hpp"

namespace phaselimit::specfun {

/// First (least negative) zero of Ai.
struct AiryZero {
  double value;
};

namespace detail {

struct AiryPair {
  double ai;
  double aip;
};

// Ai(0) = 3^(-2/3)/Gamma(2/3), Ai'(0) = -3^(-1/3)/Gamma(1/3).
inline constexpr double kAiryAtZero = 0.35502805388781723926;
inline constexpr double kAiryPrimeAtZero = -0.25881940379280679840;

// Anchors of the ODE march live on [kAnchorLo, kAnchorHi]; outside, the
// asymptotic expansions are accurate to better than 1e-13 relative.
inline constexpr double kAnchorLo = -20.0;
inline constexpr double kAnchorHi = 10.0;
inline constexpr double kAnchorStep = 0.25;

/// Taylor expansion of a solution of y'' = x y about x0, evaluated at x0 + t.
/// The coefficients obey (k+2)(k+1) a_{k+2} = x0 a_k + a_{k-1}.
inline AiryPair airy_taylor(double x0, AiryPair at, double t) {
  constexpr int kTerms = 48;
  std::array<double, kTerms> a{};
  a[0] = at.ai;
  a[1] = at.aip;
  a[2] = x0 * a[0] / 2.0;
  for (int k = 1; k + 2 < kTerms; ++k)
    a[k + 2] = (x0 * a[k] + a[k - 1]) / static_cast<double>((k + 2) * (k + 1));

  double y = 0.0;
  double dy = 0.0;
  for (int k = kTerms - 1; k >= 1; --k) {
    y = y * t + a[k];
    dy = dy * t + static_cast<double>(k) * a[k];
  }
  y = y * t + a[0];
  return {y, dy};
}

// Asymptotic coefficients u_k, v_k of the Airy expansions.
inline const std::array<double, 24>& airy_u() {
  static const std::array<double, 24> u = [] {
    std::array<double, 24> out{};
    out[0] = 1.0;
    for (int k = 1; k < 24; ++k)
      out[k] = out[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
               (216.0 * k * (2.0 * k - 1.0));
    return out;
  }();
  return u;
}

inline double airy_v(int k) {
  if (k == 0) return 1.0;
  return -(6.0 * k + 1.0) / (6.0 * k - 1.0) * airy_u()[static_cast<std::size_t>(k)];
}

/// Sum of (-1)^k c_k z^{-k} with optimal truncation (stop when terms grow).
template <typename Coeff>
double alternating_asymptotic_sum(Coeff coeff, double zeta, int first, int stride) {
  double sum = 0.0;
  double prev = INFINITY;
  int sign = 1;
  for (int k = first; k < 24; k += stride) {
    const double term = coeff(k) * std::pow(zeta, -k);
    if (std::abs(term) > prev) break;
    sum += sign * term;
    prev = std::abs(term);
    if (prev < 1e-18 * std::abs(sum)) break;
    sign = -sign;
  }
  return sum;
}

inline AiryPair airy_asymptotic_positive(double x) {
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  const double pref = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
  const double x14 = std::pow(x, 0.25);
  const auto& u = airy_u();
  const double su = alternating_asymptotic_sum([&](int k) { return u[static_cast<std::size_t>(k)]; }, zeta, 0, 1);
  const double sv = alternating_asymptotic_sum([](int k) { return airy_v(k); }, zeta, 0, 1);
  return {pref / x14 * su, -pref * x14 * sv};
}

inline AiryPair airy_asymptotic_negative(double x) {
  const double z = -x;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  const double phase = zeta - std::numbers::pi / 4.0;
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  const double z14 = std::pow(z, 0.25);
  const double rsqpi = 1.0 / std::sqrt(std::numbers::pi);
  const auto& u = airy_u();
  auto uk = [&](int k) { return u[static_cast<std::size_t>(k)]; };
  auto vk = [](int k) { return airy_v(k); };
  const double u_even = alternating_asymptotic_sum(uk, zeta, 0, 2);
  const double u_odd = alternating_asymptotic_sum(uk, zeta, 1, 2);
  const double v_even = alternating_asymptotic_sum(vk, zeta, 0, 2);
  const double v_odd = alternating_asymptotic_sum(vk, zeta, 1, 2);
  return {rsqpi / z14 * (c * u_even + s * u_odd), rsqpi * z14 * (s * v_even - c * v_odd)};
}

/// (Ai, Ai') on the anchor grid. The negative half is marched from the exact
/// values at the origin (oscillatory, stable both ways); the positive half is
/// marched backwards from the asymptotic values at kAnchorHi, the direction in
/// which Ai is the dominant solution.
inline const std::vector<AiryPair>& airy_anchors() {
  static const std::vector<AiryPair> anchors = [] {
    const int n_neg = static_cast<int>(std::lround(-kAnchorLo / kAnchorStep));
    const int n_pos = static_cast<int>(std::lround(kAnchorHi / kAnchorStep));
    std::vector<AiryPair> out(static_cast<std::size_t>(n_neg + n_pos + 1));
    out[static_cast<std::size_t>(n_neg)] = {kAiryAtZero, kAiryPrimeAtZero};
    for (int i = n_neg - 1; i >= 0; --i) {
      const double x0 = kAnchorLo + (i + 1) * kAnchorStep;
      out[static_cast<std::size_t>(i)] = airy_taylor(x0, out[static_cast<std::size_t>(i + 1)], -kAnchorStep);
    }
    AiryPair cur = airy_asymptotic_positive(kAnchorHi);
    out.back() = cur;
    for (int i = n_neg + n_pos - 1; i > n_neg; --i) {
      const double x0 = kAnchorLo + (i + 1) * kAnchorStep;
      cur = airy_taylor(x0, cur, -kAnchorStep);
      out[static_cast<std::size_t>(i)] = cur;
    }
    return out;
  }();
  return anchors;
}

inline AiryPair airy_pair(double x) {
  if (x > kAnchorHi) return airy_asymptotic_positive(x);
  if (x < kAnchorLo) return airy_asymptotic_negative(x);
  const auto& anchors = airy_anchors();
  const auto i = static_cast<std::size_t>(std::lround((x - kAnchorLo) / kAnchorStep));
  const double x0 = kAnchorLo + static_cast<double>(i) * kAnchorStep;
  return airy_taylor(x0, anchors[i], x - x0);
}

} // namespace detail

/// Airy function of the first kind.
inline double airy_ai(double x) { return detail::airy_pair(x).ai; }

/// Derivative of the Airy function of the first kind.
inline double airy_ai_prime(double x) { return detail::airy_pair(x).aip; }

/// First zero of Ai: bisection on [-2.4, -2.3] followed by Newton steps.
inline AiryZero airy_first_zero() {
  double lo = -2.4;
  double hi = -2.3;
  double f_lo = airy_ai(lo);
  const double f_hi = airy_ai(hi);
  if (!(f_lo * f_hi < 0.0))
    throw ConvergenceError("airy_first_zero: Ai does not change sign on [-2.4, -2.3]");
  for (int it = 0; it < 30; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = airy_ai(mid);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const auto [ai, aip] = detail::airy_pair(x);
    const double step = ai / aip;
    x -= step;
    if (std::abs(step) < 1e-15) return {x};
  }
  if (std::abs(airy_ai(x)) < 1e-13) return {x};
  throw ConvergenceError("airy_first_zero: Newton refinement did not converge");
}

/// c = 4|A0|^3/27, the coefficient of the multi-phase Heisenberg bound c p^3/N^2.
inline double heisenberg_constant() {
  const double a0 = std::abs(airy_first_zero().value);
  return 4.0 * a0 * a0 * a0 / 27.0;
}

/// ln Gamma(x) for x > 0 (Lanczos, g = 7, nine terms).
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("log_gamma: argument must be positive and finite");
  if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double g = 7.0;
  const double z = x - 1.0;
  double series = c[0];
  for (std::size_t k = 1; k < c.size(); ++k) series += c[k] / (z + static_cast<double>(k));
  const double t = z + g + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

/// Fourier coefficient of theta^2 on (-pi, pi]: pi^2/3 for d = 0, else (-1)^d 2/d^2.
inline double kernel_entry(std::int64_t d) {
  if (d == 0) return std::numbers::pi * std::numbers::pi / 3.0;
  const double dd = static_cast<double>(d);
  return ((d % 2 == 0) ? 2.0 : -2.0) / (dd * dd);
}

} // namespace phaselimit::specfun
