#pragma once

// Continuous simplex model: Gamma-integral costs of the product ansatz
// f(mu) = (prod mu_i)^alpha (1 - sum mu_i)^beta, the p^3/N^2 lower bound, the
// Airy single-mode profile and the photon-number statistics of the ansatz.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>

#include "phaselimit/errors.hpp"
#include "phaselimit/specfun.hpp"

namespace phaselimit::continuous {

/// Resource bookkeeping: p phases, N total photons, n photons per shot, k shots.
struct ScenarioParams {
  int p = 1;
  int N = 1;
  int n = 1;
  int k = 1;

  void validate() const {
    phaselimit::detail::require(p >= 1 && N >= 1 && n >= 1 && k >= 1,
                                "ScenarioParams: p, N, n, k must be positive");
  }
  [[nodiscard]] bool p_divides_N() const { return N % p == 0; }
  [[nodiscard]] bool p_divides_k() const { return k % p == 0; }
};

/// Two-parameter simplex wavefunction family.
struct AnsatzState {
  int p;
  double alpha;
  double beta;

  AnsatzState(int p_, double alpha_, double beta_) : p(p_), alpha(alpha_), beta(beta_) {
    phaselimit::detail::require(p >= 1, "AnsatzState: p must be positive");
    phaselimit::detail::require(alpha >= 0.5 && beta >= 0.5 && std::isfinite(alpha) && std::isfinite(beta),
                                "AnsatzState: alpha and beta must be >= 1/2");
  }

  /// alpha = 3/2, beta = sqrt(p): the large-p optimum.
  static AnsatzState asymptotic(int p) { return {p, 1.5, std::sqrt(static_cast<double>(p))}; }
};

using specfun::log_gamma;

/// ln of the normalization integral of |f|^2 over the unit simplex.
inline double ansatz_log_norm(const AnsatzState& s) {
  const double a = s.alpha;
  const double b = s.beta;
  const double p = s.p;
  return p * log_gamma(1.0 + 2.0 * a) + log_gamma(1.0 + 2.0 * b) - log_gamma(1.0 + 2.0 * b + p * (1.0 + 2.0 * a));
}

/// Gamma(1+2a)^p Gamma(1+2b) / Gamma(1+2b+p(1+2a)).
inline double ansatz_norm(const AnsatzState& s) { return std::exp(ansatz_log_norm(s)); }

/// ln of the energy integral of |grad f|^2 over the unit simplex.
inline double ansatz_log_energy(const AnsatzState& s) {
  const double a = s.alpha;
  const double b = s.beta;
  const double p = s.p;
  phaselimit::detail::require(a > 0.5 && b > 0.5, "ansatz_energy: requires alpha > 1/2 and beta > 1/2");
  const double first_arm = std::log(a * b) + log_gamma(2.0 * a - 1.0) + log_gamma(2.0 * b - 1.0) -
                           std::log(2.0 * a + 2.0 * b - 1.0) - log_gamma(2.0 * (a + b - 1.0));
  // product of D_{a,b,k} for k = 2..p telescopes to a single Gamma ratio
  const double remaining_arms = (p - 1.0) * log_gamma(1.0 + 2.0 * a) +
                                log_gamma(1.0 + 2.0 * (b - 1.0) + (1.0 + 2.0 * a)) -
                                log_gamma(1.0 + 2.0 * (b - 1.0) + p * (1.0 + 2.0 * a));
  return std::log(p) + first_arm + remaining_arms;
}

inline double ansatz_energy(const AnsatzState& s) { return std::exp(ansatz_log_energy(s)); }

/// Joint-estimation cost E / (norm * N^2) of the ansatz state.
inline double ansatz_cost(const AnsatzState& s, int N) {
  phaselimit::detail::require(N >= 1, "ansatz_cost: N must be positive");
  const double n = N;
  return std::exp(ansatz_log_energy(s) - ansatz_log_norm(s)) / (n * n);
}

/// p(1+2 sqrt p)^2 sqrt p (4p + 2 sqrt p - 1) / ((8 sqrt p - 4) N^2): the
/// simplified cost at alpha = 3/2, beta = sqrt(p).
inline double ansatz_cost_closed_form(int p, int N) {
  phaselimit::detail::require(p >= 1 && N >= 1, "ansatz_cost_closed_form: p and N must be positive");
  const double sp = std::sqrt(static_cast<double>(p));
  const double n = N;
  return p * (1.0 + 2.0 * sp) * (1.0 + 2.0 * sp) * sp * (4.0 * p + 2.0 * sp - 1.0) / ((8.0 * sp - 4.0) * n * n);
}

/// A published rational form of the (alpha, beta) cost.
/// Its (1 - alpha - beta) prefactor makes it negative; the magnitude matches the
/// Gamma route only at p = 1. Kept for comparison, never used for costs.
struct PrintedAnsatzCost {
  double magnitude;
  bool sign_erratum;  // true when the printed expression came out negative
};

inline PrintedAnsatzCost printed_ansatz_cost(const AnsatzState& s, int N) {
  const double a = s.alpha;
  const double b = s.beta;
  const double p = s.p;
  const double n = N;
  const double raw = p * (1.0 - a - b) * (-1.0 + 2.0 * b + p + 2.0 * a * p) * (2.0 * b + p + 2.0 * a) /
                     (2.0 * (-1.0 + 2.0 * a) * (-1.0 + 2.0 * b)) / (n * n);
  return {std::abs(raw), raw < 0.0};
}

struct AnsatzOptimum {
  double alpha;
  double beta;
  bool closed_form;  // false when found by numeric coordinate search
};

namespace detail {

inline double cost_or_inf(int p, double a, double b) {
  if (!(a > 0.5) || !(b > 0.5)) return INFINITY;
  return ansatz_cost(AnsatzState(p, a, b), 1);
}

inline bool is_local_minimum(int p, double a, double b, double h = 1e-4) {
  const double c0 = cost_or_inf(p, a, b);
  const double slack = c0 * 1e-13;
  for (double da : {-h, 0.0, h})
    for (double db : {-h, 0.0, h})
      if ((da != 0.0 || db != 0.0) && cost_or_inf(p, a + da, b + db) < c0 - slack) return false;
  return true;
}

/// Derivative-free coordinate search with shrinking steps.
inline AnsatzOptimum coordinate_search(int p, double a, double b, double tol = 1e-9) {
  double step = 0.25;
  double best = cost_or_inf(p, a, b);
  long evaluations = 0;
  while (step > tol) {
    bool improved = false;
    for (int coord = 0; coord < 2; ++coord) {
      for (double dir : {1.0, -1.0}) {
        const double na = coord == 0 ? a + dir * step : a;
        const double nb = coord == 1 ? b + dir * step : b;
        const double c = cost_or_inf(p, na, nb);
        ++evaluations;
        if (c < best) {
          best = c;
          a = na;
          b = nb;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
    if (evaluations > 2'000'000)
      throw ConvergenceError("ansatz_optimal_params: coordinate search did not converge for p = " +
                             std::to_string(p));
  }
  return {a, b, false};
}

} // namespace detail

/// (alpha, beta) minimizing the ansatz cost. Uses the closed forms for p >= 2
/// (after checking they are a local minimum) and numeric search otherwise.
inline AnsatzOptimum ansatz_optimal_params(int p) {
  phaselimit::detail::require(p >= 1, "ansatz_optimal_params: p must be positive");
  if (p >= 2) {
    const double pd = p;
    const double root = std::sqrt(pd * (1.0 + 2.0 * pd) * (1.0 + 2.0 * pd));
    const double pm1sq = (pd - 1.0) * (pd - 1.0);
    const double alpha = 0.5 + std::sqrt((4.0 * pd * pd + 6.0 * pd + 2.0 - 4.0 * root) / (4.0 * pm1sq));
    const double beta =
        (1.0 + 2.0 * pd +
         std::sqrt(2.0) * root * std::sqrt((pd * (3.0 + 2.0 * pd) + 1.0 - 2.0 * root) / pm1sq)) /
        (4.0 * pd + 2.0);
    if (std::isfinite(alpha) && std::isfinite(beta) && detail::is_local_minimum(p, alpha, beta))
      return {alpha, beta, true};
  }
  const double start_beta = std::max(1.0, std::sqrt(static_cast<double>(p)));
  return detail::coordinate_search(p, 1.5, start_beta);
}

/// (4|A0|^3/27) p^3 / N^2.
inline double fundamental_bound(int p, int N) {
  phaselimit::detail::require(p >= 1 && N >= 1, "fundamental_bound: p and N must be positive");
  const double pd = p;
  const double n = N;
  return specfun::heisenberg_constant() * pd * pd * pd / (n * n);
}

/// Optimal single-mode profile with mean photon fraction 1/p.
struct AiryMode {
  int p;
  double a0;
  double scale;  // 2 p |A0| / 3

  static AiryMode make(int p) {
    phaselimit::detail::require(p >= 1, "AiryMode: p must be positive");
    const double a0 = specfun::airy_first_zero().value;
    return {p, a0, 2.0 * p * std::abs(a0) / 3.0};
  }

  [[nodiscard]] double profile(double mu) const {
    return std::sqrt(scale) * specfun::airy_ai(a0 + scale * mu) / specfun::airy_ai_prime(a0);
  }

  [[nodiscard]] double profile_derivative(double mu) const {
    return scale * std::sqrt(scale) * specfun::airy_ai_prime(a0 + scale * mu) / specfun::airy_ai_prime(a0);
  }

  /// Past this mu the profile is below 1e-16 relative.
  [[nodiscard]] double cutoff() const { return (std::abs(a0) + 25.0) / scale; }
};

/// g(mu) = sqrt(2p|A0|/3) Ai(A0 + 2p|A0| mu / 3) / Ai'(A0).
inline double airy_mode_profile(int p, double mu) {
  phaselimit::detail::require(mu >= 0.0, "airy_mode_profile: mu must be non-negative");
  return AiryMode::make(p).profile(mu);
}

namespace detail {
inline double marginal_second_shape(int p) {
  const double sp = std::sqrt(static_cast<double>(p));
  return 4.0 * p + 2.0 * sp - 3.0;
}
} // namespace detail

/// Photon-fraction density in one sensing arm for alpha = 3/2, beta = sqrt(p):
/// Beta(4, 4p + 2 sqrt p - 3), i.e. proportional to mu^3 (1-mu)^(2(2p + sqrt p - 2)).
inline double photon_marginal_density(int p, double mu) {
  phaselimit::detail::require(p >= 1, "photon_marginal_density: p must be positive");
  phaselimit::detail::require(mu >= 0.0 && mu <= 1.0, "photon_marginal_density: mu must lie in [0, 1]");
  if (mu == 0.0 || mu == 1.0) return 0.0;
  const double b = detail::marginal_second_shape(p);
  const double log_beta = log_gamma(4.0) + log_gamma(b) - log_gamma(4.0 + b);
  return std::exp(3.0 * std::log(mu) + (b - 1.0) * std::log1p(-mu) - log_beta);
}

struct PhotonStatistics {
  double mean_arm;
  double mean_reference;
  double correlation;
};

/// Closed-form photon statistics of the alpha = 3/2, beta = sqrt(p) state.
inline PhotonStatistics photon_statistics(int p, int N) {
  phaselimit::detail::require(p >= 1 && N >= 1, "photon_statistics: p and N must be positive");
  const double sp = std::sqrt(static_cast<double>(p));
  const double denom = 1.0 + 2.0 * sp + 4.0 * p;
  // a single arm has no partner to correlate with
  const double corr = p >= 2 ? -4.0 / (4.0 * p + 2.0 * sp - 3.0) : std::numeric_limits<double>::quiet_NaN();
  return {4.0 * N / denom, (1.0 + 2.0 * sp) * N / denom, corr};
}

/// Largest gap between the one-arm photon density and the normalized squared
/// Airy profile on [0, 1], relative to the peak of the Airy density.
inline double profile_sup_distance(int p, int points = 20001) {
  const auto mode = AiryMode::make(p);
  double gap = 0.0;
  double peak = 0.0;
  for (int i = 0; i < points; ++i) {
    const double mu = static_cast<double>(i) / (points - 1);
    const double g = mode.profile(mu);
    gap = std::max(gap, std::abs(photon_marginal_density(p, mu) - g * g));
    peak = std::max(peak, g * g);
  }
  return gap / peak;
}

/// Cost of a single-mode mixture: sum_k w_k c / nbar_k^2, with the Jensen
/// lower bound c / (sum_k w_k nbar_k)^2.
struct MixtureCost {
  double mixture;
  double pure_bound;
};

inline MixtureCost mixture_cost(std::span<const double> weights, std::span<const double> mean_photons, double c) {
  phaselimit::detail::require(weights.size() == mean_photons.size() && !weights.empty(),
                              "mixture_cost: weights and photon numbers must have equal, non-zero length");
  double total = 0.0;
  double mean = 0.0;
  double wsum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    phaselimit::detail::require(weights[i] >= 0.0 && mean_photons[i] > 0.0, "mixture_cost: invalid component");
    total += weights[i] * c / (mean_photons[i] * mean_photons[i]);
    mean += weights[i] * mean_photons[i];
    wsum += weights[i];
  }
  phaselimit::detail::require(std::abs(wsum - 1.0) < 1e-12, "mixture_cost: weights must sum to one");
  return {total, c / (mean * mean)};
}

} // namespace phaselimit::continuous
