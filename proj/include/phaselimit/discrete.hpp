#pragma once

// Finite-N photon-lattice model: covariant cost kernels, single-phase states,
// the discretized ansatz joint cost and the joint/separate comparison.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "phaselimit/errors.hpp"
#include "phaselimit/quadrature.hpp"
#include "phaselimit/specfun.hpp"

namespace phaselimit::discrete {

using MultiIndex = std::vector<int>;
using Complex = std::complex<double>;

/// Complex amplitudes over the integer simplex {m : m_i >= 0, sum m_i <= N}.
class LatticeState {
public:
  LatticeState(int p, int N) : p_(p), N_(N) {
    phaselimit::detail::require(p >= 1 && N >= 1, "LatticeState: p and N must be positive");
  }

  /// Evaluates f on every lattice point and normalizes.
  static LatticeState from_function(int p, int N, const std::function<Complex(const MultiIndex&)>& f) {
    LatticeState s(p, N);
    MultiIndex m(static_cast<std::size_t>(p), 0);
    s.enumerate(m, 0, N, f);
    return s.normalized();
  }

  void set(const MultiIndex& m, Complex c) {
    phaselimit::detail::require(static_cast<int>(m.size()) == p_, "LatticeState: index has wrong dimension");
    int total = 0;
    for (int mi : m) {
      phaselimit::detail::require(mi >= 0, "LatticeState: negative photon number");
      total += mi;
    }
    phaselimit::detail::require(total <= N_, "LatticeState: index outside the simplex");
    amplitudes_[m] = c;
  }

  [[nodiscard]] Complex at(const MultiIndex& m) const {
    const auto it = amplitudes_.find(m);
    return it == amplitudes_.end() ? Complex{} : it->second;
  }

  [[nodiscard]] double norm_squared() const {
    double s = 0.0;
    for (const auto& [m, c] : amplitudes_) s += std::norm(c);
    return s;
  }

  [[nodiscard]] LatticeState normalized() const {
    const double n2 = norm_squared();
    phaselimit::detail::require(n2 > 0.0, "LatticeState: cannot normalize the zero state");
    LatticeState out(p_, N_);
    const double scale = 1.0 / std::sqrt(n2);
    for (const auto& [m, c] : amplitudes_) out.amplitudes_[m] = c * scale;
    return out;
  }

  [[nodiscard]] int p() const { return p_; }
  [[nodiscard]] int N() const { return N_; }
  [[nodiscard]] const std::map<MultiIndex, Complex>& amplitudes() const { return amplitudes_; }

private:
  void enumerate(MultiIndex& m, std::size_t axis, int left, const std::function<Complex(const MultiIndex&)>& f) {
    if (axis == m.size()) {
      const Complex c = f(m);
      if (c != Complex{}) amplitudes_[m] = c;
      return;
    }
    for (int v = 0; v <= left; ++v) {
      m[axis] = v;
      enumerate(m, axis + 1, left - v, f);
    }
    m[axis] = 0;
  }

  int p_;
  int N_;
  std::map<MultiIndex, Complex> amplitudes_;
};

/// (M+1)x(M+1) Toeplitz matrix K[m][m'] = kernel_entry(m - m').
struct CovariantKernel {
  int M;
  Eigen::MatrixXd entries;

  [[nodiscard]] double smallest_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(entries, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConvergenceError("CovariantKernel: eigen-solver failed");
    return solver.eigenvalues()(0);
  }
};

namespace detail {
inline CovariantKernel kernel_of_size(int M) {
  CovariantKernel k{M, Eigen::MatrixXd(M + 1, M + 1)};
  for (int i = 0; i <= M; ++i)
    for (int j = 0; j <= M; ++j) k.entries(i, j) = specfun::kernel_entry(i - j);
  return k;
}
} // namespace detail

inline CovariantKernel build_kernel(int M) {
  phaselimit::detail::require(M >= 1, "build_kernel: M must be at least 1");
  return detail::kernel_of_size(M);
}

/// Real single-phase state over photon numbers 0..M.
struct SinglePhaseState {
  int M;
  std::vector<double> coefficients;

  SinglePhaseState(int M_, std::vector<double> c) : M(M_), coefficients(std::move(c)) {
    phaselimit::detail::require(M >= 0 && static_cast<int>(coefficients.size()) == M + 1,
                                "SinglePhaseState: need M + 1 coefficients");
    double n2 = 0.0;
    for (double x : coefficients) n2 += x * x;
    phaselimit::detail::require(std::abs(n2 - 1.0) < 1e-10, "SinglePhaseState: coefficients must be normalized");
  }
};

/// c^T K c with a caller-supplied kernel (reused across evaluations).
inline double single_phase_cost(const SinglePhaseState& s, const CovariantKernel& k) {
  phaselimit::detail::require(k.M == s.M, "single_phase_cost: kernel dimension does not match the state");
  const Eigen::Map<const Eigen::VectorXd> c(s.coefficients.data(), s.M + 1);
  return c.dot(k.entries * c);
}

/// Covariant circular-variance cost c^T K c.
inline double single_phase_cost(const SinglePhaseState& s) {
  return single_phase_cost(s, detail::kernel_of_size(s.M));
}

/// sqrt(2/(M+2)) sin((m+1) pi/(M+2)), m = 0..M.
inline SinglePhaseState sine_state(int M) {
  phaselimit::detail::require(M >= 1, "sine_state: M must be at least 1");
  std::vector<double> c(static_cast<std::size_t>(M + 1));
  const double scale = std::sqrt(2.0 / (M + 2));
  for (int m = 0; m <= M; ++m) c[static_cast<std::size_t>(m)] = scale * std::sin((m + 1) * std::numbers::pi / (M + 2));
  return {M, std::move(c)};
}

/// p * lambda_min(K_{N/p}): each phase gets its own N/p photons.
inline double separate_optimal_cost(int p, int N) {
  phaselimit::detail::require(p >= 1 && N >= 1, "separate_optimal_cost: p and N must be positive");
  if (N % p != 0)
    throw DomainError("separate_optimal_cost: p = " + std::to_string(p) + " does not divide N = " + std::to_string(N));
  return p * build_kernel(N / p).smallest_eigenvalue();
}

namespace detail {

inline double power_or_zero(int m, double exponent) {
  if (m == 0) return exponent > 0.0 ? 0.0 : 1.0;
  return std::pow(static_cast<double>(m), exponent);
}

class WeightCache {
public:
  using Key = std::tuple<int, int, double>;

  bool find(const Key& key, std::vector<double>& out) const {
    std::shared_lock lock(mutex_);
    const auto it = table_.find(key);
    if (it == table_.end()) return false;
    out = it->second;
    return true;
  }

  void insert(const Key& key, const std::vector<double>& value) {
    std::unique_lock lock(mutex_);
    table_.emplace(key, value);
  }

private:
  mutable std::shared_mutex mutex_;
  std::map<Key, std::vector<double>> table_;
};

inline WeightCache& weight_cache() {
  static WeightCache cache;
  return cache;
}

} // namespace detail

/// W[S] = sum over (p-1)-tuples with sum S of prod m_j^(2 exponent), S = 0..N,
/// by (p-1)-fold truncated convolution. Results are cached.
inline std::vector<double> composition_weights(int p, int N, double exponent) {
  phaselimit::detail::require(p >= 2 && N >= 0, "composition_weights: requires p >= 2 and N >= 0");
  const detail::WeightCache::Key key{p, N, exponent};
  std::vector<double> w;
  if (detail::weight_cache().find(key, w)) return w;

  std::vector<double> base(static_cast<std::size_t>(N + 1));
  for (int m = 0; m <= N; ++m) base[static_cast<std::size_t>(m)] = detail::power_or_zero(m, 2.0 * exponent);
  w = base;
  for (int arm = 2; arm < p; ++arm) {
    std::vector<double> next(static_cast<std::size_t>(N + 1), 0.0);
    for (int s = 0; s <= N; ++s)
      for (int m = 0; m <= s; ++m)
        next[static_cast<std::size_t>(s)] += w[static_cast<std::size_t>(s - m)] * base[static_cast<std::size_t>(m)];
    w = std::move(next);
  }
  detail::weight_cache().insert(key, w);
  return w;
}

/// Joint covariant cost of the lattice state m -> prod m_i^alpha (1 - sum m / N)^beta.
/// Every arm contributes equally, so the total is p times the cost of one arm,
/// whose marginal depends on the other arms only through their photon sum S.
inline double joint_ansatz_cost_discrete(int p, int N, double alpha, double beta) {
  phaselimit::detail::require(p >= 1 && N >= 1, "joint_ansatz_cost_discrete: p and N must be positive");
  phaselimit::detail::require(alpha >= 0.5 && beta >= 0.5, "joint_ansatz_cost_discrete: alpha, beta must be >= 1/2");

  std::vector<double> w(static_cast<std::size_t>(N + 1), 0.0);
  if (p == 1) {
    w[0] = 1.0;
  } else {
    w = composition_weights(p, N, alpha);
    const double peak = *std::max_element(w.begin(), w.end());
    for (double& x : w) x /= peak;
  }

  const auto kernel = detail::kernel_of_size(N);
  const Eigen::MatrixXd& K = kernel.entries;
  double numerator = 0.0;
  double norm = 0.0;
  Eigen::VectorXd v(N + 1);
  for (int s = 0; s <= N; ++s) {
    const double ws = w[static_cast<std::size_t>(s)];
    if (ws == 0.0) continue;
    const int len = N - s + 1;
    for (int m = 0; m < len; ++m) {
      const double rest = 1.0 - static_cast<double>(m + s) / N;
      v(m) = detail::power_or_zero(m, alpha) * std::pow(std::max(rest, 0.0), beta);
    }
    const auto vs = v.head(len);
    numerator += ws * vs.dot(K.topLeftCorner(len, len) * vs);
    norm += ws * vs.squaredNorm();
  }
  phaselimit::detail::require(norm > 0.0, "joint_ansatz_cost_discrete: state vanishes on the lattice");
  return p * numerator / norm;
}

/// Cost contributed by one arm of a general lattice state, by direct summation
/// over pairs (m, m') that differ only in that arm.
inline double lattice_arm_cost(const LatticeState& s, int arm) {
  phaselimit::detail::require(arm >= 0 && arm < s.p(), "lattice_arm_cost: arm out of range");
  double total = 0.0;
  for (const auto& [m, c] : s.amplitudes()) {
    int others = 0;
    for (int j = 0; j < s.p(); ++j)
      if (j != arm) others += m[static_cast<std::size_t>(j)];
    MultiIndex mp = m;
    for (int v = 0; v + others <= s.N(); ++v) {
      mp[static_cast<std::size_t>(arm)] = v;
      const Complex cp = s.at(mp);
      if (cp == Complex{}) continue;
      total += (std::conj(c) * cp).real() * specfun::kernel_entry(m[static_cast<std::size_t>(arm)] - v);
    }
  }
  return total / s.norm_squared();
}

/// Sum of lattice_arm_cost over all arms.
inline double lattice_joint_cost(const LatticeState& s) {
  double total = 0.0;
  for (int arm = 0; arm < s.p(); ++arm) total += lattice_arm_cost(s, arm);
  return total;
}

/// The discretized ansatz as an explicit lattice state.
inline LatticeState ansatz_lattice_state(int p, int N, double alpha, double beta) {
  return LatticeState::from_function(p, N, [&](const MultiIndex& m) {
    double amp = 1.0;
    int total = 0;
    for (int mi : m) {
      amp *= detail::power_or_zero(mi, alpha);
      total += mi;
    }
    return Complex(amp * std::pow(1.0 - static_cast<double>(total) / N, beta), 0.0);
  });
}

/// Joint ansatz cost at alpha = 3/2, beta = sqrt(p) over the optimal separate cost.
inline double advantage_ratio(int p, int N) {
  const double separate = separate_optimal_cost(p, N);
  return joint_ansatz_cost_discrete(p, N, 1.5, std::sqrt(static_cast<double>(p))) / separate;
}

namespace detail {

/// |sum_m c_m e^{i m (theta - x)}|^2 / (2 pi).
inline double outcome_density(const SinglePhaseState& s, double theta, double x) {
  double re = 0.0;
  double im = 0.0;
  const double phase = theta - x;
  for (int m = 0; m <= s.M; ++m) {
    re += s.coefficients[static_cast<std::size_t>(m)] * std::cos(m * phase);
    im += s.coefficients[static_cast<std::size_t>(m)] * std::sin(m * phase);
  }
  return (re * re + im * im) / (2.0 * std::numbers::pi);
}

inline double circular_distance(double a, double b) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double d = std::fmod(std::abs(a - b), two_pi);
  return std::min(d, two_pi - d);
}

/// Estimate after clamping x to [-d/2, d/2]; points outside go to the border
/// that is circularly nearer.
inline double clamp_to_region(double x, double d) {
  const double half = 0.5 * d;
  if (x >= -half && x <= half) return x;
  return circular_distance(x, half) <= circular_distance(x, -half) ? half : -half;
}

inline double clamped_cost_on_grid(const SinglePhaseState& s, double d, double theta, int panels) {
  std::vector<double> cuts = {-std::numbers::pi, std::numbers::pi};
  for (double c : {-0.5 * d, 0.5 * d, theta - std::numbers::pi, theta + std::numbers::pi, theta}) {
    if (c > -std::numbers::pi && c < std::numbers::pi) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto integrand = [&](double x) {
    const double err = circular_distance(clamp_to_region(x, d), theta);
    return outcome_density(s, theta, x) * err * err;
  };
  double total = 0.0;
  const double width = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    if (b - a <= 0.0) continue;
    const int pieces = std::max(1, static_cast<int>(std::ceil(panels * (b - a) / width)));
    total += quadrature::integrate_composite(integrand, a, b, pieces);
  }
  return total;
}

} // namespace detail

/// Expected squared circular error of the covariant measurement when outcomes
/// outside [-d/2, d/2] are moved to the region border. `grid` is the number of
/// Gauss panels on the full circle; the result is compared with twice as many.
/// For d <= pi clamping never increases the error; beyond that it can.
inline double clamped_estimator_cost(const SinglePhaseState& s, double d, double theta, int grid = 64) {
  phaselimit::detail::require(d > 0.0 && d <= 2.0 * std::numbers::pi + 1e-15,
                              "clamped_estimator_cost: d must lie in (0, 2 pi]");
  phaselimit::detail::require(std::abs(theta) <= 0.5 * d + 1e-15, "clamped_estimator_cost: |theta| must be <= d/2");
  phaselimit::detail::require(grid >= 1, "clamped_estimator_cost: grid must be positive");
  const double coarse = detail::clamped_cost_on_grid(s, d, theta, grid);
  const double fine = detail::clamped_cost_on_grid(s, d, theta, 2 * grid);
  if (std::abs(fine - coarse) > 1e-6)
    throw ConvergenceError("clamped_estimator_cost: grid of " + std::to_string(grid) +
                           " panels too coarse (change " + std::to_string(std::abs(fine - coarse)) + ")");
  return fine;
}

} // namespace phaselimit::discrete
