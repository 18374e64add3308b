#pragma once

// Quantum Fisher information of phase-encoded pure states, Cramer-Rao costs
// for repeated shots, and the cost table across the four resource paradigms.

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include "phaselimit/errors.hpp"
#include "phaselimit/specfun.hpp"

namespace phaselimit::qfi {

using MultiIndex = std::vector<int>;

/// Probabilities |c_m|^2 over multi-indices with sum m_i <= n.
struct PhotonDistribution {
  int p;
  int n;
  std::map<MultiIndex, double> weights;

  PhotonDistribution(int p_, int n_, std::map<MultiIndex, double> w) : p(p_), n(n_), weights(std::move(w)) {
    phaselimit::detail::require(p >= 1 && n >= 1, "PhotonDistribution: p and n must be positive");
    double total = 0.0;
    for (const auto& [m, q] : weights) {
      phaselimit::detail::require(static_cast<int>(m.size()) == p, "PhotonDistribution: index has wrong dimension");
      int photons = 0;
      for (int mi : m) {
        phaselimit::detail::require(mi >= 0, "PhotonDistribution: negative photon number");
        photons += mi;
      }
      phaselimit::detail::require(photons <= n, "PhotonDistribution: index exceeds n photons");
      phaselimit::detail::require(q >= 0.0, "PhotonDistribution: negative weight");
      total += q;
    }
    phaselimit::detail::require(std::abs(total - 1.0) < 1e-12, "PhotonDistribution: weights must sum to one");
  }
};

struct QfiMatrix {
  Eigen::MatrixXd F;

  /// Tr F^{-1}; +infinity when F is singular (some phase is not imprinted).
  [[nodiscard]] double trace_of_inverse() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(F, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1.0);
    double total = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (ev(i) <= 1e-12 * scale) return std::numeric_limits<double>::infinity();
      total += 1.0 / ev(i);
    }
    return total;
  }
};

/// F = 4 Cov(m) under the weights.
inline QfiMatrix qfi_matrix(const PhotonDistribution& d) {
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d.p);
  for (const auto& [m, q] : d.weights)
    for (int i = 0; i < d.p; ++i) mean(i) += q * m[static_cast<std::size_t>(i)];
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d.p, d.p);
  Eigen::VectorXd dev(d.p);
  for (const auto& [m, q] : d.weights) {
    for (int i = 0; i < d.p; ++i) dev(i) = m[static_cast<std::size_t>(i)] - mean(i);
    cov.noalias() += q * dev * dev.transpose();
  }
  return {4.0 * cov};
}

/// Weight 1 - p t on the vacuum and t on each n e_i.
inline PhotonDistribution family_state(int p, int n, double t) {
  phaselimit::detail::require(p >= 1 && n >= 1, "family_state: p and n must be positive");
  phaselimit::detail::require(t >= 0.0 && p * t <= 1.0 + 1e-15, "family_state: need 0 <= t <= 1/p");
  std::map<MultiIndex, double> w;
  w[MultiIndex(static_cast<std::size_t>(p), 0)] = std::max(0.0, 1.0 - p * t);
  for (int i = 0; i < p; ++i) {
    MultiIndex m(static_cast<std::size_t>(p), 0);
    m[static_cast<std::size_t>(i)] = n;
    w[m] = t;
  }
  return {p, n, std::move(w)};
}

/// alpha^2 = 1/(p + sqrt p) on each n e_i, beta^2 = 1/(1 + sqrt p) on the vacuum.
inline PhotonDistribution optimal_qfi_state(int p, int n) {
  return family_state(p, n, 1.0 / (p + std::sqrt(static_cast<double>(p))));
}

/// (1 + sqrt p)^2 p / (4 k n^2).
inline double cr_joint_cost(int p, int n, int k) {
  phaselimit::detail::require(p >= 1 && n >= 1 && k >= 1, "cr_joint_cost: arguments must be positive");
  const double sp = std::sqrt(static_cast<double>(p));
  return (1.0 + sp) * (1.0 + sp) * p / (4.0 * k * static_cast<double>(n) * n);
}

/// p^2 / (k n^2): k/p n00n shots per phase.
inline double cr_separate_cost(int p, int n, int k) {
  phaselimit::detail::require(p >= 1 && n >= 1 && k >= 1, "cr_separate_cost: arguments must be positive");
  if (k % p != 0)
    throw DomainError("cr_separate_cost: p = " + std::to_string(p) + " does not divide k = " + std::to_string(k));
  return static_cast<double>(p) * p / (k * static_cast<double>(n) * n);
}

struct FamilyMinimum {
  double t;      // weight on each n e_i
  double value;  // minimal Tr F^{-1}
};

/// Minimizes Tr F^{-1} over the vacuum-plus-n00n family numerically (Brent).
inline FamilyMinimum minimize_family_trace(int p, int n) {
  auto objective = [&](double t) { return qfi_matrix(family_state(p, n, t)).trace_of_inverse(); };
  const double upper = 1.0 / p;
  std::uintmax_t iterations = 200;
  const auto [t, value] = boost::math::tools::brent_find_minima(objective, 1e-6 * upper, upper * (1.0 - 1e-9),
                                                                std::numeric_limits<double>::digits, iterations);
  if (iterations >= 200) throw ConvergenceError("minimize_family_trace: Brent search did not converge");
  return {t, value};
}

enum class Strategy { single, joint, separate };
enum class Regime { sql, hl, hs };

inline std::string to_string(Strategy s) {
  switch (s) {
  case Strategy::single: return "single";
  case Strategy::joint: return "joint";
  case Strategy::separate: return "separate";
  }
  return "";
}

inline std::string to_string(Regime r) {
  switch (r) {
  case Regime::sql: return "SQL";
  case Regime::hl: return "HL";
  case Regime::hs: return "HS";
  }
  return "";
}

struct TableCell {
  Strategy strategy;
  Regime regime;
  std::string formula;
  double value;
  bool available;
  bool supplementary;  // achievable or exact companion of a main cell
  std::string note;
};

/// The 3x3 cost table (single, joint, separate) x (SQL, HL, HS) plus three
/// companions: the achievable joint HL coefficient 2, and the exact finite-p
/// joint SQL and HS costs whose large-p forms appear in the main cells.
inline std::vector<TableCell> table1(int p, int N, int n, int k) {
  phaselimit::detail::require(p >= 1 && N >= 1 && n >= 1 && k >= 1, "table1: arguments must be positive");
  const double P = p;
  const double Nd = N;
  const double kn2 = static_cast<double>(k) * n * n;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double c = specfun::heisenberg_constant();
  const double sp = std::sqrt(P);
  const bool n_ok = N % p == 0;
  const bool k_ok = k % p == 0;
  auto cell = [](Strategy s, Regime r, std::string f, double v, bool ok, bool extra, std::string note) {
    return TableCell{s, r, std::move(f), ok ? v : std::numeric_limits<double>::quiet_NaN(), ok, extra, std::move(note)};
  };
  std::vector<TableCell> t;
  t.push_back(cell(Strategy::single, Regime::sql, "1/N", 1.0 / Nd, true, false, ""));
  t.push_back(cell(Strategy::single, Regime::hl, "pi^2/N^2", pi2 / (Nd * Nd), true, false, ""));
  t.push_back(cell(Strategy::single, Regime::hs, "1/(k n^2)", 1.0 / kn2, true, false, ""));
  t.push_back(cell(Strategy::joint, Regime::sql, "p^2/(4N)", P * P / (4.0 * Nd), true, false, "large-p form"));
  t.push_back(cell(Strategy::joint, Regime::hl, "c p^3/N^2", c * P * P * P / (Nd * Nd), true, false,
                   "lower bound, c = 4|A0|^3/27"));
  t.push_back(cell(Strategy::joint, Regime::hs, "p^2/(4 k n^2)", P * P / (4.0 * kn2), true, false, "large-p form"));
  t.push_back(cell(Strategy::separate, Regime::sql, "p^2/N", P * P / Nd, n_ok, false, n_ok ? "" : "p does not divide N"));
  t.push_back(cell(Strategy::separate, Regime::hl, "pi^2 p^3/N^2", pi2 * P * P * P / (Nd * Nd), n_ok, false,
                   n_ok ? "" : "p does not divide N"));
  t.push_back(cell(Strategy::separate, Regime::hs, "p^2/(k n^2)", P * P / kn2, k_ok, false, k_ok ? "" : "p does not divide k"));
  t.push_back(cell(Strategy::joint, Regime::hl, "2 p^3/N^2", 2.0 * P * P * P / (Nd * Nd), true, true,
                   "achievable as p grows"));
  t.push_back(cell(Strategy::joint, Regime::sql, "(1+sqrt p)^2 p/(4N)", (1.0 + sp) * (1.0 + sp) * P / (4.0 * Nd), true,
                   true, "exact"));
  t.push_back(cell(Strategy::joint, Regime::hs, "(1+sqrt p)^2 p/(4 k n^2)", cr_joint_cost(p, n, k), true, true, "exact"));
  return t;
}

} // namespace phaselimit::qfi
