#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "phaselimit/continuous.hpp"
#include "phaselimit/discrete.hpp"
#include "phaselimit/montecarlo.hpp"
#include "phaselimit/quadrature.hpp"

using namespace phaselimit;
using namespace phaselimit::discrete;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const double kPi = std::numbers::pi;
const double kPi2 = kPi * kPi;

// E[x^2] of the covariant outcome density at theta = 0, integrated directly
// from the wavefunction on the circle.
double cost_by_quadrature(const SinglePhaseState& s) {
  auto density = [&](double x) {
    double re = 0.0;
    double im = 0.0;
    for (int m = 0; m <= s.M; ++m) {
      re += s.coefficients[static_cast<std::size_t>(m)] * std::cos(m * x);
      im += s.coefficients[static_cast<std::size_t>(m)] * std::sin(m * x);
    }
    return (re * re + im * im) * x * x / (2.0 * kPi);
  };
  return quadrature::integrate_composite(density, -kPi, kPi, 4 * (s.M + 4));
}

// Joint cost of a lattice state by summing over every ordered pair of
// multi-indices that differ in at most one coordinate.
double brute_force_joint_cost(const LatticeState& st) {
  double num = 0.0;
  for (const auto& [m, c] : st.amplitudes()) {
    for (const auto& [mp, cp] : st.amplitudes()) {
      int diff_axis = -1;
      int diffs = 0;
      for (int i = 0; i < st.p(); ++i) {
        if (m[static_cast<std::size_t>(i)] != mp[static_cast<std::size_t>(i)]) {
          ++diffs;
          diff_axis = i;
        }
      }
      if (diffs > 1) continue;
      const double w = (std::conj(c) * cp).real();
      if (diffs == 0) {
        num += st.p() * w * kPi2 / 3.0;
      } else {
        const int d = m[static_cast<std::size_t>(diff_axis)] - mp[static_cast<std::size_t>(diff_axis)];
        num += w * 2.0 * ((d % 2 == 0) ? 1.0 : -1.0) / (static_cast<double>(d) * d);
      }
    }
  }
  return num / st.norm_squared();
}

} // namespace

TEST_CASE("kernel entries are Fourier coefficients of phi^2") {
  for (int d = 0; d <= 6; ++d) {
    const double oracle = quadrature::integrate_adaptive(
                              [d](double x) { return x * x * std::cos(d * x) / (2.0 * kPi); }, -kPi, kPi, 1e-13)
                              .value;
    CHECK_THAT(specfun::kernel_entry(d), WithinAbs(oracle, 1e-12));
  }
  const auto k = build_kernel(3);
  CHECK_THAT(k.entries(0, 0), WithinRel(kPi2 / 3.0, 1e-15));
  CHECK_THAT(k.entries(0, 1), WithinRel(-2.0, 1e-15));
  CHECK_THAT(k.entries(0, 2), WithinRel(0.5, 1e-15));
  CHECK_THAT(k.entries(3, 0), WithinRel(-2.0 / 9.0, 1e-15));
  CHECK_THROWS_AS(build_kernel(0), DomainError);
}

TEST_CASE("kernel is positive definite") {
  for (int M = 1; M <= 64; ++M) CHECK(build_kernel(M).smallest_eigenvalue() > 0.0);
}

TEST_CASE("smallest kernel eigenvalue scaling") {
  double prev_m = 0.0;
  double prev_m2 = INFINITY;
  for (int M : {8, 16, 32, 64, 128}) {
    const double lam = build_kernel(M).smallest_eigenvalue();
    const double a = lam * M * M;
    const double b = lam * (M + 2.0) * (M + 2.0);
    // lambda M^2 rises toward pi^2 from below, lambda (M+2)^2 falls toward it from above
    CHECK(a > prev_m);
    CHECK(a < kPi2);
    CHECK(b < prev_m2);
    CHECK(b > 9.0);
    CHECK(b > kPi2);
    prev_m = a;
    prev_m2 = b;
  }
}

TEST_CASE("sine state") {
  for (int M : {1, 4, 10, 33}) {
    const auto s = sine_state(M);
    CHECK_THAT(single_phase_cost(s), WithinRel(cost_by_quadrature(s), 1e-10));
    CHECK(single_phase_cost(s) >= build_kernel(M).smallest_eigenvalue());
  }
  const double c100 = single_phase_cost(sine_state(100)) * 102.0 * 102.0;
  CHECK(c100 >= kPi2);
  CHECK(c100 <= 1.05 * kPi2);
  CHECK_THROWS_AS(sine_state(0), DomainError);
  CHECK_THROWS_AS(SinglePhaseState(2, {1.0, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(single_phase_cost(sine_state(3), build_kernel(4)), DomainError);
}

TEST_CASE("n00n state is far worse than the sine state") {
  const int M = 10;
  std::vector<double> c(M + 1, 0.0);
  c[0] = c[M] = 1.0 / std::sqrt(2.0);
  const SinglePhaseState noon(M, c);
  CHECK_THAT(single_phase_cost(noon), WithinRel(kPi2 / 3.0 + 2.0 / (M * M), 1e-14));
  CHECK_THAT(single_phase_cost(noon), WithinRel(cost_by_quadrature(noon), 1e-10));
  CHECK(single_phase_cost(sine_state(M)) < 0.1 * single_phase_cost(noon));
}

TEST_CASE("separate optimal cost") {
  CHECK_THAT(separate_optimal_cost(3, 30), WithinRel(3.0 * build_kernel(10).smallest_eigenvalue(), 1e-14));
  CHECK_THROWS_AS(separate_optimal_cost(3, 32), DomainError);
  double prev = 0.0;
  for (int N : {16, 32, 64, 128}) {
    const double v = separate_optimal_cost(1, N) * N * N;
    CHECK(v > prev);
    CHECK(v < kPi2);
    prev = v;
  }
  CHECK(prev > 0.97 * kPi2);
}

TEST_CASE("composition weights") {
  const auto w = composition_weights(3, 2, 1.5);
  REQUIRE(w.size() == 3);
  CHECK(w[0] == 0.0);
  CHECK(w[1] == 0.0);
  CHECK_THAT(w[2], WithinRel(1.0, 1e-15));
  const auto w2 = composition_weights(2, 5, 1.5);
  CHECK_THAT(w2[4], WithinRel(64.0, 1e-15));

  const int N = 6;
  const double a = 1.2;
  const auto dp = composition_weights(4, N, a);
  std::vector<double> brute(N + 1, 0.0);
  for (int x = 0; x <= N; ++x)
    for (int y = 0; x + y <= N; ++y)
      for (int z = 0; x + y + z <= N; ++z)
        brute[static_cast<std::size_t>(x + y + z)] += std::pow(x, 2 * a) * std::pow(y, 2 * a) * std::pow(z, 2 * a);
  for (int s = 0; s <= N; ++s) CHECK_THAT(dp[static_cast<std::size_t>(s)], WithinAbs(brute[static_cast<std::size_t>(s)], 1e-9 * (1.0 + brute[static_cast<std::size_t>(s)])));
  CHECK_THROWS_AS(composition_weights(1, 4, 1.5), DomainError);
}

TEST_CASE("reduced joint cost matches brute force over the lattice") {
  for (int p = 1; p <= 3; ++p) {
    for (int N = p + 1; N <= 10; ++N) {
      for (auto [a, b] : {std::pair{1.5, std::sqrt(static_cast<double>(p))}, std::pair{0.8, 2.5}}) {
        const auto st = ansatz_lattice_state(p, N, a, b);
        const double brute = brute_force_joint_cost(st);
        CHECK_THAT(joint_ansatz_cost_discrete(p, N, a, b), WithinRel(brute, 1e-12));
        CHECK_THAT(lattice_joint_cost(st), WithinRel(brute, 1e-12));
      }
    }
  }
}

TEST_CASE("ansatz vanishes on small lattices") {
  CHECK_THROWS_AS(ansatz_lattice_state(3, 3, 1.5, 1.7), DomainError);
  CHECK_THROWS_AS(joint_ansatz_cost_discrete(3, 3, 1.5, 1.7), DomainError);
  CHECK_NOTHROW(ansatz_lattice_state(3, 4, 1.5, 1.7));
}

TEST_CASE("arms contribute equally") {
  const auto st = ansatz_lattice_state(3, 9, 1.5, std::sqrt(3.0));
  const double a0 = lattice_arm_cost(st, 0);
  CHECK_THAT(lattice_arm_cost(st, 1), WithinRel(a0, 1e-12));
  CHECK_THAT(lattice_arm_cost(st, 2), WithinRel(a0, 1e-12));
  CHECK_THROWS_AS(lattice_arm_cost(st, 3), DomainError);
}

TEST_CASE("discrete joint cost converges to the continuous cost") {
  const double cont = continuous::ansatz_cost(continuous::AnsatzState::asymptotic(2), 1);
  double prev = INFINITY;
  for (int N : {20, 64, 128}) {
    const double ratio = joint_ansatz_cost_discrete(2, N, 1.5, std::sqrt(2.0)) * N * N / cont;
    CHECK(std::abs(ratio - 1.0) < std::abs(prev - 1.0));
    prev = ratio;
  }
  CHECK(std::abs(prev - 1.0) < 1e-3);
}

TEST_CASE("joint advantage grows with N") {
  double prev = INFINITY;
  for (int N : {16, 32, 64, 128}) {
    const double r = advantage_ratio(2, N);
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev < 1.0);
  CHECK(advantage_ratio(8, 128) < advantage_ratio(4, 64));
  CHECK(advantage_ratio(4, 64) < advantage_ratio(2, 32));
}

TEST_CASE("clamping to the region never hurts") {
  const auto s = sine_state(32);
  const double free_cost = single_phase_cost(s);
  CHECK_THAT(clamped_estimator_cost(s, 2.0 * kPi, 0.0), WithinRel(free_cost, 1e-9));
  for (double d : {0.25, 0.5, 1.0, 2.0, 3.0, kPi}) {
    for (double frac : {-1.0, -0.5, 0.0, 0.3, 1.0}) {
      CHECK(clamped_estimator_cost(s, d, frac * d / 2.0) <= free_cost * (1.0 + 1e-12));
    }
  }
  CHECK_THROWS_AS(clamped_estimator_cost(s, 1.0, 0.6), DomainError);
  CHECK_THROWS_AS(clamped_estimator_cost(s, 7.0, 0.0), DomainError);
}

TEST_CASE("clamping can hurt once the region exceeds half the circle") {
  // an outcome just past -d/2 lies circularly close to theta = d/2 but is sent
  // to the far border
  const auto s = sine_state(32);
  CHECK(clamped_estimator_cost(s, 6.0, 3.0) > single_phase_cost(s));
}

TEST_CASE("clamped cost agrees with sampled outcomes") {
  const auto s = sine_state(32);
  const double d = 1.0;
  const double theta = 0.3;
  const auto xs = montecarlo::covariant_outcomes(s, theta, 400000, montecarlo::SeededSampler(99));
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : xs) {
    const double e = discrete::detail::circular_distance(discrete::detail::clamp_to_region(x, d), theta);
    sum += e * e;
    sum_sq += e * e * e * e;
  }
  const double n = static_cast<double>(xs.size());
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / (n - 1.0));
  CHECK(std::abs(mean - clamped_estimator_cost(s, d, theta)) < 4.0 * se);
}
