#include <catch2/catch.hpp>

#include <cmath>
#include <span>

#include "phaselimit/continuous.hpp"
#include "phaselimit/discrete.hpp"
#include "phaselimit/montecarlo.hpp"

using namespace phaselimit;
using namespace phaselimit::montecarlo;
using Catch::Matchers::WithinRel;

namespace {

double first_coordinate(std::span<const double> x) { return x[0]; }

} // namespace

TEST_CASE("sampler streams are deterministic and distinct") {
  SeededSampler a(5);
  SeededSampler b(5);
  SeededSampler c(6);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    differs = differs || x != c.uniform();
  }
  CHECK(differs);
  auto s0 = SeededSampler(5).stream(0);
  auto s1 = SeededSampler(5).stream(1);
  CHECK(s0.uniform() != s1.uniform());
}

TEST_CASE("simplex integration") {
  const SeededSampler rng(1);
  const auto vol = simplex_integrate([](std::span<const double>) { return 1.0; }, 3, 1000, rng);
  CHECK_THAT(vol.value, WithinRel(1.0 / 6.0, 1e-14));
  CHECK(vol.std_error == 0.0);
  const auto m = simplex_integrate(first_coordinate, 2, 400000, rng);
  CHECK(std::abs(m.value - 1.0 / 6.0) < 4.0 * m.std_error);
  const auto nan = simplex_integrate([](std::span<const double> x) { return x[0] < 0.5 ? 1.0 : NAN; }, 1, 1000, rng);
  CHECK(nan.rejected > 0);
  CHECK_THROWS_AS(simplex_integrate(first_coordinate, 0, 1000, rng), DomainError);
}

TEST_CASE("results do not depend on the thread count") {
  const SeededSampler rng(12345);
  const auto one = simplex_integrate(first_coordinate, 3, 300000, rng, 1);
  const auto four = simplex_integrate(first_coordinate, 3, 300000, rng, 4);
  CHECK(one.value == four.value);
  CHECK(one.std_error == four.std_error);
  const auto s = continuous::AnsatzState::asymptotic(3);
  const auto p1 = sample_photon_numbers(s, 20000, rng, 1);
  const auto p4 = sample_photon_numbers(s, 20000, rng, 4);
  CHECK(p1.mean_arm.value == p4.mean_arm.value);
  CHECK(p1.correlation.value == p4.correlation.value);
}

TEST_CASE("standard error halves when samples quadruple") {
  const SeededSampler rng(77);
  const auto a = simplex_integrate(first_coordinate, 2, 250000, rng);
  const auto b = simplex_integrate(first_coordinate, 2, 1000000, rng);
  CHECK_THAT(a.std_error / b.std_error, WithinRel(2.0, 0.2));
}

TEST_CASE("photon sampling reproduces closed-form statistics") {
  const SeededSampler rng(12345);
  const auto s1 = sample_photon_numbers(continuous::AnsatzState::asymptotic(1), 1000000, rng);
  const auto e1 = continuous::photon_statistics(1, 1);
  CHECK(std::abs(s1.mean_arm.value - e1.mean_arm) < 4.0 * s1.mean_arm.std_error);
  CHECK(std::abs(s1.mean_reference.value - e1.mean_reference) < 4.0 * s1.mean_reference.std_error);
  CHECK(std::isnan(s1.correlation.value));
  CHECK_FALSE(s1.simplex_violation);

  const auto s4 = sample_photon_numbers(continuous::AnsatzState::asymptotic(4), 1000000, rng);
  const auto e4 = continuous::photon_statistics(4, 1);
  CHECK(std::abs(s4.mean_arm.value - e4.mean_arm) < 4.0 * s4.mean_arm.std_error);
  CHECK(std::abs(s4.correlation.value - e4.correlation) < 4.0 * s4.correlation.std_error);
  CHECK(s4.acceptance > 0.0);
  CHECK(s4.acceptance < 1.0);
  CHECK_FALSE(s4.simplex_violation);
}

TEST_CASE("photon sampling refuses a hopeless envelope") {
  CHECK_THROWS_AS(sample_photon_numbers(continuous::AnsatzState::asymptotic(12), 1000, SeededSampler(1)),
                  ConvergenceError);
}

TEST_CASE("ansatz density normalization by sampling") {
  const auto s = continuous::AnsatzState::asymptotic(2);
  const auto e = simplex_integrate([&](std::span<const double> x) { return ansatz_density(s, x); }, 2, 4000000,
                                   SeededSampler(12345));
  CHECK(std::abs(e.value - continuous::ansatz_norm(s)) < 4.0 * e.std_error);
}

TEST_CASE("covariant measurement sampling") {
  const auto st = discrete::sine_state(16);
  const auto e = sample_covariant_outcome(st, 0.0, 1000000, SeededSampler(12345));
  CHECK(std::abs(e.value - discrete::single_phase_cost(st)) < 4.0 * e.std_error);
  const auto shifted = sample_covariant_outcome(st, 1.1, 1000000, SeededSampler(12345));
  CHECK(std::abs(shifted.value - discrete::single_phase_cost(st)) < 4.0 * shifted.std_error);
  // a single photon-number state carries no phase: outcomes are uniform
  const discrete::SinglePhaseState flat(0, {1.0});
  const auto u = sample_covariant_outcome(flat, 0.0, 1000000, SeededSampler(12345));
  CHECK(std::abs(u.value - std::numbers::pi * std::numbers::pi / 3.0) < 3.0 * u.std_error);
  const auto xs = covariant_outcomes(st, 0.0, 1000, SeededSampler(3));
  for (double x : xs) {
    CHECK(x >= -std::numbers::pi);
    CHECK(x <= std::numbers::pi);
  }
}
