#include <catch2/catch.hpp>

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "phaselimit/qfi.hpp"

using namespace phaselimit;
using namespace phaselimit::qfi;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Tr F^{-1} for the vacuum-plus-n00n family from the spectrum of
// 4 n^2 (t I - t^2 J): eigenvalue 4 n^2 t (p - 1 times) and 4 n^2 t (1 - p t).
double family_trace(int p, int n, double t) {
  const double s = 4.0 * n * n * t;
  return (p - 1) / s + 1.0 / (s * (1.0 - p * t));
}

void all_indices(int p, int n, std::vector<MultiIndex>& out, MultiIndex& cur, int axis, int left) {
  if (axis == p) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= left; ++v) {
    cur[static_cast<std::size_t>(axis)] = v;
    all_indices(p, n, out, cur, axis + 1, left - v);
  }
}

} // namespace

TEST_CASE("QFI matrix of a single-arm n00n state") {
  const auto d = family_state(1, 7, 0.5);
  const auto f = qfi_matrix(d);
  CHECK_THAT(f.F(0, 0), WithinRel(49.0, 1e-14));
  CHECK_THAT(f.trace_of_inverse(), WithinRel(1.0 / 49.0, 1e-14));
}

TEST_CASE("QFI matrix of the family") {
  const int p = 3;
  const int n = 5;
  const double t = 0.2;
  const auto f = qfi_matrix(family_state(p, n, t)).F;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      const double expect = 4.0 * n * n * ((i == j ? t : 0.0) - t * t);
      CHECK_THAT(f(i, j), WithinAbs(expect, 1e-12));
    }
  }
  CHECK_THAT(qfi_matrix(family_state(p, n, t)).trace_of_inverse(), WithinRel(family_trace(p, n, t), 1e-12));
}

TEST_CASE("optimal family weight") {
  for (int p : {1, 2, 3, 5, 6, 10}) {
    const int n = 8;
    const auto opt = optimal_qfi_state(p, n);
    const double tr = qfi_matrix(opt).trace_of_inverse();
    CHECK_THAT(tr, WithinRel(cr_joint_cost(p, n, 1), 1e-12));
    const auto m = minimize_family_trace(p, n);
    CHECK_THAT(m.value, WithinRel(cr_joint_cost(p, n, 1), 1e-12));
    CHECK_THAT(m.t, WithinRel(1.0 / (p + std::sqrt(static_cast<double>(p))), 1e-6));
  }
}

TEST_CASE("no distribution beats the optimal joint cost") {
  std::mt19937_64 rng(11);
  std::exponential_distribution<double> ex(1.0);
  for (int p : {2, 3}) {
    const int n = 4;
    std::vector<MultiIndex> idx;
    MultiIndex cur(static_cast<std::size_t>(p), 0);
    all_indices(p, n, idx, cur, 0, n);
    for (int trial = 0; trial < 2000; ++trial) {
      std::map<MultiIndex, double> w;
      double total = 0.0;
      for (const auto& m : idx) {
        const double v = std::pow(ex(rng), 4.0);
        w[m] = v;
        total += v;
      }
      for (auto& [m, v] : w) v /= total;
      const double tr = qfi_matrix(PhotonDistribution(p, n, w)).trace_of_inverse();
      CHECK(tr >= cr_joint_cost(p, n, 1) * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("singular QFI") {
  CHECK(std::isinf(qfi_matrix(family_state(2, 3, 0.0)).trace_of_inverse()));
  std::map<MultiIndex, double> w{{{0, 0}, 0.5}, {{3, 0}, 0.5}};
  CHECK(std::isinf(qfi_matrix(PhotonDistribution(2, 3, w)).trace_of_inverse()));
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(PhotonDistribution(2, 3, {{{0, 0}, 0.5}}), DomainError);
  CHECK_THROWS_AS(PhotonDistribution(2, 3, {{{4, 0}, 1.0}}), DomainError);
  CHECK_THROWS_AS(PhotonDistribution(2, 3, {{{1}, 1.0}}), DomainError);
  CHECK_THROWS_AS(PhotonDistribution(2, 3, {{{-1, 1}, 1.0}}), DomainError);
  CHECK_THROWS_AS(family_state(2, 3, 0.6), DomainError);
}

TEST_CASE("repeated-shot costs") {
  CHECK_THAT(cr_joint_cost(4, 10, 5), WithinRel(9.0 * 4.0 / (4.0 * 500.0), 1e-14));
  CHECK_THAT(cr_separate_cost(4, 10, 8), WithinRel(16.0 / 800.0, 1e-14));
  CHECK_THROWS_AS(cr_separate_cost(3, 10, 8), DomainError);
  CHECK_THAT(cr_joint_cost(1, 10, 6), WithinRel(cr_separate_cost(1, 10, 6), 1e-14));
  for (int p = 2; p <= 12; ++p) CHECK(cr_joint_cost(p, 10, 60 * p) < cr_separate_cost(p, 10, 60 * p));
}

TEST_CASE("cost table") {
  const auto t = table1(10, 1000, 100, 10);
  REQUIRE(t.size() == 12);
  int main_cells = 0;
  for (const auto& c : t) {
    if (!c.supplementary) ++main_cells;
    CHECK(c.available);
  }
  CHECK(main_cells == 9);
  CHECK_THAT(t[0].value, WithinRel(1e-3, 1e-14));
  CHECK_THAT(t[4].value, WithinRel(specfun::heisenberg_constant() * 1e-3, 1e-14));
  CHECK_THAT(t[7].value, WithinRel(std::numbers::pi * std::numbers::pi * 1e-3, 1e-14));
  CHECK_THAT(t[8].value, WithinRel(1e-3, 1e-14));
  CHECK(t[4].value < t[9].value);
  CHECK(t[9].value < t[7].value);
  // the large-p joint forms underestimate the exact finite-p costs
  CHECK(t[3].value < t[10].value);
  CHECK(t[5].value < t[11].value);

  const auto odd = table1(3, 1000, 100, 10);
  CHECK_FALSE(odd[6].available);
  CHECK(std::isnan(odd[6].value));
  CHECK_FALSE(odd[8].available);
  CHECK(to_string(odd[8].strategy) == "separate");
  CHECK(to_string(odd[8].regime) == "HS");
}
