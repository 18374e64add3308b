#pragma once

// Seeded stochastic oracles: uniform simplex integration, photon-fraction
// sampling from the ansatz density, and covariant-measurement outcomes.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "phaselimit/continuous.hpp"
#include "phaselimit/discrete.hpp"
#include "phaselimit/errors.hpp"

namespace phaselimit::montecarlo {

/// Deterministic generator: mt19937_64 per stream, streams derived from the
/// seed with splitmix64. Identical seeds give bit-identical streams.
class SeededSampler {
public:
  explicit SeededSampler(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

  /// Independent sampler for stream k.
  [[nodiscard]] SeededSampler stream(std::uint64_t k) const {
    SeededSampler s(seed_);
    s.engine_.seed(mix(seed_ ^ mix(k + 0x632be59bd9b4e019ULL)));
    return s;
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

struct Estimate {
  double value;
  double std_error;
  long rejected = 0;  // non-finite integrand values dropped
};

namespace detail {

/// Runs body(chunk) for every chunk, on up to `threads` workers. Each chunk
/// owns its output slot, so the merged result does not depend on scheduling.
inline void for_each_chunk(std::size_t chunks, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || chunks <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, chunks); ++t)
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < chunks; c = next++) body(c);
    });
  for (auto& th : pool) th.join();
}

/// Uniform point on {x_i >= 0, sum x_i <= 1}: spacings of sorted uniforms.
inline void uniform_simplex_point(SeededSampler& rng, std::vector<double>& u, std::vector<double>& x) {
  for (double& v : u) v = rng.uniform();
  std::sort(u.begin(), u.end());
  double prev = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    x[i] = u[i] - prev;
    prev = u[i];
  }
}

inline constexpr long kChunk = 1L << 16;

} // namespace detail

/// Integral of f over the unit p-simplex: mean over uniform points times 1/p!.
inline Estimate simplex_integrate(const std::function<double(std::span<const double>)>& f, int p, long samples,
                                  const SeededSampler& sampler, unsigned threads = 1) {
  phaselimit::detail::require(p >= 1 && samples >= 2, "simplex_integrate: need p >= 1 and at least two samples");
  const auto chunks = static_cast<std::size_t>((samples + detail::kChunk - 1) / detail::kChunk);
  struct Partial {
    double sum = 0.0;
    double sum_sq = 0.0;
    long count = 0;
    long rejected = 0;
  };
  std::vector<Partial> parts(chunks);
  detail::for_each_chunk(chunks, threads, [&](std::size_t c) {
    auto rng = sampler.stream(c);
    const long begin = static_cast<long>(c) * detail::kChunk;
    const long end = std::min(samples, begin + detail::kChunk);
    std::vector<double> u(static_cast<std::size_t>(p));
    std::vector<double> x(static_cast<std::size_t>(p));
    Partial& part = parts[c];
    for (long i = begin; i < end; ++i) {
      detail::uniform_simplex_point(rng, u, x);
      const double v = f(std::span<const double>(x));
      if (!std::isfinite(v)) {
        ++part.rejected;
        continue;
      }
      part.sum += v;
      part.sum_sq += v * v;
      ++part.count;
    }
  });
  Partial total;
  for (const auto& part : parts) {
    total.sum += part.sum;
    total.sum_sq += part.sum_sq;
    total.count += part.count;
    total.rejected += part.rejected;
  }
  phaselimit::detail::require(total.count >= 2, "simplex_integrate: fewer than two finite integrand values");
  const double n = static_cast<double>(total.count);
  const double mean = total.sum / n;
  const double var = std::max(0.0, (total.sum_sq / n - mean * mean) * n / (n - 1.0));
  double volume = 1.0;
  for (int k = 2; k <= p; ++k) volume /= k;
  return {mean * volume, std::sqrt(var / n) * volume, total.rejected};
}

/// |f|^2 of an ansatz state at a simplex point.
inline double ansatz_density(const continuous::AnsatzState& s, std::span<const double> mu) {
  double rest = 1.0;
  double logv = 0.0;
  for (double m : mu) {
    if (m <= 0.0) return 0.0;
    logv += 2.0 * s.alpha * std::log(m);
    rest -= m;
  }
  if (rest <= 0.0) return 0.0;
  return std::exp(logv + 2.0 * s.beta * std::log(rest));
}

struct PhotonSample {
  Estimate mean_arm;        // E[mu_1], a fraction of N
  Estimate mean_reference;  // E[1 - sum mu]
  Estimate correlation;     // corr(mu_1, mu_2); NaN for p = 1
  double acceptance;
  bool simplex_violation;   // true if any sample left the simplex
};

/// Rejection sampling from |f(mu)|^2 with a uniform envelope at the density
/// maximum. The log-density is concave and symmetric in the arms, so the
/// maximum sits on the diagonal at mu_i = alpha / (p alpha + beta).
inline PhotonSample sample_photon_numbers(const continuous::AnsatzState& s, long samples,
                                          const SeededSampler& sampler, unsigned threads = 1) {
  constexpr std::size_t kBatches = 100;
  phaselimit::detail::require(samples >= static_cast<long>(kBatches) * 2, "sample_photon_numbers: too few samples");
  const int p = s.p;
  const double t = s.alpha / (p * s.alpha + s.beta);
  const std::vector<double> peak_point(static_cast<std::size_t>(p), t);
  const double peak = ansatz_density(s, peak_point);
  double volume = 1.0;
  for (int k = 2; k <= p; ++k) volume /= k;
  const double expected_acceptance = continuous::ansatz_norm(s) / (peak * volume);
  if (!(expected_acceptance >= 1e-4))
    throw ConvergenceError("sample_photon_numbers: envelope acceptance " + std::to_string(expected_acceptance) +
                           " below 1e-4");

  struct Batch {
    double s1 = 0, s2 = 0, sr = 0, s11 = 0, s22 = 0, s12 = 0, srr = 0;
    long n = 0;
    long proposals = 0;
    bool violation = false;
  };
  std::vector<Batch> batches(kBatches);
  detail::for_each_chunk(kBatches, threads, [&](std::size_t b) {
    auto rng = sampler.stream(b);
    const long target = samples / static_cast<long>(kBatches) + (static_cast<long>(b) < samples % static_cast<long>(kBatches));
    std::vector<double> u(static_cast<std::size_t>(p));
    std::vector<double> x(static_cast<std::size_t>(p));
    Batch& out = batches[b];
    while (out.n < target) {
      detail::uniform_simplex_point(rng, u, x);
      ++out.proposals;
      if (rng.uniform() * peak >= ansatz_density(s, x)) continue;
      double rest = 1.0;
      for (double v : x) rest -= v;
      if (rest < 0.0) out.violation = true;
      const double m1 = x[0];
      const double m2 = p >= 2 ? x[1] : 0.0;
      out.s1 += m1;
      out.s2 += m2;
      out.sr += rest;
      out.s11 += m1 * m1;
      out.s22 += m2 * m2;
      out.s12 += m1 * m2;
      out.srr += rest * rest;
      ++out.n;
    }
  });

  Batch all;
  std::vector<double> batch_corr;
  for (const auto& b : batches) {
    all.s1 += b.s1;
    all.s2 += b.s2;
    all.sr += b.sr;
    all.s11 += b.s11;
    all.s22 += b.s22;
    all.s12 += b.s12;
    all.srr += b.srr;
    all.n += b.n;
    all.proposals += b.proposals;
    all.violation = all.violation || b.violation;
    if (p >= 2) {
      const double n = static_cast<double>(b.n);
      const double c12 = b.s12 / n - (b.s1 / n) * (b.s2 / n);
      const double v1 = b.s11 / n - (b.s1 / n) * (b.s1 / n);
      const double v2 = b.s22 / n - (b.s2 / n) * (b.s2 / n);
      batch_corr.push_back(c12 / std::sqrt(v1 * v2));
    }
  }
  const double n = static_cast<double>(all.n);
  auto mean_estimate = [n](double sum, double sum_sq) {
    const double m = sum / n;
    const double var = std::max(0.0, (sum_sq / n - m * m) * n / (n - 1.0));
    return Estimate{m, std::sqrt(var / n)};
  };
  PhotonSample out{mean_estimate(all.s1, all.s11), mean_estimate(all.sr, all.srr),
                   {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()},
                   n / static_cast<double>(all.proposals), all.violation};
  if (p >= 2) {
    const double c12 = all.s12 / n - (all.s1 / n) * (all.s2 / n);
    const double v1 = all.s11 / n - (all.s1 / n) * (all.s1 / n);
    const double v2 = all.s22 / n - (all.s2 / n) * (all.s2 / n);
    double bm = 0.0;
    for (double c : batch_corr) bm += c;
    bm /= static_cast<double>(batch_corr.size());
    double bv = 0.0;
    for (double c : batch_corr) bv += (c - bm) * (c - bm);
    bv /= static_cast<double>(batch_corr.size() - 1);
    out.correlation = {c12 / std::sqrt(v1 * v2), std::sqrt(bv / static_cast<double>(batch_corr.size()))};
  }
  return out;
}

namespace detail {

/// CDF of the covariant outcome density on nodes x_j = -pi + 2 pi j / grid.
inline std::vector<double> outcome_cdf(const discrete::SinglePhaseState& s, double theta, long grid) {
  const int M = s.M;
  std::vector<double> a(static_cast<std::size_t>(M + 1), 0.0);
  for (int d = 0; d <= M; ++d)
    for (int m = 0; m + d <= M; ++m)
      a[static_cast<std::size_t>(d)] += s.coefficients[static_cast<std::size_t>(m)] * s.coefficients[static_cast<std::size_t>(m + d)];
  std::vector<double> cdf(static_cast<std::size_t>(grid + 1));
  const double lo = -std::numbers::pi;
  for (long j = 0; j <= grid; ++j) {
    const double x = lo + 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid);
    double v = a[0] * (x - lo);
    for (int d = 1; d <= M; ++d)
      v += 2.0 * a[static_cast<std::size_t>(d)] * (std::sin(d * (x - theta)) - std::sin(d * (lo - theta))) / d;
    cdf[static_cast<std::size_t>(j)] = v / (2.0 * std::numbers::pi);
  }
  // the top node equals 1 up to rounding; force exact monotone closure
  for (long j = 1; j <= grid; ++j)
    cdf[static_cast<std::size_t>(j)] = std::max(cdf[static_cast<std::size_t>(j)], cdf[static_cast<std::size_t>(j - 1)]);
  const double top = cdf.back();
  for (double& v : cdf) v /= top;
  return cdf;
}

inline double inverse_cdf(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  const auto j = static_cast<long>(std::clamp<std::ptrdiff_t>(it - cdf.begin(), 1, static_cast<std::ptrdiff_t>(cdf.size()) - 1));
  const double c0 = cdf[static_cast<std::size_t>(j - 1)];
  const double c1 = cdf[static_cast<std::size_t>(j)];
  const double frac = c1 > c0 ? (u - c0) / (c1 - c0) : 0.5;
  const long grid = static_cast<long>(cdf.size()) - 1;
  return -std::numbers::pi + 2.0 * std::numbers::pi * (static_cast<double>(j - 1) + frac) / static_cast<double>(grid);
}

inline Estimate circular_cost_from_uniforms(const std::vector<double>& cdf, const std::vector<double>& u, double theta) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : u) {
    const double e = discrete::detail::circular_distance(inverse_cdf(cdf, v), theta);
    sum += e * e;
    sum_sq += e * e * e * e;
  }
  const double n = static_cast<double>(u.size());
  const double m = sum / n;
  return {m, std::sqrt(std::max(0.0, (sum_sq / n - m * m) / (n - 1.0)))};
}

} // namespace detail

/// Covariant measurement outcomes in [-pi, pi), drawn by inverse CDF on `grid` nodes.
inline std::vector<double> covariant_outcomes(const discrete::SinglePhaseState& s, double theta, long samples,
                                              const SeededSampler& sampler, long grid = 1L << 20) {
  phaselimit::detail::require(samples >= 1 && grid >= 2, "covariant_outcomes: need samples >= 1 and grid >= 2");
  const auto cdf = detail::outcome_cdf(s, theta, grid);
  auto rng = sampler.stream(0);
  std::vector<double> x(static_cast<std::size_t>(samples));
  for (double& v : x) v = detail::inverse_cdf(cdf, rng.uniform());
  return x;
}

/// Mean squared circular error of covariant outcomes, sampled by inverse CDF.
/// The grid starts at 2^16 nodes and doubles until the estimate moves by less
/// than 0.1 standard errors (at most 2^22 nodes).
inline Estimate sample_covariant_outcome(const discrete::SinglePhaseState& s, double theta, long samples,
                                         const SeededSampler& sampler) {
  phaselimit::detail::require(samples >= 2, "sample_covariant_outcome: need at least two samples");
  auto rng = sampler.stream(0);
  std::vector<double> u(static_cast<std::size_t>(samples));
  for (double& v : u) v = rng.uniform();
  long grid = 1L << 16;
  Estimate prev = detail::circular_cost_from_uniforms(detail::outcome_cdf(s, theta, grid), u, theta);
  while (grid < (1L << 22)) {
    grid *= 2;
    const Estimate next = detail::circular_cost_from_uniforms(detail::outcome_cdf(s, theta, grid), u, theta);
    if (std::abs(next.value - prev.value) < 0.1 * next.std_error) return next;
    prev = next;
  }
  throw ConvergenceError("sample_covariant_outcome: grid refinement did not settle by 2^22 nodes");
}

} // namespace phaselimit::montecarlo
