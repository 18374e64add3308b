#pragma once

// Ground state of the Dirichlet Laplacian on the unit p-simplex by finite
// differences (second-order star stencil), inverse iteration and CG solves.

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "phaselimit/errors.hpp"

namespace phaselimit::simplexwell {

/// Interior lattice points h*j of the simplex {x_i > 0, sum x_i < 1}, h = 1/R.
class SimplexGrid {
public:
  SimplexGrid(int p, int R) : p_(p), R_(R) {
    phaselimit::detail::require(p >= 1 && p <= 3, "SimplexGrid: p must be 1, 2 or 3");
    phaselimit::detail::require(R >= 3, "SimplexGrid: resolution too small");
    std::size_t cells = 1;
    for (int i = 0; i < p; ++i) cells *= static_cast<std::size_t>(R + 1);
    offset_.assign(cells, -1);
    std::vector<int> j(static_cast<std::size_t>(p), 1);
    enumerate(j, 0, R - 1);
    neighbors_.resize(points_.size() * 2 * static_cast<std::size_t>(p));
    for (std::size_t n = 0; n < points_.size(); ++n) {
      for (int axis = 0; axis < p; ++axis) {
        for (int dir = 0; dir < 2; ++dir) {
          std::vector<int> q = points_[n];
          q[static_cast<std::size_t>(axis)] += dir == 0 ? -1 : 1;
          neighbors_[n * 2 * static_cast<std::size_t>(p) + static_cast<std::size_t>(2 * axis + dir)] = index_of(q);
        }
      }
    }
  }

  [[nodiscard]] int p() const { return p_; }
  [[nodiscard]] int resolution() const { return R_; }
  [[nodiscard]] double h() const { return 1.0 / R_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] const std::vector<int>& point(std::size_t n) const { return points_[n]; }

  /// Linear index of lattice point j, or -1 when j is on or outside the boundary.
  [[nodiscard]] long index_of(const std::vector<int>& j) const {
    int total = 0;
    std::size_t flat = 0;
    for (int v : j) {
      if (v <= 0) return -1;
      total += v;
      flat = flat * static_cast<std::size_t>(R_ + 1) + static_cast<std::size_t>(v);
    }
    if (total >= R_) return -1;
    return offset_[flat];
  }

  /// y = -Laplacian_h x with zero boundary values.
  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    const double inv_h2 = static_cast<double>(R_) * R_;
    const std::size_t stride = 2 * static_cast<std::size_t>(p_);
    y.assign(x.size(), 0.0);
    for (std::size_t n = 0; n < points_.size(); ++n) {
      double acc = static_cast<double>(stride) * x[n];
      for (std::size_t k = 0; k < stride; ++k) {
        const long nb = neighbors_[n * stride + k];
        if (nb >= 0) acc -= x[static_cast<std::size_t>(nb)];
      }
      y[n] = acc * inv_h2;
    }
  }

private:
  void enumerate(std::vector<int>& j, std::size_t axis, int left) {
    if (axis == j.size()) {
      std::size_t flat = 0;
      for (int v : j) flat = flat * static_cast<std::size_t>(R_ + 1) + static_cast<std::size_t>(v);
      offset_[flat] = static_cast<long>(points_.size());
      points_.push_back(j);
      return;
    }
    const int remaining_axes = static_cast<int>(j.size() - axis - 1);
    for (int v = 1; v <= left - remaining_axes; ++v) {
      j[axis] = v;
      enumerate(j, axis + 1, left - v);
    }
  }

  int p_;
  int R_;
  std::vector<std::vector<int>> points_;
  std::vector<long> offset_;
  std::vector<long> neighbors_;
};

struct GroundState {
  double energy;
  int iterations;
  std::vector<double> vector;  // unit Euclidean norm, positive
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

/// Conjugate gradients for the SPD stencil operator.
inline std::vector<double> cg_solve(const SimplexGrid& g, const std::vector<double>& b, double rel_tol) {
  std::vector<double> x(b.size(), 0.0);
  std::vector<double> r = b;
  std::vector<double> d = r;
  std::vector<double> q;
  double rr = dot(r, r);
  const double stop = rel_tol * rel_tol * rr;
  const int max_iter = 20 * static_cast<int>(b.size()) + 100;
  for (int it = 0; it < max_iter && rr > stop; ++it) {
    g.apply(d, q);
    const double step = rr / dot(d, q);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += step * d[i];
      r[i] -= step * q[i];
    }
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = r[i] + beta * d[i];
  }
  if (rr > stop) throw ConvergenceError("simplexwell: conjugate gradients did not converge");
  return x;
}

} // namespace detail

/// Lowest eigenpair of the discrete Dirichlet Laplacian, by inverse iteration
/// until ||A v - E v|| / E < tol.
inline GroundState ground_state(const SimplexGrid& g, double tol = 1e-10, int max_iterations = 500) {
  const std::size_t n = g.size();
  std::vector<double> v(n);
  // symmetric positive start: product of barycentric coordinates
  for (std::size_t i = 0; i < n; ++i) {
    const auto& j = g.point(i);
    double prod = 1.0;
    int total = 0;
    for (int x : j) {
      prod *= x;
      total += x;
    }
    v[i] = prod * (g.resolution() - total);
  }
  double norm = std::sqrt(detail::dot(v, v));
  for (double& x : v) x /= norm;

  std::vector<double> av;
  for (int it = 1; it <= max_iterations; ++it) {
    std::vector<double> w = detail::cg_solve(g, v, 1e-13);
    norm = std::sqrt(detail::dot(w, w));
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    g.apply(v, av);
    const double energy = detail::dot(v, av);
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res += (av[i] - energy * v[i]) * (av[i] - energy * v[i]);
    if (std::sqrt(res) / energy < tol) return {energy, it, std::move(v)};
  }
  throw ConvergenceError("simplexwell: inverse iteration did not reach tolerance after " +
                         std::to_string(max_iterations) + " iterations");
}

/// Ground energy of -Laplacian on the p-simplex at resolution R (h = 1/R).
inline double ground_energy(int p, int R) {
  phaselimit::detail::require(R >= 8, "ground_energy: resolution must be at least 8");
  return ground_state(SimplexGrid(p, R)).energy;
}

struct Extrapolation {
  double value;
  double error;  // change relative to the extrapolation from the coarser pair
};

/// Richardson extrapolation assuming E(h) = E0 + c h^2 + o(h^2), using the two
/// finest resolutions. The error estimate compares with the next coarser pair.
inline Extrapolation extrapolate_h2(const std::vector<double>& h, const std::vector<double>& energy) {
  phaselimit::detail::require(h.size() == energy.size() && h.size() >= 3,
                              "extrapolate_h2: need at least three (h, E) pairs");
  auto pair = [&](std::size_t a, std::size_t b) {
    const double ha = h[a] * h[a];
    const double hb = h[b] * h[b];
    phaselimit::detail::require(ha != hb, "extrapolate_h2: spacings must differ");
    return (ha * energy[b] - hb * energy[a]) / (ha - hb);
  };
  const std::size_t last = h.size() - 1;
  const double fine = pair(last - 1, last);
  const double coarse = pair(last - 2, last - 1);
  return {fine, std::abs(fine - coarse)};
}

/// Richardson-extrapolated ground energy from increasing resolutions.
inline Extrapolation extrapolated_energy(int p, const std::vector<int>& resolutions) {
  phaselimit::detail::require(resolutions.size() >= 3, "extrapolated_energy: need at least three resolutions");
  std::vector<double> h;
  std::vector<double> e;
  for (std::size_t i = 0; i < resolutions.size(); ++i) {
    phaselimit::detail::require(i == 0 || resolutions[i] > resolutions[i - 1],
                                "extrapolated_energy: resolutions must increase");
    h.push_back(1.0 / resolutions[i]);
    e.push_back(ground_energy(p, resolutions[i]));
  }
  return extrapolate_h2(h, e);
}

} // namespace phaselimit::simplexwell
