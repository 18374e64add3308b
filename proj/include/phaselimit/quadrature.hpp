#pragma once

// Thin wrappers over Boost.Math quadrature with the library's error idiom.

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "phaselimit/errors.hpp"

namespace phaselimit::quadrature {

struct Result {
  double value;
  double error;
};

/// Adaptive Gauss-Kronrod (15/31) on [a, b]; a or b may be infinite.
/// Throws ConvergenceError if the error estimate exceeds rel_tol * L1 norm
/// (with an absolute floor of abs_tol).
template <class F>
Result integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-12, double abs_tol = 0.0,
                          unsigned max_depth = 30) {
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, max_depth, rel_tol, &error, &l1);
  if (!std::isfinite(value) || error > std::max(rel_tol * l1, abs_tol) * 10.0)
    throw ConvergenceError("quadrature: error estimate " + std::to_string(error) +
                           " exceeds tolerance on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  return {value, error};
}

/// Composite 20-point Gauss-Legendre on `panels` equal sub-intervals.
template <class F>
double integrate_composite(F&& f, double a, double b, int panels) {
  const double width = (b - a) / panels;
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    sum += boost::math::quadrature::gauss<double, 20>::integrate(f, lo, lo + width);
  }
  return sum;
}

} // namespace phaselimit::quadrature
