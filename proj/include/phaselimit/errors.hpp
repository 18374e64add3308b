#pragma once

#include <stdexcept>
#include <string>

namespace phaselimit {

/// Input outside the mathematical domain of an operation (e.g. p not dividing N).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// An iterative procedure (root finder, eigen-iteration, quadrature) failed to
/// reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

} // namespace detail
} // namespace phaselimit
