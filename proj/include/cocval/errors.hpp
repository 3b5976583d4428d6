#pragma once

#include <stdexcept>
#include <string>

namespace cocval {

// Precondition violated by an argument (probability outside (0,1), beta <= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The capital equation rho(r Z - X) = 0 has no nonnegative root.
class NoSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The operation is not available for the given distributions
// (e.g. survival-function quadrature on a claim with negative support).
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cocval
