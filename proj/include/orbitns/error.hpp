#pragma once

#include <stdexcept>
#include <string>

namespace orbitns {

/// Raised when a size or tuning parameter is outside its admissible range.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an argument lies outside the mathematical domain of an operation
/// (e.g. a mode outside the truncated lattice, or the zero wavevector).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a state violates reality, incompressibility or coverage.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the time integrator when a non-finite value appears.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(long step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

}  // namespace orbitns
