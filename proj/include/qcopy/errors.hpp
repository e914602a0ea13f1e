#pragma once

#include <stdexcept>
#include <string>

namespace qcopy {

// Malformed arguments: dimension mismatches, bad subsystem indices,
// unnormalized inputs.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A quantity that should be positive semidefinite has a genuinely
// negative eigenvalue.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Machine parameters outside the admissible region (e.g. a Gram matrix
// that is not positive semidefinite).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Candidate image columns do not form an isometry.
class IsometryError : public std::invalid_argument {
 public:
  enum class Kind { norm, orthogonality };

  IsometryError(Kind kind, double violation, const std::string& what)
      : std::invalid_argument(what), kind_(kind), violation_(violation) {}

  Kind kind() const noexcept { return kind_; }
  double violation() const noexcept { return violation_; }

 private:
  Kind kind_;
  double violation_;
};

// A solver was asked for a parameter that no admissible machine achieves.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Post-selection on an outcome with (numerically) zero probability.
class DegenerateConditioningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Command-line misuse; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcopy
