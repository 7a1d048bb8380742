#pragma once

#include <stdexcept>
#include <string>

namespace photonwave {

// Bad arguments, malformed config, k off the lattice, shape mismatches.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A field violates a structural constraint (trace, divergence, ...) beyond
// tolerance. Carries the offending residual.
class ConstraintError : public std::runtime_error {
 public:
  ConstraintError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The total current four-vector is null (or too close to null) and the
// probability-density pathway is not defined.
class NullTotalCurrentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace photonwave
