#pragma once

#include <stdexcept>
#include <string>

namespace subfinsler {

/// Base class for domain errors raised by the numerical kernels.
/// CLI maps these to exit code 2.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConvexityViolation : DomainError {
  double theta;
  ConvexityViolation(double theta_, const std::string& msg)
      : DomainError(msg), theta(theta_) {}
};

struct CaseMismatch : DomainError {
  using DomainError::DomainError;
};

struct SingularCoframe : DomainError {
  using DomainError::DomainError;
};

struct ZeroMultiplier : DomainError {
  using DomainError::DomainError;
};

struct InsufficientTrace : DomainError {
  using DomainError::DomainError;
};

struct StepUnderflow : DomainError {
  using DomainError::DomainError;
};

struct RootIsolationFailure : DomainError {
  using DomainError::DomainError;
};

struct ProfileMismatch : DomainError {
  using DomainError::DomainError;
};

struct DegenerateSegment : DomainError {
  using DomainError::DomainError;
};

struct NotClosed : DomainError {
  using DomainError::DomainError;
};

}  // namespace subfinsler
