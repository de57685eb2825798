#pragma once

#include <stdexcept>
#include <string>

namespace surfvortex {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |phi'| fell below the conformality threshold.
class SingularMapError : public Error {
 public:
  using Error::Error;
};

/// Metric density was not strictly positive.
class InvalidMetricError : public Error {
 public:
  using Error::Error;
};

/// Point outside every chart, or no chart contains both points.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at (or numerically at) a singular point of a kernel.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or coefficient extraction did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Two vortices came closer than the collision threshold.
class CollisionError : public Error {
 public:
  using Error::Error;
};

/// A time step could not be completed (chart failure, implicit solve).
class StepFailure : public Error {
 public:
  using Error::Error;
};

/// A vortex lies on (or too close to) a homology cycle representative.
class VortexOnCycleError : public Error {
 public:
  using Error::Error;
};

}  // namespace surfvortex
