#pragma once

#include <stdexcept>
#include <string>

namespace twistkit {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data violates a documented precondition (ill-conditioned frame,
/// covector off the constraint manifold, negative counts, ...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A Lagrangian crossing whose relative crossing form is singular.
class DegenerateCrossing : public Error {
 public:
  DegenerateCrossing(double time, const std::string& what)
      : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Root or dimension-jump isolation failed at the configured resolution.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Numerical integration (ODE or quadrature) lost accuracy.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// The circle action is undefined on the zero-section.
class ZeroSectionError : public Error {
 public:
  using Error::Error;
};

/// Rotation axis of a circle action vanished.
class AxisError : public Error {
 public:
  using Error::Error;
};

/// Chart evaluated at the puncture of a punctured disc.
class PunctureError : public Error {
 public:
  using Error::Error;
};

/// A loop or path came too close to the branch curve.
class ProximityError : public Error {
 public:
  using Error::Error;
};

/// Profile function does not satisfy its defining conditions.
class ProfileConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Intersection count could not be certified.
class CountUncertain : public Error {
 public:
  using Error::Error;
};

/// Spectral-sequence query about a cell that is zero on the first page.
class VacuousInput : public Error {
 public:
  using Error::Error;
};

/// Operation refused because its input is not of the required kind.
class Refusal : public Error {
 public:
  using Error::Error;
};

/// Sampling grid is degenerate (repeated points, zero tangents).
class GridError : public Error {
 public:
  using Error::Error;
};

}  // namespace twistkit
