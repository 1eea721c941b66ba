#pragma once

#include <stdexcept>
#include <string>

namespace forge {

/// Base class for every error thrown by the library. Domain and
/// precondition failures derive from this; plain std::invalid_argument
/// is reserved for out-of-range call arguments (e.g. t outside [0,1]).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// The input map has an eigenvalue on (or within tolerance of) the real
/// axis, i.e. it sits on the bad boundary of the domain.
class RealEigenvalueError : public Error {
 public:
  using Error::Error;
};

/// A linear solve lost too much accuracy (clustered spectrum near the
/// real axis, near-singular Sylvester system, ...).
class IllConditionedError : public Error {
 public:
  using Error::Error;
};

class RankDeficientError : public Error {
 public:
  using Error::Error;
};

/// The plane is outside the chart N(P): it meets P^perp or projects to P
/// orientation-reversingly.
class NotInChartError : public Error {
 public:
  using Error::Error;
};

/// J does not preserve the given plane.
class NotInvariantError : public Error {
 public:
  using Error::Error;
};

/// A sampled base grazes the bad cone (rank drop or a real eigenvalue of
/// the tangent map).
class TangencyError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// A subspace meets its complex conjugate away from the origin.
class NotTransverseError : public Error {
 public:
  using Error::Error;
};

/// Principal-angle profiles differ beyond tolerance; no aligning isometry
/// exists.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown in the scissors decomposition (a real or imaginary
/// part collapsed; cannot occur for a genuine transverse split).
class DegenerateSplitError : public Error {
 public:
  using Error::Error;
};

/// The transversality minimization returned a non-positive value, which
/// signals inconsistent inputs (e.g. J is not the structure attached to A).
class NonPositiveMarginError : public Error {
 public:
  using Error::Error;
};

/// The bump exponent needed to certify the fibration exceeds the cap.
class ExponentOverflowError : public Error {
 public:
  using Error::Error;
};

/// No radius in the germ-extension schedule produced a clean report.
class ExtensionFailedError : public Error {
 public:
  using Error::Error;
};

class GermInvalidError : public Error {
 public:
  using Error::Error;
};

/// The complex structure is not orthogonal where an orthogonal one is
/// required (Hopf fibre construction).
class NotOrthogonalError : public Error {
 public:
  using Error::Error;
};

class NotUnitError : public Error {
 public:
  using Error::Error;
};

/// A value failed its type invariant at construction.
class InvariantViolationError : public Error {
 public:
  using Error::Error;
};

}  // namespace forge
