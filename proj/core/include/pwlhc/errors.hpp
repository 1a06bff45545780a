#pragma once

#include <stdexcept>
#include <string>

namespace pwlhc {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Word construction/validation failures (empty word, bad symbol).
struct WordError : Error {
  using Error::Error;
};

// Matrix/vector dimension mismatch.
struct DimensionError : Error {
  using Error::Error;
};

// The two pieces disagree off the first column, so the map would be
// discontinuous across the switching manifold.
struct ContinuityError : Error {
  ContinuityError(int column_, double magnitude_)
      : Error("continuity violation: column " + std::to_string(column_) +
              " of A_R - A_L has magnitude " + std::to_string(magnitude_)),
        column(column_),
        magnitude(magnitude_) {}
  int column;
  double magnitude;
};

// 1 is (numerically) an eigenvalue of the cycle matrix, so the affine
// fixed-point system is singular and the cycle is not unique.
struct DegenerateCycleError : Error {
  using Error::Error;
};

// The eigenvalue ordering 0 <= beta < lambda2 < 1 < lambda1 (with the two
// leading eigenvalues real and simple) does not hold; the message names the
// violated inequality.
struct EigenConditionError : Error {
  using Error::Error;
};

// |e1^T zeta1| is below tolerance: the unstable direction is tangent to the
// switching manifold and the intersection point is undefined.
struct TransversalityError : Error {
  using Error::Error;
};

// Orbit window too short for the requested construction.
struct WindowError : Error {
  using Error::Error;
};

// Configuration / serialization problems (bad JSON, missing fields).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace pwlhc
