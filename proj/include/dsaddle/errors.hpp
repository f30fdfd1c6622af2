// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace dsaddle {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A matrix required to be symmetric positive definite is not.
struct NotSpdError : Error {
  using Error::Error;
};

/// An iterative eigenvalue sweep exceeded its iteration cap.
struct NoConvergenceError : Error {
  using Error::Error;
};

/// A polynomial expected to have only real roots has complex ones.
struct ComplexRootsError : Error {
  using Error::Error;
};

struct DimensionError : Error {
  using Error::Error;
};

/// A dense materialization would exceed the configured order budget.
struct BudgetError : Error {
  using Error::Error;
};

struct DegenerateIntervalError : Error {
  using Error::Error;
};

/// A bound recipe needs a measured quantity that was not supplied.
struct MissingMeasurementError : Error {
  using Error::Error;
};

/// A refinement valid only for square invertible C was requested with m != p.
struct NotSquareError : Error {
  using Error::Error;
};

/// Random-system construction could not hit the requested spectral targets.
struct TargetInfeasibleError : Error {
  using Error::Error;
};

/// A structural invariant of an input object does not hold.
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace dsaddle
