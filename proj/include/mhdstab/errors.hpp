#pragma once

#include <stdexcept>
#include <string>

namespace mhdstab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A field contains NaN/Inf coefficients or is otherwise unusable.
struct InvalidFieldError : Error {
    using Error::Error;
};

/// A homogeneous multiplier with negative order hit a nonzero k=0 mode.
struct DegenerateModeError : Error {
    using Error::Error;
};

/// Pointwise density (or temperature) dropped below the admissibility floor.
struct VacuumError : Error {
    using Error::Error;
};

/// An operation's stated precondition was violated by the caller.
struct PreconditionError : Error {
    using Error::Error;
};

/// Bad configuration value; message names the offending field path.
struct ConfigError : Error {
    using Error::Error;
};

/// An internal numerical routine (eigensolver, fit) failed to converge.
struct NumericalError : Error {
    using Error::Error;
};

/// Initial-data preparation could not satisfy the admissibility constraints.
struct PreparationError : Error {
    using Error::Error;
};

/// Zero or otherwise unusable background field.
struct InvalidBackgroundError : Error {
    using Error::Error;
};

} // namespace mhdstab
