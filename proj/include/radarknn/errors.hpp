#ifndef RADARKNN_ERRORS_HPP
#define RADARKNN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rknn {

// Base class for all library failures. Subclasses distinguish bad input
// (ConfigError and friends) from numerical breakdown at run time.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid configuration or argument values detected before any computation.
struct ConfigError : Error {
    using Error::Error;
};

struct DimensionMismatch : ConfigError {
    using ConfigError::ConfigError;
};

struct InvalidCombinatorics : ConfigError {
    using ConfigError::ConfigError;
};

struct InsufficientTrials : ConfigError {
    using ConfigError::ConfigError;
};

struct DegenerateVector : ConfigError {
    using ConfigError::ConfigError;
};

// Numerical failures: the inputs were admissible but the computation broke.
struct NumericalError : Error {
    using Error::Error;
};

struct NotPositiveDefinite : NumericalError {
    using NumericalError::NumericalError;
};

struct TransformSingularity : NumericalError {
    using NumericalError::NumericalError;
};

struct SeriesNonConvergence : NumericalError {
    using NumericalError::NumericalError;
};

struct QuadratureNonConvergence : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace rknn

#endif
