#pragma once

#include <stdexcept>
#include <string>

namespace radlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs that violate a documented precondition. The CLI maps these to exit 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Failures of the numerics on valid inputs. The CLI maps these to exit 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DomainMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class BadGrid : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Adaptive step size fell below the minimum, or the step budget ran out.
class StepFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonFinite : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// The shooting map has constant sign over the scanned amplitude bracket.
class NoBracket : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// No sign change of u before the configured maximum radius.
class NoZero : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A finite-difference stencil touches a critical point of u where phi_p' degenerates.
class DerivativeSingularity : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace radlab
