#pragma once

#include <stdexcept>
#include <string>

namespace tritter {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix has the wrong shape (non-square, odd dimension, mode-count mismatch).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A mode index lies outside the covariance matrix.
class RangeError : public Error {
public:
    using Error::Error;
};

/// A parameter lies outside its domain (lambda >= 1, T outside [0, 1], ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Input fails a structural check (non-unitary matrix, overlapping partition).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The conditioning block of a Schur complement is singular.
class SingularBlockError : public Error {
public:
    using Error::Error;
};

/// Eigen-solver failure or broken +/- pairing of a symplectic spectrum.
class NumericError : public Error {
public:
    using Error::Error;
};

/// No closed form exists for the requested measure/context.
class UnsupportedFormulaError : public Error {
public:
    using Error::Error;
};

/// Malformed user input (measure grammar, complex literal, JSON payload).
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace tritter
