#pragma once

#include <stdexcept>
#include <string>

namespace sinkhorn {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed rational / matrix / polynomial text input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// An operation that needs a nonzero polynomial received the zero polynomial.
class ZeroPolynomialError : public Error {
public:
    using Error::Error;
};

/// Division of polynomials or rational functions by the zero polynomial.
class DivisionByZeroPolynomialError : public Error {
public:
    using Error::Error;
};

/// A symmetric-only operation received a matrix that is not bit-for-bit symmetric.
class NotSymmetricError : public Error {
public:
    using Error::Error;
};

/// All five quartic coefficients vanish; the equation carries no information.
class DegenerateQuarticError : public Error {
public:
    using Error::Error;
};

/// No positive root of the quartic admits a feasible scaling reconstruction.
class NoValidRootError : public Error {
public:
    using Error::Error;
};

/// The diagonal-reconstruction quadratic has no all-positive solution.
class NoPositiveSolutionError : public Error {
public:
    using Error::Error;
};

/// First-row parameters of the termination generator violate their constraints.
class InvalidRowError : public Error {
public:
    using Error::Error;
};

/// Perturbation parameter of the termination generator outside (-1, 1/2) or zero.
class InvalidTError : public Error {
public:
    using Error::Error;
};

/// A symbolic computation exceeded the configured degree cap.
class ExpressionTooLargeError : public Error {
public:
    using Error::Error;
};

} // namespace sinkhorn
