#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace campanato {

// Root of the library's error hierarchy.  The three branches below mirror the
// CLI exit codes: input problems (1), self-map certification failures (2),
// and numeric non-convergence (3).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- input / domain problems -------------------------------------------

struct InputError : Error {
    using Error::Error;
};

struct ParseError : InputError {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : InputError(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

// Wrong number of arguments to a symbol-expression atom or combinator.
struct ArityError : ParseError {
    using ParseError::ParseError;
};

// Evaluation point too close to the boundary for a supremum-grid quantity.
struct NearBoundaryImage : InputError {
    using InputError::InputError;
};

// Counting-function target collides with the critical value at the origin.
struct TargetAtPhiZero : InputError {
    using InputError::InputError;
};

// Test-function parameter outside the range the fixed truncation budget covers.
struct TruncationBudgetExceeded : InputError {
    using InputError::InputError;
};

// Level set resolved into more arcs than the capacity optimizer accepts.
struct TooManyArcs : InputError {
    using InputError::InputError;
};

// Rational normal form would exceed the configured polynomial degree budget.
struct DegreeBudgetExceeded : InputError {
    using InputError::InputError;
};

// An operation's documented precondition fails (e.g. a vanishing-at-zero
// hypothesis checked to 1e-12).
struct PreconditionViolated : InputError {
    using InputError::InputError;
};

// ---- certification failures ----------------------------------------------

struct CertificationError : Error {
    using Error::Error;
};

// The candidate symbol is not (certifiably) an analytic self-map of the disk.
struct NotSelfMap : CertificationError {
    using CertificationError::CertificationError;
};

// ---- numeric non-convergence ---------------------------------------------

struct NumericError : Error {
    using Error::Error;
};

// Möbius-type denominator within 1e-15 of zero at the evaluation point.
struct DegenerateDenominator : NumericError {
    using NumericError::NumericError;
};

struct QuadratureNonConvergent : NumericError {
    using NumericError::NumericError;
};

// Recovered Taylor coefficients fail to decay below the stability floor.
struct CoefficientRecoveryUnstable : NumericError {
    using NumericError::NumericError;
};

struct RootFindingDiverged : NumericError {
    using NumericError::NumericError;
};

// A quadrature callback produced NaN or infinity.
struct NonFiniteSample : NumericError {
    using NumericError::NumericError;
};

}  // namespace campanato
