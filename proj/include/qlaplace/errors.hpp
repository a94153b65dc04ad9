#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qlaplace {

// Base class for recoverable numerical failures. Hard contract violations
// (pole arguments, empty grids, q outside its admissible window) throw
// std::domain_error / std::invalid_argument instead.
struct NumericsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature ran out of subdivisions before meeting the tolerance.
// Carries the best value obtained so callers can still report it.
struct QuadratureError : NumericsError {
    QuadratureError(const std::string& msg, std::complex<double> v, double err)
        : NumericsError(msg), value(v), abs_err(err) {}
    std::complex<double> value;
    double abs_err;
};

// Integrand fails the tail-decay pre-check; the integral diverges or is too
// slowly convergent for the configured budget.
struct DivergenceError : NumericsError {
    using NumericsError::NumericsError;
};

// Requested parameters fall outside a special function's supported region.
struct UnsupportedRegionError : NumericsError {
    using NumericsError::NumericsError;
};

// A special-function evaluation cannot reach its required accuracy inside
// the validated envelope.
struct AccuracyError : NumericsError {
    using NumericsError::NumericsError;
};

// Series truncation left the partial sum numerically meaningless (last
// retained term dominates the first).
struct InstabilityError : NumericsError {
    using NumericsError::NumericsError;
};

// Finite-difference stencil evaluation failed.
struct StencilError : NumericsError {
    using NumericsError::NumericsError;
};

// Inversion node doubling failed to reduce the error estimate.
struct OscillationError : NumericsError {
    using NumericsError::NumericsError;
};

// The equivalence-family normalization tie has no solution.
struct NoSolutionError : NumericsError {
    using NumericsError::NumericsError;
};

}  // namespace qlaplace
