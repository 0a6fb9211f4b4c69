#pragma once

#include <optional>

#include "sinkhorn/matrix.hpp"

namespace sinkhorn {

/// Outcome of a scaling run: the (approximate or exact) limit S with the
/// accumulated diagonal factors, S = X * A * Y. One half-step is a single
/// application of the row or column normalization.
template <class Scalar>
struct ScalingResult {
    Matrix<Scalar> limit;            // S
    DiagonalFactor<Scalar> row_factor; // X
    DiagonalFactor<Scalar> col_factor; // Y
    long half_steps = 0;
    Scalar residual{0};
    bool terminated_finitely = false; // residual is exactly zero in exact arithmetic
    bool converged = false;           // residual <= tol within the step budget
};

/// Alternating normalization R, C, R, C, ... starting with a row step, until
/// the matrix is doubly stochastic within tol or the half-step budget runs
/// out. Running past the budget is a reportable outcome, not an error: the
/// partial result is returned with converged = false.
template <class Scalar>
ScalingResult<Scalar> sinkhorn_iterate(const Matrix<Scalar>& a, const Scalar& tol, long max_half_steps) {
    Matrix<Scalar> cur = a;
    auto x = DiagonalFactor<Scalar>::identity(a.size());
    auto y = DiagonalFactor<Scalar>::identity(a.size());
    long steps = 0;
    bool row_turn = true;
    Scalar residual = stochastic_residual(cur);
    while (!(residual <= tol) && steps < max_half_steps) {
        if (row_turn) {
            auto [m, d] = row_normalize(cur);
            cur = std::move(m);
            x = d.compose(x);
        } else {
            auto [m, d] = col_normalize(cur);
            cur = std::move(m);
            y = y.compose(d);
        }
        ++steps;
        row_turn = !row_turn;
        residual = stochastic_residual(cur);
    }
    ScalingResult<Scalar> result{std::move(cur), std::move(x), std::move(y), steps, residual, false, false};
    result.converged = result.residual <= tol;
    if constexpr (std::is_same_v<Scalar, Rational>) {
        result.terminated_finitely = result.residual.is_zero();
    }
    return result;
}

/// Runs the alternating iteration in exact arithmetic and reports the first
/// half-step count at which the matrix is exactly doubly stochastic (0 if the
/// input already is), or nothing within max_half_steps.
std::optional<long> detect_finite_termination(const Matrix<Rational>& a, long max_half_steps);

/// Symmetric balancing: finds X with X * A * X doubly stochastic for
/// symmetric positive A (requires entrywise-equal symmetry). Damped
/// multiplicative fixed point x_i <- sqrt(x_i / (Ax)_i) from
/// x_i = 1/sqrt(rowsum_i); the square-root damping avoids the 2-cycle of the
/// undamped update. Stops when max_i |x_i * (Ax)_i - 1| <= tol. In the
/// result, col_factor equals row_factor and half_steps counts fixed-point
/// sweeps.
ScalingResult<BigFloat> symmetric_balance(const Matrix<BigFloat>& a, const BigFloat& tol, long max_steps);

/// Convenience overload: converts an exact symmetric matrix to floats at
/// `prec` bits and balances it.
ScalingResult<BigFloat> symmetric_balance(const Matrix<Rational>& a, mpfr_prec_t prec, const BigFloat& tol,
                                          long max_steps);

} // namespace sinkhorn
