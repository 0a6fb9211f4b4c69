#include "sinkhorn/engine.hpp"

namespace sinkhorn {

std::optional<long> detect_finite_termination(const Matrix<Rational>& a, long max_half_steps) {
    const Rational zero(0);
    Matrix<Rational> cur = a;
    if (is_doubly_stochastic(cur, zero)) {
        return 0;
    }
    bool row_turn = true;
    for (long step = 1; step <= max_half_steps; ++step) {
        cur = row_turn ? row_normalize(cur).matrix : col_normalize(cur).matrix;
        row_turn = !row_turn;
        if (is_doubly_stochastic(cur, zero)) {
            return step;
        }
    }
    return std::nullopt;
}

namespace {

std::vector<BigFloat> matvec(const Matrix<BigFloat>& a, const std::vector<BigFloat>& x) {
    const int n = a.size();
    std::vector<BigFloat> ax;
    ax.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        BigFloat s = a.at(i, 0) * x[0];
        for (int j = 1; j < n; ++j) {
            s += a.at(i, j) * x[static_cast<std::size_t>(j)];
        }
        ax.push_back(std::move(s));
    }
    return ax;
}

BigFloat balance_residual(const std::vector<BigFloat>& x, const std::vector<BigFloat>& ax) {
    const BigFloat one(1);
    BigFloat worst(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        BigFloat dev = (x[i] * ax[i] - one).abs();
        if (dev > worst) {
            worst = std::move(dev);
        }
    }
    return worst;
}

} // namespace

ScalingResult<BigFloat> symmetric_balance(const Matrix<BigFloat>& a, const BigFloat& tol, long max_steps) {
    if (!a.is_symmetric()) {
        throw NotSymmetricError("symmetric_balance requires an entrywise-symmetric matrix");
    }
    const int n = a.size();
    std::vector<BigFloat> x;
    x.reserve(static_cast<std::size_t>(n));
    for (const auto& s : a.row_sums()) {
        x.push_back(BigFloat(1) / s.sqrt());
    }
    auto ax = matvec(a, x);
    BigFloat residual = balance_residual(x, ax);
    long steps = 0;
    while (!(residual <= tol) && steps < max_steps) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = (x[i] / ax[i]).sqrt();
        }
        ++steps;
        ax = matvec(a, x);
        residual = balance_residual(x, ax);
    }
    DiagonalFactor<BigFloat> xf(x);
    Matrix<BigFloat> s = scale_cols(scale_rows(xf, a), xf);
    ScalingResult<BigFloat> result{std::move(s), xf, xf, steps, residual, false, false};
    result.converged = result.residual <= tol;
    return result;
}

ScalingResult<BigFloat> symmetric_balance(const Matrix<Rational>& a, mpfr_prec_t prec, const BigFloat& tol,
                                          long max_steps) {
    if (!a.is_symmetric()) {
        throw NotSymmetricError("symmetric_balance requires an entrywise-symmetric matrix");
    }
    return symmetric_balance(to_float(a, prec), tol, max_steps);
}

} // namespace sinkhorn
