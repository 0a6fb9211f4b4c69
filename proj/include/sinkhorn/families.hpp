#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "sinkhorn/matrix.hpp"
#include "sinkhorn/rational_function.hpp"

namespace sinkhorn {

/// Square matrix whose entries are univariate rational functions of the
/// family parameter; all entries are kept reduced.
class SymbolicMatrix {
public:
    explicit SymbolicMatrix(int n);

    int size() const { return n_; }
    RationalFunction& at(int i, int j);
    const RationalFunction& at(int i, int j) const;

    RationalFunction row_sum(int i) const;
    RationalFunction col_sum(int j) const;

    /// Entrywise evaluation at a rational parameter value; all entries must
    /// be pole-free and positive there.
    Matrix<Rational> eval(const Rational& r) const;

    int max_degree() const;

private:
    int n_;
    std::vector<RationalFunction> e_;
};

/// One-parameter family: all-ones 3x3 except the (1,1) entry r(r+1)/2; r > 0.
Matrix<Rational> ar_matrix(const Rational& r);
SymbolicMatrix ar_matrix_symbolic();

/// Closed-form scaling limit of ar_matrix(r): first row
/// (r/(r+2), 1/(r+2), 1/(r+2)), remaining rows (1/(r+2), (r+1)/(2(r+2)), ...).
Matrix<Rational> ar_limit(const Rational& r);
SymbolicMatrix ar_limit_symbolic();

/// Diagonal factor sqrt(2/((r+1)(r+2))) * diag(1, (r+1)/2, (r+1)/2) with
/// X A X equal to the closed-form limit.
DiagonalFactor<BigFloat> ar_diagonal(const Rational& r, mpfr_prec_t prec = BigFloat::default_precision());

/// Exact values of the diagonal entries where the square root is rational.
std::array<std::optional<Rational>, 3> ar_diagonal_exact(const Rational& r);

/// The squares of the diagonal entries as rational functions of r; these make
/// the identity X A X = S checkable exactly despite the square root.
std::array<RationalFunction, 3> ar_diagonal_squared_symbolic();

/// (C o R)^k applied symbolically to the one-parameter family matrix.
/// Throws ExpressionTooLargeError when any entry's numerator or denominator
/// degree exceeds degree_cap.
SymbolicMatrix double_step_symbolic(int k, int degree_cap = 2000);

/// Reduced difference (sum of row 1) - (sum of row 2) after k symbolic
/// double steps; identically zero exactly at the fixed points of the family.
RationalFunction row_sum_difference(int k, int degree_cap = 2000);

/// Comparison of the integer-normalized numerator of row_sum_difference(k)
/// against the closed form 3((r+2)(r-1))^{2k}: proportional iff they agree up
/// to a constant, with that constant reported.
struct NumeratorComparison {
    UniPoly numerator;   // integer-normalized numerator of the difference
    UniPoly denominator; // integer-normalized denominator
    UniPoly target;      // 3((r+2)(r-1))^{2k}
    bool proportional = false;
    std::optional<Rational> scale; // numerator == scale * target
};
NumeratorComparison compare_row_sum_numerator(int k, int degree_cap = 2000);

/// A positive integer matrix M whose alternating normalization reaches an
/// exactly doubly stochastic matrix after finitely many half-steps, with the
/// intermediate row-stochastic A = R(M) and the limit S = C(A).
struct TerminationExample {
    Matrix<Rational> m;
    Matrix<Rational> a;
    Matrix<Rational> s;
    long half_steps = 2;
};

/// Builds a two-half-step example from a first row (positive, summing to 1,
/// every entry < 2/3) and a perturbation t in (-1, 1/2) \ {0}: S is the
/// singular doubly stochastic matrix with rows (row1, (1/3,1/3,1/3),
/// (2/3)1 - row1), and A = S diag(1 + t v) for a right-kernel vector v of S,
/// rescaled so t's bounds keep 1 + t v positive. Throws InvalidRowError /
/// InvalidTError.
TerminationExample generate_finite_termination(const std::array<Rational, 3>& row1, const Rational& t);

/// Deterministic sampler over the generator's feasible region; the same
/// (seed, index) always yields the same example.
TerminationExample sample_finite_termination(std::uint64_t seed, std::uint64_t index);

} // namespace sinkhorn
