#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sinkhorn/engine.hpp"
#include "sinkhorn/matrix.hpp"
#include "sinkhorn/polynomial.hpp"
#include "sinkhorn/roots.hpp"

namespace sinkhorn {

/// The five exact coefficients of the scaling quartic
/// c4*z^4 + c3*z^3 + c2*z^2 + c1*z + c0 = 0 in z = s11/a11, together with the
/// construction that produced them.
struct QuarticSpec {
    std::array<Rational, 5> c; // c[k] multiplies z^k
    std::string provenance;

    bool degenerate() const {
        for (const auto& q : c) {
            if (!q.is_zero()) {
                return false;
            }
        }
        return true;
    }

    UniPoly poly() const { return UniPoly(std::vector<Rational>(c.begin(), c.end())); }
};

/// Raw coefficient evaluations; never throw on degeneracy so callers can
/// inspect the all-zero case directly.
std::array<Rational, 5> quartic_generic_coeffs(const Matrix<Rational>& a);
std::array<Rational, 5> quartic_kl_coeffs(const Rational& k, const Rational& l);
std::array<Rational, 5> quartic_klm_coeffs(const Rational& k, const Rational& l, const Rational& m);

/// Quartic for a generic symmetric positive 3x3 matrix, coefficients
/// evaluated exactly at its entries. Throws NotSymmetricError, and
/// DegenerateQuarticError when every coefficient vanishes (rank-1 inputs).
QuarticSpec build_quartic_generic(const Matrix<Rational>& a);

/// Quartic for the pattern (K,1,1 / 1,L,1 / 1,1,1); K, L > 0.
QuarticSpec build_quartic_kl(const Rational& k, const Rational& l);

/// Quartic for the pattern (K,1,1 / 1,L,1 / 1,1,M); K, L, M > 0.
QuarticSpec build_quartic_klm(const Rational& k, const Rational& l, const Rational& m);

/// The pattern matrices the specialized quartics describe.
Matrix<Rational> kl_matrix(const Rational& k, const Rational& l);
Matrix<Rational> klm_matrix(const Rational& k, const Rational& l, const Rational& m);

/// The scaling limit of a 3x3 symmetric matrix reconstructed from a root z of
/// its quartic: X = diag(x1, x2, x3) with x1 = sqrt(z), S = X * A * X, and the
/// per-row balance residuals |x_i * (Ax)_i - 1|.
struct ExactLimit3 {
    BigFloat z;
    Matrix<BigFloat> limit;          // S
    DiagonalFactor<BigFloat> factor; // X
    std::array<BigFloat, 3> row_residuals;
};

/// Solves the balance system for x2, x3 given x1 = sqrt(z): row 1 fixes a
/// linear relation between x2 and x3, row 2 then gives a quadratic in x2; the
/// all-positive branch is taken (ties broken by the row-3 residual). Throws
/// NoPositiveSolutionError when no branch is positive, which marks z as not a
/// scaling root.
ExactLimit3 reconstruct_limit(const Matrix<Rational>& a, const BigFloat& z);

struct SelectedRoot {
    RootInterval interval;
    BigFloat z;
    std::optional<Rational> z_exact; // present when z is rational
    int feasible_count = 1;          // > 1 means the numeric oracle broke a tie
};

/// Picks, among all positive roots of the quartic, the one whose
/// reconstruction is feasible (all limit entries in (0,1), positive diagonal).
/// If several roots pass, the one closest to s11/a11 from a high-precision
/// numeric run wins. Throws NoValidRootError / DegenerateQuarticError.
SelectedRoot select_sinkhorn_root(const QuarticSpec& q, const Matrix<Rational>& a,
                                  mpfr_prec_t prec = BigFloat::default_precision());

/// Full exact-limit computation for a 3x3 symmetric matrix.
struct Exact3Result {
    std::optional<QuarticSpec> quartic;
    std::optional<SelectedRoot> root;
    std::optional<ExactLimit3> algebraic;       // quartic path
    std::optional<Matrix<Rational>> rank1_limit; // degenerate rank-1 fallback: exact S
    std::optional<DiagonalFactor<BigFloat>> rank1_factor;
    std::optional<ScalingResult<BigFloat>> numeric_fallback; // degenerate, not rank-1
    std::optional<BigFloat> oracle_delta; // |z - s11_numeric/a11| on the quartic path
    std::vector<std::string> warnings;
};

/// Quartic path with rank-1 / numeric fallbacks for degenerate inputs. When
/// `quartic` is empty the generic construction is used; the KL/KLM front ends
/// pass their specialized quartic together with the pattern matrix.
Exact3Result exact_limit3(const Matrix<Rational>& a, std::optional<QuarticSpec> quartic = std::nullopt,
                          mpfr_prec_t prec = BigFloat::default_precision());

/// True iff A = v v^T for some positive vector v (checked exactly).
bool is_rank_one(const Matrix<Rational>& a);

} // namespace sinkhorn
