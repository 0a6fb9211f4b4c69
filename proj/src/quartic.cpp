#include "sinkhorn/quartic.hpp"

#include <algorithm>

#include "sinkhorn/errors.hpp"

namespace sinkhorn {

namespace {

// One monomial of a quartic coefficient: coef * a11^e0 a12^e1 a13^e2 a22^e3 a23^e4 a33^e5.
// Transcribed term by term; the substitution identities in the test suite
// guard every sign and exponent.
struct MonomialTerm {
    int coef;
    std::array<int, 6> e;
};

const MonomialTerm kZ4Terms[] = {
    {+1, {4, 0, 0, 2, 0, 2}}, {-1, {4, 0, 0, 1, 2, 1}}, {-2, {3, 2, 0, 1, 0, 2}}, {+1, {3, 2, 0, 0, 2, 1}},
    {+2, {3, 1, 1, 1, 1, 1}}, {-2, {3, 0, 2, 2, 0, 1}}, {+1, {3, 0, 2, 1, 2, 0}}, {+1, {2, 4, 0, 0, 0, 2}},
    {-2, {2, 3, 1, 0, 1, 1}}, {+3, {2, 2, 2, 1, 0, 1}}, {-1, {2, 2, 2, 0, 2, 0}}, {-2, {2, 1, 3, 1, 1, 0}},
    {+1, {2, 0, 4, 2, 0, 0}}, {-1, {1, 4, 2, 0, 0, 1}}, {+2, {1, 3, 3, 0, 1, 0}}, {-1, {1, 2, 4, 1, 0, 0}},
};

const MonomialTerm kZ3Terms[] = {
    {-4, {3, 0, 0, 2, 0, 2}}, {+4, {3, 0, 0, 1, 2, 1}}, {+4, {2, 2, 0, 1, 0, 2}}, {-3, {2, 2, 0, 0, 2, 1}},
    {-2, {2, 1, 1, 1, 1, 1}}, {+4, {2, 0, 2, 2, 0, 1}}, {-3, {2, 0, 2, 1, 2, 0}}, {-2, {1, 2, 2, 1, 0, 1}},
    {+2, {1, 2, 2, 0, 2, 0}}, {-1, {0, 4, 2, 0, 0, 1}}, {+2, {0, 3, 3, 0, 1, 0}}, {-1, {0, 2, 4, 1, 0, 0}},
};

const MonomialTerm kZ2Terms[] = {
    {+6, {2, 0, 0, 2, 0, 2}}, {-6, {2, 0, 0, 1, 2, 1}}, {-2, {1, 2, 0, 1, 0, 2}}, {+3, {1, 2, 0, 0, 2, 1}},
    {-2, {1, 1, 1, 1, 1, 1}}, {-2, {1, 0, 2, 2, 0, 1}}, {+3, {1, 0, 2, 1, 2, 0}}, {+2, {0, 3, 1, 0, 1, 1}},
    {-3, {0, 2, 2, 1, 0, 1}}, {-1, {0, 2, 2, 0, 2, 0}}, {+2, {0, 1, 3, 1, 1, 0}},
};

const MonomialTerm kZ1Terms[] = {
    {-4, {1, 0, 0, 2, 0, 2}}, {+4, {1, 0, 0, 1, 2, 1}}, {-1, {0, 2, 0, 0, 2, 1}},
    {+2, {0, 1, 1, 1, 1, 1}}, {-1, {0, 0, 2, 1, 2, 0}},
};

const MonomialTerm kZ0Terms[] = {
    {+1, {0, 0, 0, 2, 0, 2}}, {-1, {0, 0, 0, 1, 2, 1}},
};

template <std::size_t N>
Rational eval_terms(const MonomialTerm (&terms)[N], const std::array<Rational, 6>& a) {
    Rational sum(0);
    for (const auto& t : terms) {
        Rational m(static_cast<long>(t.coef));
        for (int v = 0; v < 6; ++v) {
            if (t.e[static_cast<std::size_t>(v)] > 0) {
                m *= a[static_cast<std::size_t>(v)].pow(static_cast<unsigned long>(t.e[static_cast<std::size_t>(v)]));
            }
        }
        sum += m;
    }
    return sum;
}

void require_3x3_symmetric(const Matrix<Rational>& a) {
    if (a.size() != 3) {
        throw Error("expected a 3x3 matrix");
    }
    if (!a.is_symmetric()) {
        throw NotSymmetricError("expected a symmetric matrix");
    }
}

void require_positive(const Rational& v, const char* name) {
    if (v.sign() <= 0) {
        throw Error(std::string(name) + " must be positive");
    }
}

} // namespace

std::array<Rational, 5> quartic_generic_coeffs(const Matrix<Rational>& a) {
    require_3x3_symmetric(a);
    const std::array<Rational, 6> v = {a.at(0, 0), a.at(0, 1), a.at(0, 2), a.at(1, 1), a.at(1, 2), a.at(2, 2)};
    return {eval_terms(kZ0Terms, v), eval_terms(kZ1Terms, v), eval_terms(kZ2Terms, v), eval_terms(kZ3Terms, v),
            eval_terms(kZ4Terms, v)};
}

std::array<Rational, 5> quartic_kl_coeffs(const Rational& k, const Rational& l) {
    const Rational one(1);
    return {
        l,
        one - Rational(4) * l * k,
        Rational(6) * l * k * k - Rational(2) * l * k - Rational(3) * k - one,
        -(k - one) * (Rational(4) * l * k * k - Rational(3) * k - one),
        k * (k - one).pow(2) * (l * k - one),
    };
}

std::array<Rational, 5> quartic_klm_coeffs(const Rational& k, const Rational& l, const Rational& m) {
    const Rational one(1);
    const Rational two(2);
    const Rational three(3);
    const Rational four(4);
    const Rational six(6);
    const Rational k2 = k * k;
    const Rational k3 = k2 * k;
    const Rational l2 = l * l;
    const Rational m2 = m * m;
    return {
        l * m * (l * m - one),
        -four * k * l2 * m2 + four * k * m * l + two * l * m - l - m,
        six * k2 * l2 * m2 - six * k2 * l * m - two * k * m * l2 - two * k * l * m2 - two * k * m * l + three * l * k +
            three * k * m - three * l * m + two * l + two * m - one,
        -four * k3 * l2 * m2 + four * k3 * l * m + four * k2 * l2 * m + four * k2 * l * m2 - two * k2 * l * m -
            three * k2 * l - three * k2 * m - two * k * m * l + two * k - l - m + two,
        (k * m - one) * k * (l * k - one) * (k * m * l - k - l - m + two),
    };
}

QuarticSpec build_quartic_generic(const Matrix<Rational>& a) {
    QuarticSpec q{quartic_generic_coeffs(a), "generic"};
    if (q.degenerate()) {
        throw DegenerateQuarticError("all quartic coefficients vanish for this matrix");
    }
    return q;
}

QuarticSpec build_quartic_kl(const Rational& k, const Rational& l) {
    require_positive(k, "K");
    require_positive(l, "L");
    QuarticSpec q{quartic_kl_coeffs(k, l), "kl(K=" + k.str() + ",L=" + l.str() + ")"};
    if (q.degenerate()) {
        throw DegenerateQuarticError("all quartic coefficients vanish"); // unreachable: c0 = L > 0
    }
    return q;
}

QuarticSpec build_quartic_klm(const Rational& k, const Rational& l, const Rational& m) {
    require_positive(k, "K");
    require_positive(l, "L");
    require_positive(m, "M");
    QuarticSpec q{quartic_klm_coeffs(k, l, m), "klm(K=" + k.str() + ",L=" + l.str() + ",M=" + m.str() + ")"};
    if (q.degenerate()) {
        throw DegenerateQuarticError("all quartic coefficients vanish, e.g. K=L=M=1");
    }
    return q;
}

Matrix<Rational> kl_matrix(const Rational& k, const Rational& l) {
    require_positive(k, "K");
    require_positive(l, "L");
    const Rational one(1);
    return Matrix<Rational>::from_rows({{k, one, one}, {one, l, one}, {one, one, one}});
}

Matrix<Rational> klm_matrix(const Rational& k, const Rational& l, const Rational& m) {
    require_positive(k, "K");
    require_positive(l, "L");
    require_positive(m, "M");
    const Rational one(1);
    return Matrix<Rational>::from_rows({{k, one, one}, {one, l, one}, {one, one, m}});
}

bool is_rank_one(const Matrix<Rational>& a) {
    require_3x3_symmetric(a);
    return a.at(0, 1) * a.at(0, 1) == a.at(0, 0) * a.at(1, 1) &&
           a.at(0, 2) * a.at(0, 2) == a.at(0, 0) * a.at(2, 2) &&
           a.at(1, 2) * a.at(1, 2) == a.at(1, 1) * a.at(2, 2);
}

ExactLimit3 reconstruct_limit(const Matrix<Rational>& a, const BigFloat& z) {
    require_3x3_symmetric(a);
    if (z.sign() <= 0) {
        throw Error("reconstruct_limit: z must be positive");
    }
    const mpfr_prec_t prec = z.precision();
    const auto f = [&](int i, int j) { return BigFloat::from_rational(a.at(i, j), prec); };
    const BigFloat one(1, prec);

    const BigFloat x1 = z.sqrt();
    // Row 1 balance: x1 * (a11 x1 + a12 x2 + a13 x3) = 1, a linear relation
    //   a12 x2 + a13 x3 = 1/x1 - a11 x1 = beta.
    const BigFloat beta = one / x1 - f(0, 0) * x1;
    // Substituting x3 = (beta - a12 x2)/a13 into the row 2 balance gives
    //   qa x2^2 + qb x2 - 1 = 0 with qa computed exactly from the entries.
    const Rational qa_exact = a.at(1, 1) - a.at(1, 2) * a.at(0, 1) / a.at(0, 2);
    const BigFloat qb = f(0, 1) * x1 + f(1, 2) * beta / f(0, 2);

    std::vector<BigFloat> x2_candidates;
    if (qa_exact.is_zero()) {
        if (qb.sign() > 0) {
            x2_candidates.push_back(one / qb);
        }
    } else {
        const BigFloat qa = BigFloat::from_rational(qa_exact, prec);
        const BigFloat disc = qb * qb + BigFloat(4, prec) * qa;
        if (disc.sign() >= 0) {
            const BigFloat root = disc.sqrt();
            const BigFloat twice_qa = BigFloat(2, prec) * qa;
            x2_candidates.push_back((-qb + root) / twice_qa);
            x2_candidates.push_back((-qb - root) / twice_qa);
        }
    }

    std::optional<std::pair<BigFloat, BigFloat>> best; // (x2, x3)
    std::optional<BigFloat> best_residual;
    for (const auto& x2 : x2_candidates) {
        if (x2.sign() <= 0) {
            continue;
        }
        BigFloat x3 = (beta - f(0, 1) * x2) / f(0, 2);
        if (x3.sign() <= 0) {
            continue;
        }
        BigFloat row3 = (x3 * (f(0, 2) * x1 + f(1, 2) * x2 + f(2, 2) * x3) - one).abs();
        if (!best_residual || row3 < *best_residual) {
            best = std::make_pair(x2, x3);
            best_residual = std::move(row3);
        }
    }
    if (!best) {
        throw NoPositiveSolutionError("no positive diagonal solves the balance system at this z");
    }

    DiagonalFactor<BigFloat> x({x1, best->first, best->second});
    Matrix<BigFloat> af = to_float(a, prec);
    Matrix<BigFloat> s = scale_cols(scale_rows(x, af), x);
    std::array<BigFloat, 3> residuals{BigFloat(0, prec), BigFloat(0, prec), BigFloat(0, prec)};
    for (int i = 0; i < 3; ++i) {
        BigFloat ax = af.at(i, 0) * x[0] + af.at(i, 1) * x[1] + af.at(i, 2) * x[2];
        residuals[static_cast<std::size_t>(i)] = (x[i] * ax - one).abs();
    }
    return ExactLimit3{z, std::move(s), std::move(x), std::move(residuals)};
}

namespace {

bool entries_strictly_inside_unit(const Matrix<BigFloat>& s) {
    const BigFloat zero(0);
    const BigFloat one(1);
    for (const auto& e : s.entries()) {
        if (!(e > zero && e < one)) {
            return false;
        }
    }
    return true;
}

BigFloat numeric_z_oracle(const Matrix<Rational>& a, mpfr_prec_t prec) {
    // Tolerance well below the report precision but with headroom above the
    // arithmetic noise floor at `prec` bits.
    const BigFloat tol = BigFloat::pow2(-(3 * static_cast<long>(prec) / 4), prec);
    auto run = sinkhorn_iterate(to_float(a, prec), tol, 400000);
    return run.limit.at(0, 0) / BigFloat::from_rational(a.at(0, 0), prec);
}

} // namespace

SelectedRoot select_sinkhorn_root(const QuarticSpec& q, const Matrix<Rational>& a, mpfr_prec_t prec) {
    if (q.degenerate()) {
        throw DegenerateQuarticError("cannot select a root of the degenerate quartic");
    }
    require_3x3_symmetric(a);
    const UniPoly p = q.poly();
    struct Candidate {
        RootInterval interval;
        BigFloat z;
    };
    std::vector<Candidate> feasible;
    for (const auto& iv : isolate_positive_roots(p)) {
        BigFloat z = refine_root_to_float(p, iv, prec);
        try {
            ExactLimit3 rec = reconstruct_limit(a, z);
            if (entries_strictly_inside_unit(rec.limit)) {
                feasible.push_back(Candidate{iv, std::move(z)});
            }
        } catch (const NoPositiveSolutionError&) {
            // infeasible root
        }
    }
    if (feasible.empty()) {
        throw NoValidRootError("no positive root of the quartic reconstructs a valid limit");
    }
    std::size_t pick = 0;
    if (feasible.size() > 1) {
        const BigFloat z_numeric = numeric_z_oracle(a, prec);
        BigFloat best = (feasible[0].z - z_numeric).abs();
        for (std::size_t i = 1; i < feasible.size(); ++i) {
            BigFloat d = (feasible[i].z - z_numeric).abs();
            if (d < best) {
                best = std::move(d);
                pick = i;
            }
        }
    }
    SelectedRoot sel{feasible[pick].interval, feasible[pick].z, std::nullopt,
                     static_cast<int>(feasible.size())};
    for (const auto& r : rational_roots(p)) {
        if (r > sel.interval.lo && r < sel.interval.hi) {
            sel.z_exact = r;
            sel.z = BigFloat::from_rational(r, prec);
            break;
        }
    }
    return sel;
}

Exact3Result exact_limit3(const Matrix<Rational>& a, std::optional<QuarticSpec> quartic, mpfr_prec_t prec) {
    require_3x3_symmetric(a);
    Exact3Result result;
    if (!quartic) {
        QuarticSpec generic{quartic_generic_coeffs(a), "generic"};
        if (!generic.degenerate()) {
            quartic = std::move(generic);
        }
    }
    if (!quartic || quartic->degenerate()) {
        result.warnings.push_back("degenerate quartic: all five coefficients vanish");
        if (is_rank_one(a)) {
            // A = v v^T balances to the constant matrix: x_i = 1/(sqrt(3) v_i).
            result.rank1_limit = Matrix<Rational>::constant(3, Rational(1, 3));
            const BigFloat sqrt_a11 = BigFloat::from_rational(a.at(0, 0), prec).sqrt();
            const BigFloat sqrt3 = BigFloat(3, prec).sqrt();
            std::vector<BigFloat> x;
            x.push_back(BigFloat(1, prec) / (sqrt3 * sqrt_a11));
            x.push_back(sqrt_a11 / (sqrt3 * BigFloat::from_rational(a.at(0, 1), prec)));
            x.push_back(sqrt_a11 / (sqrt3 * BigFloat::from_rational(a.at(0, 2), prec)));
            result.rank1_factor = DiagonalFactor<BigFloat>(std::move(x));
            result.warnings.push_back("rank-1 input: exact constant limit 1/3");
        } else {
            result.warnings.push_back("input is degenerate but not rank-1: falling back to numeric balancing");
            const BigFloat tol = BigFloat::pow2(-(3 * static_cast<long>(prec) / 4), prec);
            result.numeric_fallback = symmetric_balance(a, prec, tol, 400000);
        }
        return result;
    }

    result.quartic = quartic;
    SelectedRoot sel = select_sinkhorn_root(*quartic, a, prec);
    if (sel.feasible_count > 1) {
        result.warnings.push_back("multiple feasible positive roots (" + std::to_string(sel.feasible_count) +
                                  "); numeric oracle broke the tie");
    }
    result.algebraic = reconstruct_limit(a, sel.z);
    result.oracle_delta = (sel.z - numeric_z_oracle(a, prec)).abs();
    result.root = std::move(sel);
    return result;
}

} // namespace sinkhorn
