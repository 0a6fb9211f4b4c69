#include "sinkhorn/families.hpp"

#include "sinkhorn/engine.hpp"
#include "sinkhorn/errors.hpp"
#include "sinkhorn/rng.hpp"

namespace sinkhorn {

SymbolicMatrix::SymbolicMatrix(int n) : n_(n) {
    if (n_ < 1) {
        throw Error("symbolic matrix: dimension must be positive");
    }
    e_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), RationalFunction());
}

RationalFunction& SymbolicMatrix::at(int i, int j) {
    return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
}

const RationalFunction& SymbolicMatrix::at(int i, int j) const {
    return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
}

RationalFunction SymbolicMatrix::row_sum(int i) const {
    RationalFunction s = at(i, 0);
    for (int j = 1; j < n_; ++j) {
        s = s + at(i, j);
    }
    return s;
}

RationalFunction SymbolicMatrix::col_sum(int j) const {
    RationalFunction s = at(0, j);
    for (int i = 1; i < n_; ++i) {
        s = s + at(i, j);
    }
    return s;
}

Matrix<Rational> SymbolicMatrix::eval(const Rational& r) const {
    std::vector<Rational> entries;
    entries.reserve(e_.size());
    for (const auto& f : e_) {
        entries.push_back(f.eval(r));
    }
    return Matrix<Rational>(n_, std::move(entries));
}

int SymbolicMatrix::max_degree() const {
    int deg = 0;
    for (const auto& f : e_) {
        deg = std::max(deg, f.max_degree());
    }
    return deg;
}

namespace {

void require_positive_r(const Rational& r) {
    if (r.sign() <= 0) {
        throw Error("family parameter r must be positive");
    }
}

RationalFunction ar_head_symbolic() {
    // r(r+1)/2
    return RationalFunction(UniPoly({Rational(0), Rational(1, 2), Rational(1, 2)}), UniPoly::constant(Rational(1)));
}

} // namespace

Matrix<Rational> ar_matrix(const Rational& r) {
    require_positive_r(r);
    const Rational one(1);
    Matrix<Rational> a = Matrix<Rational>::constant(3, one);
    std::vector<Rational> entries = a.entries();
    entries[0] = r * (r + one) / Rational(2);
    return Matrix<Rational>(3, std::move(entries));
}

SymbolicMatrix ar_matrix_symbolic() {
    SymbolicMatrix m(3);
    const RationalFunction one{Rational(1)};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            m.at(i, j) = one;
        }
    }
    m.at(0, 0) = ar_head_symbolic();
    return m;
}

Matrix<Rational> ar_limit(const Rational& r) {
    require_positive_r(r);
    const Rational one(1);
    const Rational corner = r / (r + Rational(2));
    const Rational edge = one / (r + Rational(2));
    const Rational body = (r + one) / (Rational(2) * (r + Rational(2)));
    return Matrix<Rational>::from_rows({{corner, edge, edge}, {edge, body, body}, {edge, body, body}});
}

SymbolicMatrix ar_limit_symbolic() {
    const UniPoly one = UniPoly::constant(Rational(1));
    const UniPoly r = UniPoly::monomial(Rational(1), 1);
    const UniPoly r_plus_2({Rational(2), Rational(1)});
    const RationalFunction corner(r, r_plus_2);
    const RationalFunction edge(one, r_plus_2);
    const RationalFunction body(UniPoly({Rational(1), Rational(1)}), Rational(2) * r_plus_2);
    SymbolicMatrix s(3);
    s.at(0, 0) = corner;
    s.at(0, 1) = s.at(0, 2) = s.at(1, 0) = s.at(2, 0) = edge;
    s.at(1, 1) = s.at(1, 2) = s.at(2, 1) = s.at(2, 2) = body;
    return s;
}

DiagonalFactor<BigFloat> ar_diagonal(const Rational& r, mpfr_prec_t prec) {
    require_positive_r(r);
    const Rational one(1);
    const Rational c = Rational(2) / ((r + one) * (r + Rational(2)));
    const BigFloat scale = BigFloat::from_rational(c, prec).sqrt();
    const BigFloat tail = BigFloat::from_rational((r + one) / Rational(2), prec);
    return DiagonalFactor<BigFloat>({scale, scale * tail, scale * tail});
}

std::array<std::optional<Rational>, 3> ar_diagonal_exact(const Rational& r) {
    require_positive_r(r);
    const Rational one(1);
    const Rational c = Rational(2) / ((r + one) * (r + Rational(2)));
    const Rational tail = (r + one) / Rational(2);
    return {c.exact_sqrt(), (c * tail * tail).exact_sqrt(), (c * tail * tail).exact_sqrt()};
}

std::array<RationalFunction, 3> ar_diagonal_squared_symbolic() {
    // c = 2/((r+1)(r+2)); entries squared are c, c((r+1)/2)^2, c((r+1)/2)^2.
    const UniPoly r_plus_1({Rational(1), Rational(1)});
    const UniPoly r_plus_2({Rational(2), Rational(1)});
    const RationalFunction c(UniPoly::constant(Rational(2)), r_plus_1 * r_plus_2);
    const RationalFunction tail(r_plus_1, UniPoly::constant(Rational(2)));
    return {c, c * tail * tail, c * tail * tail};
}

namespace {

void check_degree_cap(const SymbolicMatrix& m, int cap) {
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            if (m.at(i, j).num().degree() > cap || m.at(i, j).den().degree() > cap) {
                throw ExpressionTooLargeError("symbolic entry degree exceeds cap " + std::to_string(cap));
            }
        }
    }
}

SymbolicMatrix normalize_rows_symbolic(const SymbolicMatrix& m) {
    SymbolicMatrix out(m.size());
    for (int i = 0; i < m.size(); ++i) {
        const RationalFunction sum = m.row_sum(i);
        for (int j = 0; j < m.size(); ++j) {
            out.at(i, j) = m.at(i, j) / sum;
        }
    }
    return out;
}

SymbolicMatrix normalize_cols_symbolic(const SymbolicMatrix& m) {
    SymbolicMatrix out(m.size());
    for (int j = 0; j < m.size(); ++j) {
        const RationalFunction sum = m.col_sum(j);
        for (int i = 0; i < m.size(); ++i) {
            out.at(i, j) = m.at(i, j) / sum;
        }
    }
    return out;
}

} // namespace

SymbolicMatrix double_step_symbolic(int k, int degree_cap) {
    if (k < 1) {
        throw Error("double_step_symbolic: k must be >= 1");
    }
    SymbolicMatrix m = ar_matrix_symbolic();
    for (int step = 0; step < k; ++step) {
        m = normalize_cols_symbolic(normalize_rows_symbolic(m));
        check_degree_cap(m, degree_cap);
    }
    return m;
}

RationalFunction row_sum_difference(int k, int degree_cap) {
    SymbolicMatrix m = double_step_symbolic(k, degree_cap);
    return m.row_sum(0) - m.row_sum(1);
}

NumeratorComparison compare_row_sum_numerator(int k, int degree_cap) {
    NumeratorComparison cmp;
    const RationalFunction diff = row_sum_difference(k, degree_cap);
    auto [num, den] = integer_normalized(diff);
    cmp.numerator = std::move(num);
    cmp.denominator = std::move(den);
    // ((r+2)(r-1))^{2k} = (r^2 + r - 2)^{2k}
    const UniPoly base({Rational(-2), Rational(1), Rational(1)});
    cmp.target = Rational(3) * base.pow(2UL * static_cast<unsigned long>(k));
    if (!cmp.numerator.is_zero() && cmp.numerator.degree() == cmp.target.degree()) {
        const Rational scale = cmp.numerator.leading() / cmp.target.leading();
        if (cmp.numerator == scale * cmp.target) {
            cmp.proportional = true;
            cmp.scale = scale;
        }
    }
    return cmp;
}

namespace {

Rational lcm_of_denominators(const Matrix<Rational>& a, int row) {
    mpz_class lcm(1);
    for (int j = 0; j < a.size(); ++j) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a.at(row, j).den().get_mpz_t());
    }
    return Rational(lcm);
}

} // namespace

TerminationExample generate_finite_termination(const std::array<Rational, 3>& row1, const Rational& t) {
    const Rational zero(0);
    const Rational one(1);
    const Rational two_thirds(2, 3);
    Rational sum(0);
    for (const auto& v : row1) {
        if (!(v > zero && v < two_thirds)) {
            throw InvalidRowError("row entries must lie strictly inside (0, 2/3)");
        }
        sum += v;
    }
    if (sum != one) {
        throw InvalidRowError("row entries must sum to 1");
    }
    if (t.is_zero() || !(t > Rational(-1) && t < Rational(1, 2))) {
        throw InvalidTError("t must lie in (-1, 1/2) and be nonzero");
    }

    const Rational a = row1[0];
    const Rational b = row1[1];
    const Rational c = row1[2];
    std::vector<std::vector<Rational>> s_rows = {
        {a, b, c},
        {Rational(1, 3), Rational(1, 3), Rational(1, 3)},
        {two_thirds - a, two_thirds - b, two_thirds - c},
    };
    Matrix<Rational> s = Matrix<Rational>::from_rows(s_rows);

    // Right-kernel vector of the singular S. Rows satisfy
    // row1 - 2*row2 + row3 = 0, and the kernel works out to
    // (c-b, a-c, b-a) up to scale; the rank-1 case (all rows equal) leaves the
    // whole sum-zero plane, where (1,-2,1) is the canonical pick.
    std::array<Rational, 3> v = {c - b, a - c, b - a};
    if (v[0].is_zero() && v[1].is_zero() && v[2].is_zero()) {
        v = {Rational(1), Rational(-2), Rational(1)};
    } else {
        // Rescale so max(v) <= 1 and min(v) >= -2 with one bound tight; then
        // 1 + t*v stays positive on the whole admissible t interval. The
        // canonical kernel (1,-2,1) of the symmetric case is reproduced.
        Rational vmax = v[0];
        Rational vmin = v[0];
        for (const auto& x : v) {
            if (x > vmax) {
                vmax = x;
            }
            if (x < vmin) {
                vmin = x;
            }
        }
        const Rational s1 = one / vmax;          // vmax > 0 since the entries sum to 0
        const Rational s2 = Rational(2) / -vmin; // vmin < 0 likewise
        const Rational scale = s1 < s2 ? s1 : s2;
        for (auto& x : v) {
            x *= scale;
        }
    }

    std::vector<Rational> col_scale;
    col_scale.reserve(3);
    for (const auto& x : v) {
        col_scale.push_back(one + t * x);
    }
    Matrix<Rational> a_mat = scale_cols(s, DiagonalFactor<Rational>(std::move(col_scale)));

    std::vector<Rational> row_scale;
    row_scale.reserve(3);
    for (int i = 0; i < 3; ++i) {
        row_scale.push_back(lcm_of_denominators(a_mat, i));
    }
    Matrix<Rational> m = scale_rows(DiagonalFactor<Rational>(std::move(row_scale)), a_mat);

    return TerminationExample{std::move(m), std::move(a_mat), std::move(s), 2};
}

TerminationExample sample_finite_termination(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    for (;;) {
        const long d = 6 * (1 + static_cast<long>(rng.below(10))); // denominators 6..60
        const long p = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(d - 1)));
        const long q = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(d - 1)));
        const Rational a(p, d);
        const Rational b(q, d);
        const Rational c = Rational(1) - a - b;
        const Rational two_thirds(2, 3);
        const Rational zero(0);
        if (!(a < two_thirds && b < two_thirds && c > zero && c < two_thirds)) {
            continue;
        }
        // t in (-1, 1/2) \ {0} on a 1/24 grid.
        const long u = -23 + static_cast<long>(rng.below(35)); // -23..11
        if (u == 0) {
            continue;
        }
        return generate_finite_termination({a, b, c}, Rational(u, 24));
    }
}

} // namespace sinkhorn
