#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "sinkhorn/bigfloat.hpp"
#include "sinkhorn/matrix.hpp"
#include "sinkhorn/polynomial.hpp"
#include "sinkhorn/rational.hpp"

namespace testutil {

inline sinkhorn::Rational rat(const std::string& s) {
    return sinkhorn::Rational::parse(s);
}

/// Independent oracle for square roots: floor(sqrt(n * 10^(2*digits))) /
/// 10^digits, so 0 <= sqrt(n) - oracle < 10^-digits. Pure integer arithmetic,
/// no shared code with the root refinement under test.
inline sinkhorn::Rational sqrt_oracle(unsigned long n, unsigned long digits) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class scaled = mpz_class(static_cast<unsigned long>(n)) * scale * scale;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    return sinkhorn::Rational(mpq_class(root, scale));
}

inline sinkhorn::BigFloat bf(const std::string& s, mpfr_prec_t prec = 256) {
    return sinkhorn::BigFloat::parse(s, prec);
}

inline sinkhorn::Matrix<sinkhorn::Rational> rat_matrix(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::vector<sinkhorn::Rational>> parsed;
    for (const auto& row : rows) {
        std::vector<sinkhorn::Rational> r;
        for (const auto& cell : row) {
            r.push_back(rat(cell));
        }
        parsed.push_back(std::move(r));
    }
    return sinkhorn::Matrix<sinkhorn::Rational>::from_rows(parsed);
}

inline sinkhorn::UniPoly poly(const std::vector<std::string>& coeffs_low_first) {
    std::vector<sinkhorn::Rational> c;
    for (const auto& s : coeffs_low_first) {
        c.push_back(rat(s));
    }
    return sinkhorn::UniPoly(std::move(c));
}

inline bool contains(const sinkhorn::Rational& lo, const sinkhorn::Rational& hi, const sinkhorn::Rational& x) {
    return lo < x && x < hi;
}

inline sinkhorn::BigFloat max_entry_delta(const sinkhorn::Matrix<sinkhorn::BigFloat>& a,
                                          const sinkhorn::Matrix<sinkhorn::BigFloat>& b) {
    sinkhorn::BigFloat worst(0);
    for (int i = 0; i < a.size(); ++i) {
        for (int j = 0; j < a.size(); ++j) {
            auto d = (a.at(i, j) - b.at(i, j)).abs();
            if (d > worst) {
                worst = d;
            }
        }
    }
    return worst;
}

} // namespace testutil
