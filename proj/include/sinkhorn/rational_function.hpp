#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "sinkhorn/polynomial.hpp"

namespace sinkhorn {

/// Reduced quotient of two univariate polynomials over Rational.
///
/// Canonical form: gcd(num, den) is constant and den is monic (leading
/// coefficient 1), so structural equality is semantic equality.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(UniPoly::constant(Rational(1))) {}
    RationalFunction(const Rational& c);                     // NOLINT: implicit by design
    RationalFunction(UniPoly num, UniPoly den);

    static RationalFunction variable();                      // the indeterminate itself

    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    /// Evaluates at a rational point; the point must not be a pole.
    Rational eval(const Rational& x) const;

    int max_degree() const { return std::max(num_.degree(), den_.degree()); }

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    std::string str(const std::string& var = "r") const;
    friend std::ostream& operator<<(std::ostream& os, const RationalFunction& f);

    friend RationalFunction ratfun_reduce(UniPoly num, UniPoly den);

private:
    UniPoly num_;
    UniPoly den_;
};

/// Reduced form of num/den: divides out the gcd and normalizes the denominator
/// monic. Throws DivisionByZeroPolynomialError if den is the zero polynomial.
RationalFunction ratfun_reduce(UniPoly num, UniPoly den);

/// Integer-normalized view of a reduced rational function: both parts scaled
/// by a single rational so all coefficients are integers with no common
/// integer factor across the pair, and the denominator's leading coefficient
/// is positive. This is the convention under which the numerator of a
/// symbolic row-sum difference is compared against its closed form.
std::pair<UniPoly, UniPoly> integer_normalized(const RationalFunction& f);

} // namespace sinkhorn
