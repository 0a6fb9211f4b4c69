#include "sinkhorn/rational_function.hpp"

#include <ostream>

#include "sinkhorn/errors.hpp"

namespace sinkhorn {

RationalFunction::RationalFunction(const Rational& c)
    : num_(UniPoly::constant(c)), den_(UniPoly::constant(Rational(1))) {}

RationalFunction::RationalFunction(UniPoly num, UniPoly den) {
    *this = ratfun_reduce(std::move(num), std::move(den));
}

RationalFunction RationalFunction::variable() {
    return RationalFunction(UniPoly::monomial(Rational(1), 1), UniPoly::constant(Rational(1)));
}

Rational RationalFunction::eval(const Rational& x) const {
    Rational d = den_.eval(x);
    if (d.is_zero()) {
        throw Error("rational function evaluated at a pole");
    }
    return num_.eval(x) / d;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return ratfun_reduce(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return ratfun_reduce(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return ratfun_reduce(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) {
        throw DivisionByZeroPolynomialError("rational function division by zero");
    }
    return ratfun_reduce(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunction::str(const std::string& var) const {
    if (is_polynomial()) {
        return num_.str(var);
    }
    return "(" + num_.str(var) + ") / (" + den_.str(var) + ")";
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& f) {
    return os << f.str();
}

RationalFunction ratfun_reduce(UniPoly num, UniPoly den) {
    if (den.is_zero()) {
        throw DivisionByZeroPolynomialError("rational function with zero denominator");
    }
    if (num.is_zero()) {
        RationalFunction r;
        return r;
    }
    UniPoly g = poly_gcd(num, den);
    if (g.degree() > 0) {
        num = UniPoly::divmod(num, g).first;
        den = UniPoly::divmod(den, g).first;
    }
    const Rational lead_inv = den.leading().inv();
    RationalFunction r;
    r.num_ = lead_inv * num;
    r.den_ = lead_inv * den;
    return r;
}

std::pair<UniPoly, UniPoly> integer_normalized(const RationalFunction& f) {
    // Common denominator of every coefficient in both parts.
    mpz_class lcm(1);
    for (const auto& c : f.num().coeffs()) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
    }
    for (const auto& c : f.den().coeffs()) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
    }
    const Rational scale_up{mpz_class(lcm)};
    UniPoly n = scale_up * f.num();
    UniPoly d = scale_up * f.den();
    // Joint integer content of the pair.
    mpz_class content(0);
    for (const auto& c : n.coeffs()) {
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.num().get_mpz_t());
    }
    for (const auto& c : d.coeffs()) {
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.num().get_mpz_t());
    }
    if (content != 0 && content != 1) {
        const Rational inv_content = Rational(mpz_class(content)).inv();
        n = inv_content * n;
        d = inv_content * d;
    }
    if (!d.is_zero() && d.leading().sign() < 0) {
        n = -n;
        d = -d;
    }
    return {std::move(n), std::move(d)};
}

} // namespace sinkhorn
