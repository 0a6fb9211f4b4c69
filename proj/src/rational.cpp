#include "sinkhorn/rational.hpp"

#include <cctype>
#include <ostream>

#include "sinkhorn/errors.hpp"

namespace sinkhorn {

Rational::Rational(long num, long den) {
    if (den == 0) {
        throw Error("rational: zero denominator");
    }
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) {
    v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    // Accepted grammar: '-'? digits ( '/' digits )?, denominator > 0.
    const auto fail = [&] { throw ParseError("invalid rational: \"" + text + "\""); };
    std::size_t i = 0;
    if (i < text.size() && text[i] == '-') {
        ++i;
    }
    std::size_t num_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
    }
    if (i == num_start) {
        fail();
    }
    std::size_t den_start = 0;
    if (i < text.size()) {
        if (text[i] != '/') {
            fail();
        }
        den_start = ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        if (i == den_start || i != text.size()) {
            fail();
        }
    }
    mpq_class v;
    if (v.set_str(text, 10) != 0) {
        fail();
    }
    if (den_start != 0 && v.get_den() == 0) {
        fail();
    }
    if (sgn(v.get_den()) <= 0) {
        fail(); // "p/0"
    }
    v.canonicalize();
    return Rational(std::move(v));
}

std::string Rational::str() const {
    if (is_integer()) {
        return v_.get_num().get_str();
    }
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::abs() const {
    return Rational(mpq_class(::abs(v_)));
}

Rational Rational::inv() const {
    if (is_zero()) {
        throw Error("rational: inverse of zero");
    }
    mpq_class r;
    mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
    return Rational(std::move(r));
}

Rational Rational::pow(unsigned long e) const {
    mpq_class r;
    mpz_pow_ui(r.get_num_mpz_t(), v_.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), v_.get_den().get_mpz_t(), e);
    return Rational(std::move(r)); // powers of a canonical value stay canonical
}

std::optional<Rational> Rational::exact_sqrt() const {
    if (sign() < 0) {
        return std::nullopt;
    }
    if (mpz_perfect_square_p(num().get_mpz_t()) == 0 ||
        mpz_perfect_square_p(den().get_mpz_t()) == 0) {
        return std::nullopt;
    }
    mpq_class r;
    mpz_sqrt(r.get_num_mpz_t(), num().get_mpz_t());
    mpz_sqrt(r.get_den_mpz_t(), den().get_mpz_t());
    return Rational(std::move(r));
}

Rational Rational::operator-() const {
    return Rational(mpq_class(-v_));
}

Rational& Rational::operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) {
        throw Error("rational: division by zero");
    }
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) {
    return os << q.str();
}

} // namespace sinkhorn
