#include "sinkhorn/bigfloat.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ostream>

#include "sinkhorn/errors.hpp"

namespace sinkhorn {

namespace {

std::atomic<mpfr_prec_t> g_default_precision{256};

mpfr_prec_t join(const BigFloat& a, const BigFloat& b) {
    return std::max(a.precision(), b.precision());
}

mpfr_prec_t checked(mpfr_prec_t prec) {
    if (prec < MPFR_PREC_MIN || prec > (1L << 24)) {
        throw Error("unsupported precision: " + std::to_string(prec));
    }
    return prec;
}

} // namespace

BigFloat::BigFloat() {
    mpfr_init2(v_, default_precision());
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long v, mpfr_prec_t prec) {
    mpfr_init2(v_, checked(prec));
    mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, o.precision());
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, o.precision());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    if (this != &o) {
        mpfr_swap(v_, o.v_);
    }
    return *this;
}

BigFloat::~BigFloat() {
    mpfr_clear(v_);
}

BigFloat BigFloat::from_rational(const Rational& q, mpfr_prec_t prec) {
    BigFloat r(0, prec);
    mpfr_set_q(r.v_, q.raw().get_mpq_t(), MPFR_RNDN);
    return r;
}

BigFloat BigFloat::parse(const std::string& text, mpfr_prec_t prec) {
    if (text.find('/') != std::string::npos) {
        return from_rational(Rational::parse(text), prec);
    }
    BigFloat r(0, prec);
    if (text.empty() || mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) {
        throw ParseError("invalid number: \"" + text + "\"");
    }
    return r;
}

BigFloat BigFloat::pow2(long e, mpfr_prec_t prec) {
    BigFloat r(0, prec);
    mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
}

mpfr_prec_t BigFloat::default_precision() {
    return g_default_precision.load();
}

void BigFloat::set_default_precision(mpfr_prec_t prec) {
    g_default_precision.store(checked(prec));
}

BigFloat BigFloat::abs() const {
    BigFloat r(0, precision());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sqrt() const {
    if (sign() < 0) {
        throw Error("sqrt of negative value");
    }
    BigFloat r(0, precision());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string BigFloat::str(std::size_t digits) const {
    if (!is_finite()) {
        return mpfr_nan_p(v_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
    }
    if (digits == 0) {
        // Enough decimal digits to reproduce the binary value exactly.
        digits = static_cast<std::size_t>(std::ceil(static_cast<double>(precision()) * 0.30102999566398119521)) + 2;
    }
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", static_cast<int>(digits - 1), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

BigFloat BigFloat::operator-() const {
    BigFloat r(0, precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(0, join(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(0, join(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(0, join(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    if (b.is_zero()) {
        throw Error("bigfloat: division by zero");
    }
    BigFloat r(0, join(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) {
    return os << x.str();
}

} // namespace sinkhorn
