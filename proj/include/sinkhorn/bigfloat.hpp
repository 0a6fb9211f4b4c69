#pragma once

#include <mpfr.h>

#include <iosfwd>
#include <string>

#include "sinkhorn/rational.hpp"

namespace sinkhorn {

/// Binary floating-point scalar with an explicit mantissa precision in bits.
///
/// Every value carries its own precision; arithmetic rounds to the larger
/// precision of the two operands (round-to-nearest), so mixing a freshly
/// constructed exact constant such as BigFloat(1) with high-precision values
/// loses nothing. Comparisons are exact regardless of precision.
class BigFloat {
public:
    BigFloat();
    explicit BigFloat(long v, mpfr_prec_t prec = default_precision());
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    static BigFloat from_rational(const Rational& q, mpfr_prec_t prec = default_precision());
    /// Parses a decimal string ("0.25", "1e-40") or a rational string ("1/3").
    static BigFloat parse(const std::string& text, mpfr_prec_t prec = default_precision());
    /// 2^e, exact at any precision.
    static BigFloat pow2(long e, mpfr_prec_t prec = default_precision());

    /// Process-wide default used by constructors that do not take a precision.
    static mpfr_prec_t default_precision();
    static void set_default_precision(mpfr_prec_t prec);

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }

    BigFloat abs() const;
    BigFloat sqrt() const;

    /// Decimal scientific form; digits == 0 picks enough digits to round-trip.
    std::string str(std::size_t digits = 0) const;
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    BigFloat operator-() const;
    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
    BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const BigFloat& x);

    const mpfr_t& raw() const { return v_; }

private:
    mpfr_t v_;
};

} // namespace sinkhorn
