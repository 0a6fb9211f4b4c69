#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>

namespace sinkhorn {

/// Exact arbitrary-precision rational scalar.
///
/// Invariants: always in lowest terms, denominator > 0, zero is 0/1.
/// All operations return canonical values, so equality is structural.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {} // NOLINT: implicit by design
    Rational(long num, long den);
    explicit Rational(const mpz_class& n) : v_(n) {}
    explicit Rational(mpq_class v);

    /// Parses "p/q" or "p" with an optional leading '-'; no whitespace, q > 0.
    static Rational parse(const std::string& text);

    /// Canonical text form, the inverse of parse().
    std::string str() const;

    const mpz_class& num() const { return v_.get_num(); }
    const mpz_class& den() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational abs() const;
    Rational inv() const;
    Rational pow(unsigned long e) const;

    /// Exact square root if *this is the square of a rational, otherwise empty.
    std::optional<Rational> exact_sqrt() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q);

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

} // namespace sinkhorn
