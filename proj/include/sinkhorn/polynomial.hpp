#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sinkhorn/bigfloat.hpp"
#include "sinkhorn/rational.hpp"

namespace sinkhorn {

/// Univariate polynomial over Rational, coefficients stored lowest degree first.
///
/// Trailing zero coefficients are trimmed on construction, so degree() is
/// well-defined; the zero polynomial has an empty coefficient list and
/// degree -1.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);
    UniPoly(std::initializer_list<Rational> coeffs);

    static UniPoly constant(const Rational& c);
    static UniPoly monomial(const Rational& c, std::size_t degree);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    /// Coefficient of x^i; zero beyond the degree.
    const Rational& coeff(std::size_t i) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& leading() const;

    Rational eval(const Rational& x) const;
    BigFloat eval(const BigFloat& x) const;

    UniPoly derivative() const;
    UniPoly monic() const;
    UniPoly pow(unsigned long e) const;

    /// Quotient and remainder of exact division over Q; divisor must be nonzero.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);

    UniPoly operator-() const;
    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const Rational& s, const UniPoly& p);
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return a.c_ != b.c_; }

    /// Human-readable form, e.g. "2*z^4 - 9*z^3 + 13*z^2 - 7*z + 1".
    std::string str(const std::string& var = "z") const;

    friend std::ostream& operator<<(std::ostream& os, const UniPoly& p);

private:
    void trim();

    std::vector<Rational> c_;
};

/// Monic greatest common divisor; gcd(0, 0) is an error.
UniPoly poly_gcd(const UniPoly& p, const UniPoly& q);

/// p with all repeated roots collapsed to simple ones (monic).
UniPoly square_free_part(const UniPoly& p);

/// Yun decomposition: pairwise-coprime monic square-free factors with their
/// multiplicities, so p = lc * prod f_i^{m_i}. Constant factors are dropped.
std::vector<std::pair<UniPoly, int>> square_free_decomposition(const UniPoly& p);

} // namespace sinkhorn
