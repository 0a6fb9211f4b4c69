#include "sinkhorn/polynomial.hpp"

#include <ostream>
#include <sstream>

#include "sinkhorn/errors.hpp"

namespace sinkhorn {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    trim();
}

UniPoly::UniPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) {
    trim();
}

UniPoly UniPoly::constant(const Rational& c) {
    return UniPoly({c});
}

UniPoly UniPoly::monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return UniPoly(std::move(v));
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) {
        c_.pop_back();
    }
}

const Rational& UniPoly::coeff(std::size_t i) const {
    static const Rational zero(0);
    return i < c_.size() ? c_[i] : zero;
}

const Rational& UniPoly::leading() const {
    if (is_zero()) {
        throw Error("leading coefficient of the zero polynomial");
    }
    return c_.back();
}

Rational UniPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

BigFloat UniPoly::eval(const BigFloat& x) const {
    BigFloat acc(0, x.precision());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * x + BigFloat::from_rational(*it, x.precision());
    }
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) {
        return UniPoly();
    }
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
        d[i - 1] = Rational(static_cast<long>(i)) * c_[i];
    }
    return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) {
        return *this;
    }
    return leading().inv() * *this;
}

UniPoly UniPoly::pow(unsigned long e) const {
    UniPoly result = constant(Rational(1));
    UniPoly base = *this;
    while (e > 0) {
        if (e & 1UL) {
            result = result * base;
        }
        e >>= 1UL;
        if (e > 0) {
            base = base * base;
        }
    }
    return result;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) {
        throw DivisionByZeroPolynomialError("polynomial division by zero");
    }
    if (a.degree() < b.degree()) {
        return {UniPoly(), a};
    }
    std::vector<Rational> rem = a.c_;
    std::vector<Rational> quot(a.degree() - b.degree() + 1, Rational(0));
    const Rational lead_inv = b.leading().inv();
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        Rational q = rem[k + b.degree()] * lead_inv;
        quot[k] = q;
        if (!q.is_zero()) {
            for (int j = 0; j <= b.degree(); ++j) {
                rem[k + j] -= q * b.c_[j];
            }
        }
    }
    rem.resize(b.degree() >= 0 ? b.degree() : 0);
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly UniPoly::operator-() const {
    std::vector<Rational> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        r[i] = -c_[i];
    }
    return UniPoly(std::move(r));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = a.coeff(i) + b.coeff(i);
    }
    return UniPoly(std::move(r));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = a.coeff(i) - b.coeff(i);
    }
    return UniPoly(std::move(r));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) {
        return UniPoly();
    }
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            r[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return UniPoly(std::move(r));
}

UniPoly operator*(const Rational& s, const UniPoly& p) {
    std::vector<Rational> r(p.c_.size());
    for (std::size_t i = 0; i < p.c_.size(); ++i) {
        r[i] = s * p.c_[i];
    }
    return UniPoly(std::move(r));
}

std::string UniPoly::str(const std::string& var) const {
    if (is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = c_[static_cast<std::size_t>(i)];
        if (c.is_zero()) {
            continue;
        }
        Rational a = c.abs();
        if (first) {
            if (c.sign() < 0) {
                os << "-";
            }
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        if (i == 0 || !a.is_one()) {
            os << a.str();
            if (i != 0) {
                os << "*";
            }
        }
        if (i >= 1) {
            os << var;
            if (i >= 2) {
                os << "^" << i;
            }
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const UniPoly& p) {
    return os << p.str();
}

UniPoly poly_gcd(const UniPoly& p, const UniPoly& q) {
    if (p.is_zero() && q.is_zero()) {
        throw ZeroPolynomialError("gcd(0, 0) is undefined");
    }
    UniPoly a = p;
    UniPoly b = q;
    while (!b.is_zero()) {
        UniPoly r = UniPoly::divmod(a, b).second;
        a = std::move(b);
        // Keeping remainders monic bounds coefficient growth in the chain.
        b = r.is_zero() ? UniPoly() : r.monic();
    }
    return a.monic();
}

UniPoly square_free_part(const UniPoly& p) {
    if (p.is_zero()) {
        throw ZeroPolynomialError("square-free part of the zero polynomial");
    }
    if (p.degree() == 0) {
        return UniPoly::constant(Rational(1));
    }
    UniPoly g = poly_gcd(p, p.derivative());
    return UniPoly::divmod(p, g).first.monic();
}

std::vector<std::pair<UniPoly, int>> square_free_decomposition(const UniPoly& p) {
    if (p.is_zero()) {
        throw ZeroPolynomialError("square-free decomposition of the zero polynomial");
    }
    std::vector<std::pair<UniPoly, int>> factors;
    if (p.degree() == 0) {
        return factors;
    }
    // Yun's algorithm over Q (characteristic zero).
    UniPoly d = poly_gcd(p, p.derivative());
    UniPoly b = UniPoly::divmod(p, d).first;
    UniPoly c = UniPoly::divmod(p.derivative(), d).first;
    int i = 1;
    while (b.degree() > 0) {
        UniPoly w = c - b.derivative();
        UniPoly a = w.is_zero() ? b.monic() : poly_gcd(b, w);
        if (a.degree() > 0) {
            factors.emplace_back(a, i);
        }
        b = UniPoly::divmod(b, a).first;
        c = w.is_zero() ? UniPoly() : UniPoly::divmod(w, a).first;
        ++i;
    }
    return factors;
}

} // namespace sinkhorn
