#include "sinkhorn/roots.hpp"

#include <algorithm>

#include "sinkhorn/errors.hpp"

namespace sinkhorn {

namespace {

// Sturm chain: s0 = q, s1 = q', s_{k+1} = -rem(s_{k-1}, s_k).
std::vector<UniPoly> sturm_sequence(const UniPoly& q) {
    std::vector<UniPoly> seq;
    seq.push_back(q);
    seq.push_back(q.derivative());
    while (!seq.back().is_zero() && seq.back().degree() > 0) {
        UniPoly rem = UniPoly::divmod(seq[seq.size() - 2], seq.back()).second;
        if (rem.is_zero()) {
            break;
        }
        seq.push_back(-rem);
    }
    return seq;
}

int sign_variations(const std::vector<UniPoly>& seq, const Rational& x) {
    int variations = 0;
    int prev = 0;
    for (const auto& s : seq) {
        int sg = s.eval(x).sign();
        if (sg == 0) {
            continue;
        }
        if (prev != 0 && sg != prev) {
            ++variations;
        }
        prev = sg;
    }
    return variations;
}

// Distinct roots of the (square-free) chain polynomial in (lo, hi], for
// non-root endpoints.
int count_roots(const std::vector<UniPoly>& seq, const Rational& lo, const Rational& hi) {
    return sign_variations(seq, lo) - sign_variations(seq, hi);
}

// Strict upper bound on the absolute value of any root.
Rational cauchy_bound(const UniPoly& q) {
    Rational bound(0);
    const Rational lead = q.leading().abs();
    for (int i = 0; i < q.degree(); ++i) {
        Rational c = q.coeff(static_cast<std::size_t>(i)).abs() / lead;
        if (c > bound) {
            bound = c;
        }
    }
    return bound + Rational(1);
}

struct Isolator {
    const UniPoly& q;
    std::vector<UniPoly> seq;
    std::vector<RootInterval> out;

    // Pre: q(lo) != 0, q(hi) != 0.
    void subdivide(const Rational& lo, const Rational& hi) {
        int n = count_roots(seq, lo, hi);
        if (n == 0) {
            return;
        }
        if (n == 1) {
            out.push_back(RootInterval{lo, hi, 1});
            return;
        }
        Rational mid = (lo + hi) / Rational(2);
        if (q.eval(mid).is_zero()) {
            // The bisection point is itself a root; fence it off with an
            // interval small enough to exclude every other root.
            Rational delta = (hi - lo) / Rational(8);
            while (q.eval(mid - delta).is_zero() || q.eval(mid + delta).is_zero() ||
                   count_roots(seq, mid - delta, mid + delta) != 1) {
                delta /= Rational(2);
            }
            subdivide(lo, mid - delta);
            out.push_back(RootInterval{mid - delta, mid + delta, 1});
            subdivide(mid + delta, hi);
            return;
        }
        subdivide(lo, mid);
        subdivide(mid, hi);
    }
};

// Drops the z^m factor so that 0 is not a root; positive roots are unchanged.
UniPoly strip_zero_roots(const UniPoly& p) {
    std::size_t shift = 0;
    while (shift < p.coeffs().size() && p.coeffs()[shift].is_zero()) {
        ++shift;
    }
    if (shift == 0) {
        return p;
    }
    std::vector<Rational> c(p.coeffs().begin() + static_cast<long>(shift), p.coeffs().end());
    return UniPoly(std::move(c));
}

// Small-integer divisors by trial division; empty when n is too large to scan.
std::vector<mpz_class> divisors(const mpz_class& n_in) {
    std::vector<mpz_class> divs;
    mpz_class n = ::abs(n_in);
    if (n == 0 || n > mpz_class("1000000000000")) {
        return divs;
    }
    for (mpz_class d(1); d * d <= n; ++d) {
        if (n % d == 0) {
            divs.push_back(d);
            divs.push_back(n / d);
        }
    }
    std::sort(divs.begin(), divs.end());
    divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
    return divs;
}

} // namespace

std::vector<RootInterval> isolate_positive_roots(const UniPoly& p) {
    if (p.is_zero()) {
        throw ZeroPolynomialError("cannot isolate roots of the zero polynomial");
    }
    UniPoly stripped = strip_zero_roots(p);
    if (stripped.degree() < 1) {
        return {};
    }
    UniPoly q = square_free_part(stripped);
    if (q.degree() < 1) {
        return {};
    }
    Isolator iso{q, sturm_sequence(q), {}};
    iso.subdivide(Rational(0), cauchy_bound(q));

    auto factors = square_free_decomposition(stripped);
    for (auto& iv : iso.out) {
        for (const auto& [factor, multiplicity] : factors) {
            // The interval holds exactly one root of q, so a sign change of a
            // square-free factor pins the multiplicity uniquely.
            if (factor.eval(iv.lo).sign() * factor.eval(iv.hi).sign() < 0) {
                iv.multiplicity = multiplicity;
                break;
            }
        }
    }
    return iso.out;
}

Rational refine_root(const UniPoly& p, const RootInterval& iv, const Rational& eps) {
    if (eps.sign() <= 0) {
        throw Error("refine_root: eps must be positive");
    }
    UniPoly q = square_free_part(p);
    Rational lo = iv.lo;
    Rational hi = iv.hi;
    int lo_sign = q.eval(lo).sign();
    if (lo_sign == 0 || lo_sign * q.eval(hi).sign() >= 0) {
        throw Error("refine_root: interval does not bracket a simple root");
    }
    while (hi - lo >= eps) {
        Rational mid = (lo + hi) / Rational(2);
        int sg = q.eval(mid).sign();
        if (sg == 0) {
            return mid;
        }
        if (sg == lo_sign) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / Rational(2);
}

BigFloat refine_root_to_float(const UniPoly& p, const RootInterval& iv, mpfr_prec_t prec) {
    // The bracket must be tighter than an ulp of the root at `prec` bits.
    // Roots handled here are below the Cauchy bound; an absolute target of
    // 2^-(prec+8) relative to magnitude <= bound keeps the conversion error
    // within rounding.
    mpz_class denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 2, static_cast<unsigned long>(prec + 8));
    Rational eps(mpq_class(mpz_class(1), denom));
    return BigFloat::from_rational(refine_root(p, iv, eps), prec);
}

std::vector<Rational> rational_roots(const UniPoly& p) {
    std::vector<Rational> roots;
    if (p.is_zero()) {
        throw ZeroPolynomialError("rational roots of the zero polynomial");
    }
    UniPoly q = strip_zero_roots(p);
    if (q.degree() < 1) {
        return roots;
    }
    // Clear denominators to an integer polynomial.
    mpz_class lcm(1);
    for (const auto& c : q.coeffs()) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
    }
    UniPoly zq = Rational(lcm) * q;
    auto num_divs = divisors(zq.coeff(0).num());
    auto den_divs = divisors(zq.leading().num());
    if (num_divs.empty() || den_divs.empty()) {
        return roots; // edge coefficients too large; callers treat as "unknown"
    }
    for (const auto& a : num_divs) {
        for (const auto& b : den_divs) {
            Rational cand{mpq_class(a, b)};
            for (int s = 0; s < 2; ++s) {
                Rational x = s == 0 ? cand : -cand;
                if (zq.eval(x).is_zero()) {
                    roots.push_back(x);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

} // namespace sinkhorn
