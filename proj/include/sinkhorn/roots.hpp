#pragma once

#include <vector>

#include "sinkhorn/bigfloat.hpp"
#include "sinkhorn/polynomial.hpp"
#include "sinkhorn/rational.hpp"

namespace sinkhorn {

/// Open interval (lo, hi) isolating exactly one root of the square-free part
/// of the polynomial it was produced for, tagged with that root's
/// multiplicity in the original polynomial. Endpoints are never roots.
struct RootInterval {
    Rational lo;
    Rational hi;
    int multiplicity = 1;
};

/// Isolating intervals for the distinct positive real roots of p, ascending.
/// Sturm sequences on the square-free part; multiplicities from the Yun
/// decomposition. Throws ZeroPolynomialError for the zero polynomial.
std::vector<RootInterval> isolate_positive_roots(const UniPoly& p);

/// Bisection on the square-free part of p until the bracket is narrower than
/// eps; returns the midpoint (or the root itself when a bisection point hits
/// it exactly). Requires iv to isolate a root of square_free_part(p), eps > 0.
Rational refine_root(const UniPoly& p, const RootInterval& iv, const Rational& eps);

/// refine_root to an accuracy below one ulp at `prec` bits, returned rounded
/// to a BigFloat of that precision.
BigFloat refine_root_to_float(const UniPoly& p, const RootInterval& iv, mpfr_prec_t prec);

/// All rational roots of p, ascending, found by the rational root test on the
/// integer-cleared polynomial. Best effort: returns an empty list when the
/// edge coefficients are too large to factor quickly (> ~10^16).
std::vector<Rational> rational_roots(const UniPoly& p);

} // namespace sinkhorn
