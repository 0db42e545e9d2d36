#pragma once

#include <optional>

#include "accretion/extended_real.hpp"
#include "accretion/rational.hpp"

namespace accretion {

// Simplest-rational search. "Simplest" means smallest denominator, with the
// smallest magnitude numerator among those. Walks the continued-fraction
// expansion of the interval, which visits the Stern-Brocot ancestor chain;
// the first tree vertex inside the interval is the unique simplest rational.

namespace detail {

// Bounds may be one-sided open; callers guarantee a nonempty interval.
inline Rational simplest_pos(const Rational& lo, bool lo_strict,
                             const Rational& hi, bool hi_strict) {
    BigInt n = floor_big(lo);
    BigInt z = (is_integer(lo) && !lo_strict) ? n : n + 1;
    Rational zr(z);
    if (zr < hi || (zr == hi && !hi_strict)) return zr;
    // No admissible integer, so every candidate lies in (n, n+1) and has the
    // form n + 1/y. Recurse on the reciprocal interval; strictness follows
    // each endpoint across the transform.
    if (lo == Rational(n)) {
        // x in (n, hi]: y in [1/(hi-n), inf). The simplest y is the smallest
        // admissible integer, which minimizes the numerator of y and hence
        // the denominator of x.
        Rational b = 1 / (hi - Rational(n));
        BigInt y = is_integer(b) ? (hi_strict ? num(b) + 1 : num(b)) : ceil_big(b);
        return Rational(n) + make_rational(BigInt(1), y);
    }
    Rational r = simplest_pos(1 / (hi - Rational(n)), hi_strict,
                              1 / (lo - Rational(n)), lo_strict);
    return Rational(n) + 1 / r;
}

} // namespace detail

// Simplest rational r with lo < r < hi, each comparison weakened to <= where
// the corresponding strict flag is false. Infinite bounds are allowed.
inline Rational simplest_in(const ExtendedReal& lo, bool lo_strict,
                            const ExtendedReal& hi, bool hi_strict) {
    auto admissible = [&](const Rational& v) {
        ExtendedReal e(v);
        bool above = lo < e || (lo == e && !lo_strict);
        bool below = e < hi || (e == hi && !hi_strict);
        return above && below;
    };
    if (lo > hi || (lo == hi && (lo_strict || hi_strict || !lo.is_finite())))
        throw DomainError("simplest_in on an empty interval");
    if (admissible(Rational(0))) return Rational(0);
    if (hi.is_finite() && hi <= ExtendedReal(0)) // negative side: mirror
        return -simplest_in(-hi, hi_strict, -lo, lo_strict);
    if (!hi.is_finite()) {
        // lo is finite and positive here (0 was inadmissible).
        const Rational& l = lo.finite();
        BigInt z = (is_integer(l) && !lo_strict) ? num(l) : floor_big(l) + 1;
        return Rational(z);
    }
    return detail::simplest_pos(lo.finite(), lo_strict, hi.finite(), hi_strict);
}

inline Rational simplest_in(const Rational& lo, const Rational& hi) {
    return simplest_in(ExtendedReal(lo), false, ExtendedReal(hi), false);
}

// Least q >= 1 such that some reduced p/q lies in the interval. This is the
// denominator of the simplest rational (any non-reduced hit reduces to a
// smaller denominator, so reduced and unrestricted minima coincide).
inline BigInt smallest_denominator(const ExtendedReal& lo, bool lo_strict,
                                   const ExtendedReal& hi, bool hi_strict) {
    return den(simplest_in(lo, lo_strict, hi, hi_strict));
}

} // namespace accretion
