#pragma once

#include <initializer_list>
#include <string>

#include "accretion/extended_real.hpp"

namespace accretion {

// A guaranteed two-sided bound [lo, hi] on a set of reals. Endpoints may be
// infinite, which is how "unbounded in that direction" is reported.
struct Enclosure {
    ExtendedReal lo, hi;

    Enclosure() : lo(0), hi(0) {}
    Enclosure(ExtendedReal l, ExtendedReal h) : lo(std::move(l)), hi(std::move(h)) {
        if (hi < lo) throw DomainError("enclosure with hi < lo");
    }
    static Enclosure point(const Rational& v) { return {ExtendedReal(v), ExtendedReal(v)}; }
    static Enclosure whole_line() { return {ExtendedReal::neg_inf(), ExtendedReal::pos_inf()}; }

    bool is_bounded() const { return lo.is_finite() && hi.is_finite(); }
    bool is_point() const { return lo == hi && lo.is_finite(); }

    Rational width() const { return hi.finite() - lo.finite(); }

    bool contains(const Rational& v) const {
        ExtendedReal e(v);
        return lo <= e && e <= hi;
    }
    bool contains_zero() const { return contains(Rational(0)); }

    friend bool operator==(const Enclosure& a, const Enclosure& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }

    std::string str() const { return "[" + lo.str() + ", " + hi.str() + "]"; }
};

inline Enclosure hull(const Enclosure& a, const Enclosure& b) {
    return {min_e(a.lo, b.lo), max_e(a.hi, b.hi)};
}

inline Enclosure add(const Enclosure& a, const Enclosure& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

inline Enclosure sub(const Enclosure& a, const Enclosure& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

inline Enclosure negate(const Enclosure& a) { return {-a.hi, -a.lo}; }

namespace detail {

// Endpoint product for set-range semantics: an infinite endpoint is a limit,
// never attained, so 0 * inf contributes 0 to the candidate products.
inline ExtendedReal range_mul(const ExtendedReal& a, const ExtendedReal& b) {
    if ((a.is_finite() && a.finite() == 0) || (b.is_finite() && b.finite() == 0))
        return ExtendedReal(0);
    return a * b;
}

template <typename MulFn>
Enclosure mul_with(const Enclosure& a, const Enclosure& b, MulFn mul) {
    ExtendedReal c[4] = {mul(a.lo, b.lo), mul(a.lo, b.hi), mul(a.hi, b.lo), mul(a.hi, b.hi)};
    ExtendedReal lo = c[0], hi = c[0];
    for (int i = 1; i < 4; ++i) {
        lo = min_e(lo, c[i]);
        hi = max_e(hi, c[i]);
    }
    return {lo, hi};
}

} // namespace detail

// Public product: indeterminate endpoint forms (0 * inf) are an error.
inline Enclosure mul(const Enclosure& a, const Enclosure& b) {
    return detail::mul_with(a, b, [](const ExtendedReal& x, const ExtendedReal& y) { return x * y; });
}

// Internal product for range evaluation; see range_mul above.
inline Enclosure mul_range(const Enclosure& a, const Enclosure& b) {
    return detail::mul_with(a, b, detail::range_mul);
}

// Range of {1/y : y in B, y != 0}. B = {0} exactly is a division by zero.
inline Enclosure reciprocal_range(const Enclosure& b) {
    ExtendedReal zero(0);
    auto inv = [](const ExtendedReal& e) {
        if (!e.is_finite()) return ExtendedReal(0);
        return ExtendedReal(1 / e.finite());
    };
    if (b.lo == zero && b.hi == zero) throw DomainError("division by zero");
    if (b.lo > zero || b.hi < zero) return {inv(b.hi), inv(b.lo)};
    if (b.lo == zero) return {inv(b.hi), ExtendedReal::pos_inf()};
    if (b.hi == zero) return {ExtendedReal::neg_inf(), inv(b.lo)};
    return Enclosure::whole_line(); // zero interior to b
}

inline Enclosure div_range(const Enclosure& a, const Enclosure& b) {
    return mul_range(a, reciprocal_range(b));
}

} // namespace accretion
