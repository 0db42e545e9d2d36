#pragma once

#include <map>
#include <mutex>
#include <utility>

#include "accretion/enclosure.hpp"
#include "accretion/rational.hpp"

// Certified sine and cosine over exact rational arguments.
//
// Everything funnels through fixed-point interval arithmetic on big integers
// at an explicit binary scale: a value is an integer pair [lo, hi] meaning
// [lo * 2^-p, hi * 2^-p], and every operation rounds outward. pi comes from
// Machin's formula with the alternating-series remainder accounted for, the
// argument is reduced by the nearest multiple of 2*pi, and the Taylor series
// is summed with a tail bound. The result is a pair of rational bounds whose
// width is provably below the requested 2^-W.

namespace accretion {
namespace fx {

struct Ival {
    BigInt lo, hi;
};

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

inline Ival add(const Ival& a, const Ival& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Ival neg(const Ival& a) { return {-a.hi, -a.lo}; }

// Product of two scaled intervals, result rescaled back to 2^-p.
inline Ival mul(const Ival& a, const Ival& b, unsigned p) {
    BigInt c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    BigInt lo = c[0], hi = c[0];
    for (int i = 1; i < 4; ++i) {
        if (c[i] < lo) lo = c[i];
        if (c[i] > hi) hi = c[i];
    }
    BigInt scale = BigInt(1) << p;
    return {floor_div(lo, scale), ceil_div(hi, scale)};
}

inline Ival div_int(const Ival& a, const BigInt& d) {
    return {floor_div(a.lo, d), ceil_div(a.hi, d)};
}

inline Ival from_rational(const Rational& r, unsigned p) {
    Rational scaled = r * Rational(BigInt(1) << p);
    return {floor_big(scaled), ceil_big(scaled)};
}

inline Rational to_rational(const BigInt& m, unsigned p) {
    return make_rational(m, BigInt(1) << p);
}

inline Enclosure to_enclosure(const Ival& a, unsigned p) {
    return {ExtendedReal(to_rational(a.lo, p)), ExtendedReal(to_rational(a.hi, p))};
}

inline BigInt abs_hi(const Ival& a) {
    BigInt m = a.lo < 0 ? BigInt(-a.lo) : a.lo;
    BigInt n = a.hi < 0 ? BigInt(-a.hi) : a.hi;
    return m > n ? m : n;
}

// arctan(1/m) at scale 2^-p. Alternating series; the truncation error is
// below the first omitted term, which is below one unit once the divisor
// exceeds 2^p, and each computed term carries at most one unit of rounding.
inline Ival atan_inv(unsigned m, unsigned p) {
    BigInt scale = BigInt(1) << p;
    BigInt mpow = m; // m^(2k+1)
    BigInt m2 = BigInt(m) * m;
    Ival sum{0, 0};
    bool positive = true;
    for (unsigned k = 0;; ++k) {
        BigInt d = BigInt(2 * k + 1) * mpow;
        if (d > scale) break;
        Ival term{floor_div(scale, d), ceil_div(scale, d)};
        sum = add(sum, positive ? term : neg(term));
        positive = !positive;
        mpow *= m2;
    }
    sum.lo -= 2; // first omitted term plus rounding slack
    sum.hi += 2;
    return sum;
}

// pi = 16 atan(1/5) - 4 atan(1/239), cached per scale.
inline Ival pi_fixed(unsigned p) {
    static std::map<unsigned, Ival> cache;
    static std::mutex cache_mutex;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        if (auto it = cache.find(p); it != cache.end()) return it->second;
    }
    unsigned q = p + 8;
    Ival a = atan_inv(5, q), b = atan_inv(239, q);
    Ival pi_q = add(Ival{a.lo * 16, a.hi * 16}, neg(Ival{b.lo * 4, b.hi * 4}));
    BigInt down = BigInt(1) << 8;
    Ival pi_p{floor_div(pi_q.lo, down), ceil_div(pi_q.hi, down)};
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(p, pi_p);
    return pi_p;
}

inline unsigned magnitude_bits(const Rational& x) {
    BigInt f = floor_big(abs_r(x));
    if (f == 0) return 1;
    return static_cast<unsigned>(boost::multiprecision::msb(f)) + 2;
}

// Taylor sums for sin and cos on a tight interval enclosing the reduced
// argument (|arg| <= 3.3). Returns scaled intervals including a tail bound.
inline std::pair<Ival, Ival> taylor_sin_cos(const Ival& m, unsigned p) {
    Ival m2 = mul(m, m, p);
    Ival sin_sum = m, cos_sum{BigInt(1) << p, BigInt(1) << p};
    Ival term_s = m, term_c{BigInt(1) << p, BigInt(1) << p};
    BigInt tail_s = 0, tail_c = 0;
    for (unsigned k = 1; k < 200; ++k) {
        term_s = neg(div_int(mul(term_s, m2, p), BigInt(2 * k) * (2 * k + 1)));
        term_c = neg(div_int(mul(term_c, m2, p), BigInt(2 * k - 1) * (2 * k)));
        sin_sum = add(sin_sum, term_s);
        cos_sum = add(cos_sum, term_c);
        if (abs_hi(term_s) <= 1 && abs_hi(term_c) <= 1 && 2 * k * (2 * k + 1) > 16) {
            tail_s = abs_hi(term_s) + 2;
            tail_c = abs_hi(term_c) + 2;
            break;
        }
    }
    sin_sum.lo -= tail_s; sin_sum.hi += tail_s;
    cos_sum.lo -= tail_c; cos_sum.hi += tail_c;
    return {sin_sum, cos_sum};
}

} // namespace fx

// [lo, hi] containing pi with width <= 2^-bits.
inline Enclosure pi_enclosure(unsigned bits) {
    return fx::to_enclosure(fx::pi_fixed(bits + 4), bits + 4);
}

// Certified value enclosures: sin(x) and cos(x) bracketed by rationals with
// width <= 2^-width_bits, for any exact rational x.
inline std::pair<Enclosure, Enclosure> sin_cos_enclosure(const Rational& x,
                                                         unsigned width_bits = 64) {
    unsigned p = width_bits + 48;
    Rational r_lo = x, r_hi = x;
    if (abs_r(x) > 3) {
        unsigned q = p + fx::magnitude_bits(x) + 16;
        for (;; q += 64) {
            fx::Ival pi2x = fx::pi_fixed(q);
            fx::Ival two_pi{pi2x.lo * 2, pi2x.hi * 2};
            Rational tp_lo = fx::to_rational(two_pi.lo, q), tp_hi = fx::to_rational(two_pi.hi, q);
            Rational mid = (tp_lo + tp_hi) / 2;
            BigInt n = floor_big(x / mid + Rational(1, 2));
            if (n > 0) { r_lo = x - Rational(n) * tp_hi; r_hi = x - Rational(n) * tp_lo; }
            else       { r_lo = x - Rational(n) * tp_lo; r_hi = x - Rational(n) * tp_hi; }
            Rational bound(33, 10);
            if (r_lo >= -bound && r_hi <= bound) break; // always at modest q; loop is a safety net
        }
    }
    Rational rm = (r_lo + r_hi) / 2, h = (r_hi - r_lo) / 2;
    auto [sin_i, cos_i] = fx::taylor_sin_cos(fx::from_rational(rm, p), p);
    ExtendedReal hh((h)); // reduction slack: |sin r - sin rm| <= |r - rm| <= h
    Enclosure s = fx::to_enclosure(sin_i, p), c = fx::to_enclosure(cos_i, p);
    return {Enclosure{s.lo - hh, s.hi + hh}, Enclosure{c.lo - hh, c.hi + hh}};
}

inline Enclosure sin_enclosure(const Rational& x, unsigned width_bits = 64) {
    return sin_cos_enclosure(x, width_bits).first;
}
inline Enclosure cos_enclosure(const Rational& x, unsigned width_bits = 64) {
    return sin_cos_enclosure(x, width_bits).second;
}

namespace fx {

// Does any critical point offset + 2 pi k (offset = t*pi, t in {-1/2, 0, 1/2, 1})
// land in [a, b]? Rational a, b never equal t*pi + 2*pi*k except when t = 0 and
// the point is 0 itself, so after that special case the floor/ceil decisions
// below always resolve at finite precision.
inline bool crit_point_in(const Rational& a, const Rational& b, int t_num) {
    if (t_num == 0 && a <= 0 && 0 <= b) return true;
    for (unsigned bits = 96;; bits += 96) {
        Ival pi_i = pi_fixed(bits);
        Rational pi_lo = to_rational(pi_i.lo, bits), pi_hi = to_rational(pi_i.hi, bits);
        // g(v) = v/(2 pi) - t/2; a valid k exists iff [g(a), g(b)] meets Z.
        Rational shift = Rational(t_num, 4); // t/2 with t = t_num/2
        auto g = [&](const Rational& v) {
            Rational q1 = v / (2 * pi_lo), q2 = v / (2 * pi_hi);
            return std::pair<Rational, Rational>{min_r(q1, q2) - shift, max_r(q1, q2) - shift};
        };
        auto [ga_lo, ga_hi] = g(a);
        auto [gb_lo, gb_hi] = g(b);
        BigInt kmin_a = ceil_big(ga_lo), kmin_b = ceil_big(ga_hi);
        BigInt kmax_a = floor_big(gb_lo), kmax_b = floor_big(gb_hi);
        if (kmin_a == kmin_b && kmax_a == kmax_b) return kmin_a <= kmax_a;
        if (bits > 4096) return true; // sound fallback: widen the range
    }
}

} // namespace fx

namespace detail {

inline Enclosure trig_range_impl(bool want_sin, const Enclosure& in, unsigned width_bits) {
    Enclosure unit{ExtendedReal(Rational(-1)), ExtendedReal(Rational(1))};
    if (!in.is_bounded()) return unit;
    const Rational a = in.lo.finite(), b = in.hi.finite();
    if (b - a >= 7) return unit; // longer than a full period
    // sin peaks at pi/2 + 2 pi k, dips at -pi/2 + 2 pi k;
    // cos peaks at 2 pi k, dips at pi + 2 pi k.
    bool max_att = fx::crit_point_in(a, b, want_sin ? 1 : 0);
    bool min_att = fx::crit_point_in(a, b, want_sin ? -1 : 2);
    auto ea = sin_cos_enclosure(a, width_bits), eb = sin_cos_enclosure(b, width_bits);
    const Enclosure& va = want_sin ? ea.first : ea.second;
    const Enclosure& vb = want_sin ? eb.first : eb.second;
    ExtendedReal one{Rational(1)}, neg_one{Rational(-1)};
    ExtendedReal hi = max_att ? one : min_e(max_e(va.hi, vb.hi), one);
    ExtendedReal lo = min_att ? neg_one : max_e(min_e(va.lo, vb.lo), neg_one);
    return {lo, hi};
}

} // namespace detail

// Range enclosures of sin/cos over an interval of arguments. Tight up to the
// certified evaluation width: interior extrema contribute exact +-1, endpoint
// values carry width <= 2^-width_bits.
inline Enclosure sin_range(const Enclosure& in, unsigned width_bits = 64) {
    return detail::trig_range_impl(true, in, width_bits);
}
inline Enclosure cos_range(const Enclosure& in, unsigned width_bits = 64) {
    return detail::trig_range_impl(false, in, width_bits);
}

} // namespace accretion
