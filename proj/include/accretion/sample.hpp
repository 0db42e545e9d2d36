#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "accretion/eval.hpp"
#include "accretion/interval_set.hpp"
#include "accretion/stern_brocot.hpp"

namespace accretion {

struct SampleOptions {
    int count = 64;
    Rational rational_share{1, 2};
    std::uint64_t seed = 0;
};

namespace detail {

// High-order convergent of sqrt(2); the surrogate sits within about 1e-31 of
// the true irrational, far below every tolerance in use.
inline const Rational& sqrt2_approx() {
    static const Rational value = [] {
        BigInt p = 1, q = 1;
        for (int i = 0; i < 40; ++i) {
            BigInt np = p + 2 * q, nq = p + q;
            p = np;
            q = nq;
        }
        return Rational(p, q);
    }();
    return value;
}

inline Rational frac_part(const Rational& r) {
    return r - Rational(floor_big(r));
}

// floor(log2(r)) up to one unit, from the bit lengths of the two sides
inline long floor_log2_approx(const Rational& r) {
    using boost::multiprecision::msb;
    BigInt n = boost::multiprecision::numerator(r);
    BigInt d = boost::multiprecision::denominator(r);
    return static_cast<long>(msb(n)) - static_cast<long>(msb(d));
}

} // namespace detail

// Deterministic sample points inside one bounded interval: a low-denominator
// sweep for the rational share (walking denominators upward from the smallest
// one present) and equidistributed irrational-tagged surrogates for the rest.
// A degenerate interval yields its single point. Order is ascending by value.
inline std::vector<SamplePoint> sample_points(const Interval& piece, const SampleOptions& opt = {}) {
    if (!piece.lo.is_finite() || !piece.hi.is_finite())
        throw DomainError("cannot sample an unbounded piece");
    Rational lo = piece.lo.finite(), hi = piece.hi.finite();
    std::vector<SamplePoint> out;
    if (lo == hi) {
        if (!piece.lo_open && !piece.hi_open) out.push_back(SamplePoint::rat(lo));
        return out;
    }
    int total = std::max(opt.count, 1);
    Rational want_rat = Rational(total) * opt.rational_share;
    int n_rat = static_cast<int>(ceil_big(want_rat));
    n_rat = std::min(std::max(n_rat, 0), total);

    BigInt q = smallest_denominator(piece.lo, piece.lo_open, piece.hi, piece.hi_open);
    // a tiny window around a low-denominator rational stalls the sweep: every
    // other fraction at nearby denominators misses it. Wide pieces fill their
    // quota within a few dozen denominators, so after a short budget jump to
    // 2/width, past which each denominator admits a nonzero candidate.
    BigInt q_dense = ceil_big(Rational(2) / (hi - lo));
    int collected = 0;
    for (BigInt steps = 0; collected < n_rat && steps < 200000; ++q, ++steps) {
        if (steps == 64 && q < q_dense) q = q_dense;
        BigInt p_lo = ceil_big(lo * q), p_hi = floor_big(hi * q);
        for (BigInt p = p_lo; p <= p_hi && collected < n_rat; ++p) {
            if (boost::multiprecision::gcd(boost::multiprecision::abs(p), q) != 1) continue;
            Rational v(p, q);
            if (!piece.contains(v)) continue;
            out.push_back(SamplePoint::rat(v));
            ++collected;
        }
    }

    Rational width = hi - lo;
    Rational alpha = detail::sqrt2_approx() - 1;  // irrational in (0, 1)
    std::uint64_t offset = opt.seed % 97;
    // Surrogates land on a dyadic grid a few thousand steps finer than the
    // piece. A raw lo + width * t carries the product of both denominators,
    // and later powers of it get expensive; the grid point right below keeps
    // the spread while capping denominators near the piece's own scale.
    long g = std::max<long>(12, 13 - detail::floor_log2_approx(width));
    Rational step = pow2_neg(static_cast<unsigned>(g));
    int tries = 0;
    for (int j = 0; out.size() < static_cast<std::size_t>(total) && tries < 64 * total; ++j, ++tries) {
        Rational t = detail::frac_part(Rational(BigInt(j + 1 + offset)) * alpha);
        if (t == 0) continue;
        Rational v = lo + width * t;
        v = Rational(floor_big(v / step)) * step;
        if (v == lo || v == hi || !piece.contains(v)) continue;
        out.push_back(SamplePoint::irr(v));
    }

    std::sort(out.begin(), out.end(),
              [](const SamplePoint& a, const SamplePoint& b) { return a.value < b.value; });
    return out;
}

// Samples across every bounded piece of a set, quota split evenly with the
// remainder going to the earlier pieces.
inline std::vector<SamplePoint> sample_points(const IntervalSet& region, const SampleOptions& opt = {}) {
    std::vector<SamplePoint> out;
    const auto& pieces = region.pieces();
    if (pieces.empty()) return out;
    int per = std::max(opt.count / static_cast<int>(pieces.size()), 1);
    int extra = std::max(opt.count - per * static_cast<int>(pieces.size()), 0);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        SampleOptions sub = opt;
        sub.count = per + (static_cast<int>(i) < extra ? 1 : 0);
        auto part = sample_points(pieces[i], sub);
        out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end(),
              [](const SamplePoint& a, const SamplePoint& b) { return a.value < b.value; });
    return out;
}

} // namespace accretion
