#pragma once

#include <array>
#include <string>

#include "accretion/rational.hpp"

namespace accretion {

// A point of the 1- or 2-dimensional ambient space. Coordinates are exact.
class Point {
public:
    Point() : dim_(1), c_{Rational(0), Rational(0)} {}
    explicit Point(Rational x) : dim_(1), c_{std::move(x), Rational(0)} {}
    Point(Rational x, Rational y) : dim_(2), c_{std::move(x), std::move(y)} {}

    int dim() const { return dim_; }
    const Rational& x() const { return c_[0]; }
    const Rational& y() const { return c_[1]; }

    friend bool operator==(const Point& a, const Point& b) {
        return a.dim_ == b.dim_ && a.c_ == b.c_;
    }
    // Lexicographic order, used for deterministic sorting of cluster output.
    friend bool operator<(const Point& a, const Point& b) {
        if (a.c_[0] != b.c_[0]) return a.c_[0] < b.c_[0];
        return a.c_[1] < b.c_[1];
    }

    std::string str() const {
        if (dim_ == 1) return format_rational(c_[0]);
        return "(" + format_rational(c_[0]) + ", " + format_rational(c_[1]) + ")";
    }

private:
    int dim_;
    std::array<Rational, 2> c_;
};

// sqrt(s) bracketed by rationals: lo^2 <= s <= hi^2 with hi - lo <= 2^-bits.
// Scaled integer square root; exact when s is a perfect square of a dyadic.
inline std::pair<Rational, Rational> sqrt_bracket(const Rational& s, unsigned bits = 40) {
    if (s < 0) throw DomainError("square root of a negative value");
    if (s == 0) return {Rational(0), Rational(0)};
    BigInt scale = BigInt(1) << (2 * bits);
    BigInt scaled = floor_big(Rational(s) * Rational(scale));
    BigInt root = boost::multiprecision::sqrt(scaled); // floor sqrt
    Rational lo = make_rational(root, BigInt(1) << bits);
    if (lo * lo == s) return {lo, lo};
    Rational hi = make_rational(root + 1, BigInt(1) << bits);
    return {lo, hi};
}

struct Distance {
    Rational squared;  // exact
    Rational root_lo;  // root_lo^2 <= squared <= root_hi^2
    Rational root_hi;
};

inline Rational squared_distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw DomainError("distance between points of different dimension");
    Rational dx = a.x() - b.x();
    Rational s = dx * dx;
    if (a.dim() == 2) {
        Rational dy = a.y() - b.y();
        s += dy * dy;
    }
    return s;
}

// In 1-D the distance |x - y| is itself rational, so the bracket is exact.
inline Distance distance(const Point& a, const Point& b) {
    Rational s = squared_distance(a, b);
    if (a.dim() == 1) {
        Rational d = abs_r(a.x() - b.x());
        return {s, d, d};
    }
    auto [lo, hi] = sqrt_bracket(s);
    return {s, lo, hi};
}

// d(a,b) <= eps, decided exactly by comparing squares. eps must be >= 0.
inline bool within(const Point& a, const Point& b, const Rational& eps) {
    if (eps < 0) throw DomainError("negative tolerance");
    return squared_distance(a, b) <= eps * eps;
}

} // namespace accretion
