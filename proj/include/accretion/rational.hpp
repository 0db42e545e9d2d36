#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

#include "accretion/errors.hpp"

namespace accretion {

// Every scalar in this library is an exact arbitrary-precision rational.
// boost::multiprecision keeps values in lowest terms with a positive
// denominator, which is exactly the canonical form we rely on everywhere
// (Thomae's function reads the reduced denominator off the value directly).
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

// cpp_rational's two-argument constructor rejects negative denominators,
// so normalize the sign here and reserve zero denominators for DomainError.
inline Rational make_rational(BigInt n, BigInt d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    return Rational(n, d);
}

inline BigInt floor_big(const Rational& r) {
    BigInt q = num(r) / den(r); // truncates toward zero
    if (num(r) < 0 && q * den(r) != num(r)) --q;
    return q;
}

inline BigInt ceil_big(const Rational& r) { return -floor_big(-r); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

inline Rational abs_r(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// base^e for integer e; e < 0 requires base != 0.
inline Rational pow_rational(const Rational& base, const BigInt& e) {
    if (e < 0) {
        if (base == 0) throw DomainError("zero raised to a negative power");
        return 1 / pow_rational(base, BigInt(-e));
    }
    Rational acc(1), b = base;
    BigInt k = e;
    while (k > 0) {
        if ((k & 1) != 0) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

inline Rational min_r(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max_r(const Rational& a, const Rational& b) { return a < b ? b : a; }

// 2^-k as a rational, k >= 0.
inline Rational pow2_neg(unsigned k) {
    return Rational(BigInt(1), BigInt(1) << k);
}

// Canonical text form: "p" when the value is an integer, else "p/q".
inline std::string format_rational(const Rational& r) {
    if (is_integer(r)) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

// Rounded positional rendering for display; the p/q form stays canonical.
inline std::string format_decimal(const Rational& r, unsigned digits = 6) {
    BigInt scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    Rational scaled = r * Rational(scale);
    BigInt n = floor_big(scaled);
    if (scaled - Rational(n) >= Rational(1, 2)) n += 1;
    bool neg = n < 0;
    BigInt a = neg ? BigInt(-n) : n;
    std::string frac = BigInt(a % scale).str();
    frac.insert(frac.begin(), digits - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    std::string out = (neg ? "-" : "") + BigInt(a / scale).str();
    if (!frac.empty()) out += "." + frac;
    return out;
}

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

} // namespace detail

// Accepts "p/q", integers, and plain decimals ("3.14", "-0.5", ".25").
inline Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = (s[0] == '-');
        s.remove_prefix(1);
    }
    if (s.empty()) throw ParseError("empty number", text.size());

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!detail::all_digits(p) || !detail::all_digits(q))
            throw ParseError("malformed fraction: " + std::string(text), 0);
        value = make_rational(BigInt(std::string(p)), BigInt(std::string(q)));
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty())
            throw ParseError("malformed decimal: " + std::string(text), 0);
        if ((!ip.empty() && !detail::all_digits(ip)) || (!fp.empty() && !detail::all_digits(fp)))
            throw ParseError("malformed decimal: " + std::string(text), 0);
        BigInt whole = ip.empty() ? BigInt(0) : BigInt(std::string(ip));
        BigInt frac = fp.empty() ? BigInt(0) : BigInt(std::string(fp));
        BigInt scale = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        value = Rational(whole) + make_rational(frac, scale);
    } else {
        if (!detail::all_digits(s))
            throw ParseError("malformed number: " + std::string(text), 0);
        value = Rational(BigInt(std::string(s)));
    }
    return negative ? Rational(-value) : value;
}

} // namespace accretion
