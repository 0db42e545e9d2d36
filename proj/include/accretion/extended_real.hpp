#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "accretion/rational.hpp"

namespace accretion {

// The extended real line: finite rationals plus the two infinities.
// Infinities exist so interval endpoints and suprema can say "unbounded";
// indeterminate arithmetic (inf - inf, 0 * inf, inf / inf) is an error,
// never a silent convention.
class ExtendedReal {
public:
    ExtendedReal() : kind_(Kind::Finite), value_(0) {}
    ExtendedReal(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}
    ExtendedReal(int v) : kind_(Kind::Finite), value_(v) {}

    static ExtendedReal pos_inf() { return ExtendedReal(Kind::PosInf); }
    static ExtendedReal neg_inf() { return ExtendedReal(Kind::NegInf); }

    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }

    // Finite value accessor; calling this on an infinity is a logic error
    // in the caller, reported as DomainError.
    const Rational& finite() const {
        if (!is_finite()) throw DomainError("infinite value where a finite one is required");
        return value_;
    }

    friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.kind_ != b.kind_) return false;
        return a.kind_ != Kind::Finite || a.value_ == b.value_;
    }

    friend std::strong_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
        auto rank = [](Kind k) { return k == Kind::NegInf ? 0 : (k == Kind::Finite ? 1 : 2); };
        if (rank(a.kind_) != rank(b.kind_))
            return rank(a.kind_) <=> rank(b.kind_);
        if (a.kind_ != Kind::Finite) return std::strong_ordering::equal;
        return a.value_ < b.value_   ? std::strong_ordering::less
               : a.value_ > b.value_ ? std::strong_ordering::greater
                                     : std::strong_ordering::equal;
    }

    friend ExtendedReal operator-(const ExtendedReal& a) {
        if (a.is_pos_inf()) return neg_inf();
        if (a.is_neg_inf()) return pos_inf();
        return ExtendedReal(-a.value_);
    }

    friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.is_finite() && b.is_finite()) return ExtendedReal(a.value_ + b.value_);
        if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
            throw DomainError("indeterminate sum inf + (-inf)");
        return a.is_finite() ? b : a;
    }

    friend ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) { return a + (-b); }

    friend ExtendedReal operator*(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.is_finite() && b.is_finite()) return ExtendedReal(a.value_ * b.value_);
        const ExtendedReal& inf = a.is_finite() ? b : a;
        const ExtendedReal& other = a.is_finite() ? a : b;
        if (other.is_finite() && other.value_ == 0)
            throw DomainError("indeterminate product 0 * inf");
        bool negative = (inf.is_neg_inf()) != (other < ExtendedReal(0));
        return negative ? neg_inf() : pos_inf();
    }

    std::string str() const {
        if (is_pos_inf()) return "inf";
        if (is_neg_inf()) return "-inf";
        return format_rational(value_);
    }

private:
    enum class Kind { NegInf, Finite, PosInf };
    explicit ExtendedReal(Kind k) : kind_(k), value_(0) {}

    Kind kind_;
    Rational value_;
};

inline ExtendedReal parse_extended(std::string_view s) {
    if (s == "inf" || s == "+inf") return ExtendedReal::pos_inf();
    if (s == "-inf") return ExtendedReal::neg_inf();
    return ExtendedReal(parse_rational(s));
}

inline ExtendedReal min_e(const ExtendedReal& a, const ExtendedReal& b) { return a < b ? a : b; }
inline ExtendedReal max_e(const ExtendedReal& a, const ExtendedReal& b) { return a < b ? b : a; }

} // namespace accretion
