#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "accretion/enclosure.hpp"
#include "accretion/extended_real.hpp"

namespace accretion {

// One contiguous piece of the real line, each endpoint independently open or
// closed. A singleton {p} is the degenerate closed piece [p, p]. Infinite
// endpoints are always open (infinity is not a member of anything).
struct Interval {
    ExtendedReal lo, hi;
    bool lo_open = true, hi_open = true;

    bool is_singleton() const { return lo == hi; }

    bool contains(const Rational& p) const {
        ExtendedReal e(p);
        bool above = lo_open ? lo < e : lo <= e;
        bool below = hi_open ? e < hi : e <= hi;
        return above && below;
    }

    // Nonempty width as an extended value; singletons have width 0.
    ExtendedReal length() const { return hi - lo; }
};

inline Interval make_interval(ExtendedReal lo, bool lo_open, ExtendedReal hi, bool hi_open) {
    if (!lo.is_finite()) lo_open = true;
    if (!hi.is_finite()) hi_open = true;
    return Interval{std::move(lo), std::move(hi), lo_open, hi_open};
}

// Describes one set: openness, closedness, boundedness, and extrema.
// sup/inf are meaningless (and absent) for the empty set.
struct TopologyReport {
    bool is_empty = true;
    bool is_open = true;
    bool is_closed = true;
    bool is_bounded = true;
    std::optional<ExtendedReal> sup, inf;
};

// A finite union of disjoint, non-adjacent, sorted intervals: the normal
// form is unique, so set equality is structural equality.
class IntervalSet {
public:
    IntervalSet() = default;

    static IntervalSet empty() { return IntervalSet(); }
    static IntervalSet whole_line() {
        return IntervalSet::of(make_interval(ExtendedReal::neg_inf(), true, ExtendedReal::pos_inf(), true));
    }
    static IntervalSet singleton(const Rational& p) {
        return IntervalSet::of(make_interval(ExtendedReal(p), false, ExtendedReal(p), false));
    }
    static IntervalSet of(Interval piece) {
        IntervalSet s;
        s.ps_.push_back(std::move(piece));
        s.normalize();
        return s;
    }
    static IntervalSet from_pieces(std::vector<Interval> pieces) {
        IntervalSet s;
        s.ps_ = std::move(pieces);
        s.normalize();
        return s;
    }

    // Open ball V_eps(c) = (c - eps, c + eps); eps must be positive.
    static IntervalSet neighborhood(const Rational& c, const Rational& eps) {
        if (eps <= 0) throw DomainError("neighborhood radius must be positive");
        return IntervalSet::of(make_interval(ExtendedReal(c - eps), true, ExtendedReal(c + eps), true));
    }

    const std::vector<Interval>& pieces() const { return ps_; }
    bool is_empty() const { return ps_.empty(); }

    bool contains(const Rational& p) const {
        for (const Interval& iv : ps_)
            if (iv.contains(p)) return true;
        return false;
    }

    // p is arbitrarily close to the set: every neighborhood of p meets it.
    // For a finite interval union that is exactly membership in the piecewise
    // closure, i.e. lo <= p <= hi for some piece.
    bool is_acl(const Rational& p) const {
        ExtendedReal e(p);
        for (const Interval& iv : ps_)
            if (iv.lo <= e && e <= iv.hi) return true;
        return false;
    }

    IntervalSet complement() const {
        std::vector<Interval> out;
        ExtendedReal cursor = ExtendedReal::neg_inf();
        bool cursor_open = true; // openness of the gap's low end
        for (const Interval& iv : ps_) {
            out.push_back(make_interval(cursor, cursor_open, iv.lo, !iv.lo_open));
            cursor = iv.hi;
            cursor_open = !iv.hi_open;
        }
        out.push_back(make_interval(cursor, cursor_open, ExtendedReal::pos_inf(), true));
        return from_pieces(std::move(out));
    }

    IntervalSet unite(const IntervalSet& other) const {
        std::vector<Interval> all = ps_;
        all.insert(all.end(), other.ps_.begin(), other.ps_.end());
        return from_pieces(std::move(all));
    }

    IntervalSet intersect(const IntervalSet& other) const {
        std::vector<Interval> out;
        for (const Interval& a : ps_) {
            for (const Interval& b : other.ps_) {
                ExtendedReal lo = max_e(a.lo, b.lo), hi = min_e(a.hi, b.hi);
                bool lo_open = (a.lo == b.lo) ? (a.lo_open || b.lo_open)
                                              : (a.lo < b.lo ? b.lo_open : a.lo_open);
                bool hi_open = (a.hi == b.hi) ? (a.hi_open || b.hi_open)
                                              : (a.hi < b.hi ? a.hi_open : b.hi_open);
                out.push_back(make_interval(lo, lo_open, hi, hi_open));
            }
        }
        return from_pieces(std::move(out));
    }

    IntervalSet difference(const IntervalSet& other) const {
        return intersect(other.complement());
    }

    // Close every finite endpoint; adjacent pieces then merge in normalization.
    IntervalSet closure() const {
        std::vector<Interval> out;
        for (Interval iv : ps_) {
            if (iv.lo.is_finite()) iv.lo_open = false;
            if (iv.hi.is_finite()) iv.hi_open = false;
            out.push_back(std::move(iv));
        }
        return from_pieces(std::move(out));
    }

    // In normal form a closed finite endpoint always abuts a genuine gap, so
    // the interior opens each piece and drops singletons.
    IntervalSet interior() const {
        std::vector<Interval> out;
        for (const Interval& iv : ps_) {
            if (iv.is_singleton()) continue;
            out.push_back(make_interval(iv.lo, true, iv.hi, true));
        }
        return from_pieces(std::move(out));
    }

    // Points arbitrarily close to both the set and its complement.
    IntervalSet boundary() const { return closure().difference(interior()); }

    TopologyReport report() const {
        TopologyReport r;
        r.is_empty = is_empty();
        r.is_open = (*this == interior());
        r.is_closed = (*this == closure());
        if (!r.is_empty) {
            r.inf = ps_.front().lo;
            r.sup = ps_.back().hi;
            r.is_bounded = r.inf->is_finite() && r.sup->is_finite();
        }
        return r;
    }

    // Least upper bound; error on the empty set and on sets unbounded above.
    // The defining property (upper bound that the set accretes to) is checked
    // before returning.
    Rational sup() const {
        if (is_empty()) throw DomainError("supremum of the empty set");
        const ExtendedReal& s = ps_.back().hi;
        if (!s.is_finite()) throw DomainError("supremum of a set unbounded above");
        if (!is_acl(s.finite()))
            throw DomainError("internal: supremum not arbitrarily close to the set");
        return s.finite();
    }

    Rational inf() const {
        if (is_empty()) throw DomainError("infimum of the empty set");
        const ExtendedReal& s = ps_.front().lo;
        if (!s.is_finite()) throw DomainError("infimum of a set unbounded below");
        if (!is_acl(s.finite()))
            throw DomainError("internal: infimum not arbitrarily close to the set");
        return s.finite();
    }

    // Outer bounds as an enclosure (whole line for the empty set).
    Enclosure bounds() const {
        if (is_empty()) throw DomainError("bounds of the empty set");
        return {ps_.front().lo, ps_.back().hi};
    }

    // Normal form is unique, so structural comparison is set equality.
    friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
        if (a.ps_.size() != b.ps_.size()) return false;
        for (std::size_t i = 0; i < a.ps_.size(); ++i) {
            const Interval &x = a.ps_[i], &y = b.ps_[i];
            if (x.lo != y.lo || x.hi != y.hi) return false;
            if (x.lo_open != y.lo_open || x.hi_open != y.hi_open) return false;
        }
        return true;
    }

    std::string str() const;
    static IntervalSet parse(std::string_view text);

private:
    std::vector<Interval> ps_;

    static bool piece_empty(const Interval& iv) {
        if (iv.lo > iv.hi) return true;
        if (iv.lo == iv.hi) return iv.lo_open || iv.hi_open || !iv.lo.is_finite();
        return false;
    }

    void normalize() {
        std::vector<Interval> in;
        in.reserve(ps_.size());
        for (Interval& iv : ps_) {
            if (!iv.lo.is_finite()) iv.lo_open = true;
            if (!iv.hi.is_finite()) iv.hi_open = true;
            if (!piece_empty(iv)) in.push_back(std::move(iv));
        }
        std::sort(in.begin(), in.end(), [](const Interval& a, const Interval& b) {
            if (a.lo != b.lo) return a.lo < b.lo;
            if (a.lo_open != b.lo_open) return !a.lo_open; // closed end starts earlier
            if (a.hi != b.hi) return a.hi < b.hi;
            return a.hi_open && !b.hi_open;
        });
        ps_.clear();
        for (Interval& iv : in) {
            if (ps_.empty()) {
                ps_.push_back(std::move(iv));
                continue;
            }
            Interval& cur = ps_.back();
            bool overlap = iv.lo < cur.hi;
            bool touch = iv.lo == cur.hi && (!cur.hi_open || !iv.lo_open);
            if (overlap || touch) {
                if (iv.hi > cur.hi) {
                    cur.hi = iv.hi;
                    cur.hi_open = iv.hi_open;
                } else if (iv.hi == cur.hi) {
                    cur.hi_open = cur.hi_open && iv.hi_open;
                }
            } else {
                ps_.push_back(std::move(iv));
            }
        }
    }
};

// --- text form -------------------------------------------------------------
//
//   set    := piece ('U' piece)*
//   piece  := bracket ext ',' ext bracket | '{' [rat (',' rat)*] '}'
//   ext    := rational | 'inf' | '-inf'
//
// Bracket shape picks openness: '(' / ')' open, '[' / ']' closed. "{}" is the
// empty set. Emission uses the same syntax and is canonical because the
// internal form is.

inline std::string IntervalSet::str() const {
    if (ps_.empty()) return "{}";
    std::string out;
    for (std::size_t i = 0; i < ps_.size(); ++i) {
        if (i) out += " U ";
        const Interval& iv = ps_[i];
        if (iv.is_singleton()) {
            out += "{" + iv.lo.str() + "}";
        } else {
            out += iv.lo_open ? "(" : "[";
            out += iv.lo.str() + ", " + iv.hi.str();
            out += iv.hi_open ? ")" : "]";
        }
    }
    return out;
}

namespace detail {

struct SetScanner {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        if (pos >= s.size()) throw ParseError("unexpected end of set expression", pos);
        return s[pos];
    }
    char take() {
        char c = peek();
        ++pos;
        return c;
    }
    void expect(char c) {
        char g = take();
        if (g != c)
            throw ParseError(std::string("expected '") + c + "' in set expression", pos - 1);
    }

    // Longest run of characters that can form a scalar or "inf"/"-inf".
    ExtendedReal extended_value() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size()) {
            char c = s[pos];
            if ((c >= '0' && c <= '9') || c == '/' || c == '.' || c == '-' || c == '+' ||
                c == 'i' || c == 'n' || c == 'f')
                ++pos;
            else
                break;
        }
        if (pos == start) throw ParseError("expected a number in set expression", pos);
        try {
            return parse_extended(s.substr(start, pos - start));
        } catch (const ParseError&) {
            throw ParseError("bad endpoint '" + std::string(s.substr(start, pos - start)) + "'", start);
        }
    }

    Interval piece() {
        char open = take();
        if (open == '{') {
            throw ParseError("internal: singleton list handled by caller", pos);
        }
        if (open != '(' && open != '[')
            throw ParseError("expected '(', '[' or '{' to start a piece", pos - 1);
        ExtendedReal lo = extended_value();
        expect(',');
        ExtendedReal hi = extended_value();
        char close = take();
        if (close != ')' && close != ']')
            throw ParseError("expected ')' or ']' to end a piece", pos - 1);
        return make_interval(lo, open == '(', hi, close == ')');
    }
};

} // namespace detail

inline IntervalSet IntervalSet::parse(std::string_view text) {
    detail::SetScanner sc{text};
    std::vector<Interval> pieces;
    for (;;) {
        char c = sc.peek();
        if (c == '{') {
            sc.take();
            if (sc.peek() != '}') {
                for (;;) {
                    ExtendedReal v = sc.extended_value();
                    if (!v.is_finite())
                        throw ParseError("singleton element must be finite", sc.pos);
                    pieces.push_back(make_interval(v, false, v, false));
                    if (sc.peek() == ',') { sc.take(); continue; }
                    break;
                }
            }
            sc.expect('}');
        } else {
            pieces.push_back(sc.piece());
        }
        if (sc.done()) break;
        char u = sc.take();
        if (u != 'U') throw ParseError("expected 'U' between pieces", sc.pos - 1);
    }
    return IntervalSet::from_pieces(std::move(pieces));
}

} // namespace accretion
