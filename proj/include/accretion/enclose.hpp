#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "accretion/enclosure.hpp"
#include "accretion/eval.hpp"
#include "accretion/func.hpp"
#include "accretion/stern_brocot.hpp"
#include "accretion/trig.hpp"

namespace accretion {

// Range analysis: an enclosure of f's value set over a region. The tight flag
// records that the enclosure equals the exact [inf, sup] of the range (up to
// certified trig width) rather than an overestimate from interval arithmetic.
struct RangeResult {
    Enclosure range;
    bool tight = false;
};

struct EncloseOptions {
    unsigned trig_width_bits = 64;
};

namespace detail {

// --- polynomial extraction -------------------------------------------------
// Sums and products of the variable with constants are collected into exact
// coefficient form. Degree <= 2 then gets a vertex analysis that is immune to
// the dependency blowup plain interval arithmetic suffers on x*x - x shapes.

inline std::optional<std::vector<Rational>> try_poly(const ExprPtr& e, int cap = 8) {
    using Poly = std::vector<Rational>;
    auto trim = [](Poly p) {
        while (p.size() > 1 && p.back() == 0) p.pop_back();
        return p;
    };
    switch (e->kind) {
    case NodeKind::Number: return Poly{e->number};
    case NodeKind::Var: return Poly{Rational(0), Rational(1)};
    case NodeKind::Neg: {
        auto a = try_poly(e->a, cap);
        if (!a) return std::nullopt;
        for (auto& c : *a) c = -c;
        return a;
    }
    case NodeKind::Add:
    case NodeKind::Sub: {
        auto a = try_poly(e->a, cap), b = try_poly(e->b, cap);
        if (!a || !b) return std::nullopt;
        Poly out(std::max(a->size(), b->size()), Rational(0));
        for (std::size_t i = 0; i < a->size(); ++i) out[i] = (*a)[i];
        for (std::size_t i = 0; i < b->size(); ++i) {
            if (e->kind == NodeKind::Add) out[i] += (*b)[i];
            else out[i] -= (*b)[i];
        }
        return trim(std::move(out));
    }
    case NodeKind::Mul: {
        auto a = try_poly(e->a, cap), b = try_poly(e->b, cap);
        if (!a || !b) return std::nullopt;
        if (static_cast<int>(a->size() + b->size()) - 2 > cap) return std::nullopt;
        Poly out(a->size() + b->size() - 1, Rational(0));
        for (std::size_t i = 0; i < a->size(); ++i)
            for (std::size_t j = 0; j < b->size(); ++j) {
                Rational t = (*a)[i] * (*b)[j];
                out[i + j] += t;
            }
        return trim(std::move(out));
    }
    case NodeKind::Div: {
        auto a = try_poly(e->a, cap), b = try_poly(e->b, cap);
        if (!a || !b || b->size() != 1 || (*b)[0] == 0) return std::nullopt;
        for (auto& c : *a) c = c / (*b)[0];
        return a;
    }
    case NodeKind::Pow: {
        if (e->b->kind != NodeKind::Number || !is_integer(e->b->number) || e->b->number < 0)
            return std::nullopt;
        auto base = try_poly(e->a, cap);
        if (!base) return std::nullopt;
        long n = static_cast<long>(num(e->b->number));
        if (n > cap) return std::nullopt;
        Poly acc{Rational(1)};
        for (long i = 0; i < n; ++i) {
            if (static_cast<int>(acc.size() + base->size()) - 2 > cap) return std::nullopt;
            Poly out(acc.size() + base->size() - 1, Rational(0));
            for (std::size_t j = 0; j < acc.size(); ++j)
                for (std::size_t k = 0; k < base->size(); ++k) {
                    Rational t = acc[j] * (*base)[k];
                    out[j + k] += t;
                }
            acc = std::move(out);
        }
        return trim(std::move(acc));
    }
    default: return std::nullopt;
    }
}

// Exact range of c0 + c1 x + c2 x^2 over an interval, allowing infinite ends.
inline Enclosure poly2_range(const std::vector<Rational>& c, const Interval& piece) {
    Rational c0 = c.size() > 0 ? c[0] : Rational(0);
    Rational c1 = c.size() > 1 ? c[1] : Rational(0);
    Rational c2 = c.size() > 2 ? c[2] : Rational(0);
    if (c2 == 0 && c1 == 0) return Enclosure::point(c0);

    auto value_at = [&](const ExtendedReal& x) -> ExtendedReal {
        if (x.is_finite()) {
            Rational v = x.finite();
            Rational r = c0 + c1 * v + c2 * v * v;
            return ExtendedReal(r);
        }
        // behaviour at an infinite end is set by the leading coefficient
        if (c2 != 0) return c2 > 0 ? ExtendedReal::pos_inf() : ExtendedReal::neg_inf();
        bool to_pos = (c1 > 0) == x.is_pos_inf();
        return to_pos ? ExtendedReal::pos_inf() : ExtendedReal::neg_inf();
    };

    ExtendedReal lo = value_at(piece.lo), hi = lo;
    ExtendedReal at_hi = value_at(piece.hi);
    lo = min_e(lo, at_hi);
    hi = max_e(hi, at_hi);
    if (c2 != 0) {
        Rational vx = -c1 / (2 * c2);
        ExtendedReal v(vx);
        if (piece.lo <= v && v <= piece.hi) {
            ExtendedReal at_v = value_at(v);
            lo = min_e(lo, at_v);
            hi = max_e(hi, at_v);
        }
    }
    return Enclosure{lo, hi};
}

// --- generic interval recursion -------------------------------------------

inline ExtendedReal ipow_end(const ExtendedReal& v, const BigInt& n) {
    if (v.is_finite()) return ExtendedReal(pow_rational(v.finite(), n));
    bool even = (n % 2 == 0);
    if (even || v.is_pos_inf()) return ExtendedReal::pos_inf();
    return ExtendedReal::neg_inf();
}

inline Enclosure pow_range(const Enclosure& x, const BigInt& n) {
    if (n == 0) return Enclosure::point(Rational(1));
    if (n < 0) return pow_range(reciprocal_range(x), -n);
    if (n % 2 != 0) return Enclosure{ipow_end(x.lo, n), ipow_end(x.hi, n)};
    ExtendedReal plo = ipow_end(x.lo, n), phi = ipow_end(x.hi, n);
    if (x.lo >= ExtendedReal(Rational(0))) return Enclosure{plo, phi};
    if (x.hi <= ExtendedReal(Rational(0))) return Enclosure{phi, plo};
    return Enclosure{ExtendedReal(Rational(0)), max_e(plo, phi)};
}

inline Enclosure abs_range(const Enclosure& x) {
    ExtendedReal zero{Rational(0)};
    if (x.lo >= zero) return x;
    if (x.hi <= zero) return negate(x);
    return Enclosure{zero, max_e(-x.lo, x.hi)};
}

inline bool is_bare_var(const ExprPtr& e) { return e->kind == NodeKind::Var; }

RangeResult enclose_node(const ExprPtr& e, const Interval& piece, const EncloseOptions& opt);

inline RangeResult enclose_piecewise(const Expr& e, const Interval& piece, const EncloseOptions& opt) {
    IntervalSet here = IntervalSet::of(piece);
    IntervalSet leftover = here;
    std::optional<Enclosure> acc;
    bool tight = true;
    auto feed = [&](const ExprPtr& body, const IntervalSet& region) {
        for (const auto& part : region.pieces()) {
            RangeResult r = enclose_node(body, part, opt);
            acc = acc ? hull(*acc, r.range) : r.range;
            tight = tight && r.tight;
        }
    };
    for (const auto& br : e.branches) {
        feed(br.body, here.intersect(br.guard));
        leftover = leftover.difference(br.guard);
    }
    if (!leftover.is_empty()) {
        if (!e.otherwise)
            throw DomainError("piecewise leaves " + leftover.str() + " uncovered");
        feed(e.otherwise, leftover);
    }
    if (!acc) throw DomainError("piecewise range over an empty region");
    return {*acc, tight};
}

inline RangeResult enclose_node(const ExprPtr& e, const Interval& piece, const EncloseOptions& opt) {
    switch (e->kind) {
    case NodeKind::Number: return {Enclosure::point(e->number), true};
    case NodeKind::Var: return {Enclosure{piece.lo, piece.hi}, true};
    case NodeKind::Add:
    case NodeKind::Sub: {
        RangeResult a = enclose_node(e->a, piece, opt), b = enclose_node(e->b, piece, opt);
        Enclosure r = e->kind == NodeKind::Add ? add(a.range, b.range) : sub(a.range, b.range);
        bool one_const = !depends_on_var(e->a) || !depends_on_var(e->b);
        return {r, a.tight && b.tight && one_const};
    }
    case NodeKind::Mul: {
        RangeResult a = enclose_node(e->a, piece, opt), b = enclose_node(e->b, piece, opt);
        bool one_const = !depends_on_var(e->a) || !depends_on_var(e->b);
        return {mul_range(a.range, b.range), a.tight && b.tight && one_const};
    }
    case NodeKind::Div: {
        RangeResult a = enclose_node(e->a, piece, opt), b = enclose_node(e->b, piece, opt);
        // a zero endpoint still reciprocates exactly; only an interior zero
        // forces the whole-line fallback
        ExtendedReal zero{Rational(0)};
        bool straddle = b.range.lo < zero && zero < b.range.hi;
        bool one_const = !depends_on_var(e->a) || !depends_on_var(e->b);
        return {div_range(a.range, b.range), a.tight && b.tight && one_const && !straddle};
    }
    case NodeKind::Neg: {
        RangeResult a = enclose_node(e->a, piece, opt);
        return {negate(a.range), a.tight};
    }
    case NodeKind::Abs: {
        RangeResult a = enclose_node(e->a, piece, opt);
        return {abs_range(a.range), a.tight};
    }
    case NodeKind::Pow: {
        if (e->b->kind != NodeKind::Number || !is_integer(e->b->number))
            throw DomainError("range analysis needs a constant integer exponent");
        BigInt n = num(e->b->number);
        RangeResult a = enclose_node(e->a, piece, opt);
        ExtendedReal zero{Rational(0)};
        bool straddle = n < 0 && a.range.lo < zero && zero < a.range.hi;
        return {pow_range(a.range, n), a.tight && !straddle};
    }
    case NodeKind::Sin:
    case NodeKind::Cos: {
        RangeResult a = enclose_node(e->a, piece, opt);
        Enclosure r = e->kind == NodeKind::Sin ? sin_range(a.range, opt.trig_width_bits)
                                               : cos_range(a.range, opt.trig_width_bits);
        return {r, a.tight};
    }
    case NodeKind::IndicatorQ: {
        if (piece.is_singleton()) {
            SamplePoint p = SamplePoint::rat(piece.lo.finite());
            EvalValue v = eval_node(e, p, EvalOptions{opt.trig_width_bits});
            return {Enclosure{ExtendedReal(v.lo), ExtendedReal(v.hi)}, true};
        }
        // any nondegenerate interval meets both rationals and irrationals
        return {Enclosure{ExtendedReal(Rational(0)), ExtendedReal(Rational(1))}, is_bare_var(e->a)};
    }
    case NodeKind::Thomae: {
        if (piece.is_singleton()) {
            SamplePoint p = SamplePoint::rat(piece.lo.finite());
            EvalValue v = eval_node(e, p, EvalOptions{opt.trig_width_bits});
            return {Enclosure{ExtendedReal(v.lo), ExtendedReal(v.hi)}, true};
        }
        if (!is_bare_var(e->a))
            return {Enclosure{ExtendedReal(Rational(0)), ExtendedReal(Rational(1))}, false};
        // sup over an interval is 1/q* for the smallest denominator present;
        // irrationals are dense, so the inf is 0
        BigInt q = smallest_denominator(piece.lo, piece.lo_open, piece.hi, piece.hi_open);
        return {Enclosure{ExtendedReal(Rational(0)), ExtendedReal(Rational(BigInt(1), q))}, true};
    }
    case NodeKind::Piecewise: return enclose_piecewise(*e, piece, opt);
    }
    throw DomainError("unreachable expression kind");
}

} // namespace detail

// Enclosure of f's range over one interval, which must lie inside the domain.
inline RangeResult enclose_piece(const FuncDef& f, const Interval& piece, EncloseOptions opt = {}) {
    if (auto poly = detail::try_poly(f.root); poly && poly->size() <= 3)
        return {detail::poly2_range(*poly, piece), true};
    return detail::enclose_node(f.root, piece, opt);
}

// Enclosure of f's range over region ∩ domain, hulled across pieces.
inline RangeResult enclose_over(const FuncDef& f, const IntervalSet& region, EncloseOptions opt = {}) {
    IntervalSet work = region.intersect(f.domain);
    if (work.is_empty())
        throw DomainError("range requested over a region disjoint from the domain");
    std::optional<Enclosure> acc;
    bool tight = true;
    for (const auto& piece : work.pieces()) {
        RangeResult r = enclose_piece(f, piece, opt);
        acc = acc ? hull(*acc, r.range) : r.range;
        tight = tight && r.tight;
    }
    return {*acc, tight};
}

// A positive result m certifies that f oscillates by at least m on every
// nondegenerate subinterval, by recognising the shape c*indicatorQ(x) + d
// with |c| = m. Zero means no certificate, not that f is well behaved.
inline Rational min_oscillation(const FuncDef& f) {
    // decompose e as c*indicatorQ(var) + d with c, d exact rationals
    struct Lin {
        Rational c, d;
    };
    auto decompose = [](auto&& self, const ExprPtr& e) -> std::optional<Lin> {
        switch (e->kind) {
        case NodeKind::Number: return Lin{Rational(0), e->number};
        case NodeKind::IndicatorQ:
            if (detail::is_bare_var(e->a)) return Lin{Rational(1), Rational(0)};
            return std::nullopt;
        case NodeKind::Neg: {
            auto a = self(self, e->a);
            if (!a) return std::nullopt;
            return Lin{-a->c, -a->d};
        }
        case NodeKind::Add:
        case NodeKind::Sub: {
            auto a = self(self, e->a), b = self(self, e->b);
            if (!a || !b) return std::nullopt;
            if (e->kind == NodeKind::Add) return Lin{a->c + b->c, a->d + b->d};
            return Lin{a->c - b->c, a->d - b->d};
        }
        case NodeKind::Mul: {
            auto a = self(self, e->a), b = self(self, e->b);
            if (!a || !b) return std::nullopt;
            if (a->c == 0) return Lin{a->d * b->c, a->d * b->d};
            if (b->c == 0) return Lin{b->d * a->c, b->d * a->d};
            return std::nullopt;
        }
        case NodeKind::Div: {
            auto a = self(self, e->a), b = self(self, e->b);
            if (!a || !b || b->c != 0 || b->d == 0) return std::nullopt;
            return Lin{a->c / b->d, a->d / b->d};
        }
        default: return std::nullopt;
        }
    };
    auto lin = decompose(decompose, f.root);
    if (!lin) return Rational(0);
    return abs_r(lin->c);
}

} // namespace accretion
