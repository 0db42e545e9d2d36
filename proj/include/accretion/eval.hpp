#pragma once

#include <utility>

#include "accretion/errors.hpp"
#include "accretion/func.hpp"
#include "accretion/trig.hpp"

namespace accretion {

// A point a function gets evaluated at. Irrational inputs are represented by
// a rational surrogate plus a tag; the tag is what indicatorQ and thomae
// consult, while every arithmetic atom sees the surrogate. Surrogates are
// drawn from high-order convergent arithmetic so they sit within 2^-100 or so
// of a genuine irrational, far below any tolerance used elsewhere.
struct SamplePoint {
    Rational value;
    bool irrational = false;

    static SamplePoint rat(Rational v) { return {std::move(v), false}; }
    static SamplePoint irr(Rational surrogate) { return {std::move(surrogate), true}; }
};

// Evaluation produces a rational interval [lo, hi] guaranteed to contain the
// true value. Pure rational arithmetic keeps it a point; sin and cos widen it
// by their certified enclosure width.
struct EvalValue {
    Rational lo, hi;

    bool exact() const { return lo == hi; }
    Rational mid() const { return (lo + hi) / 2; }
    Rational width() const { return hi - lo; }
};

struct EvalOptions {
    unsigned trig_width_bits = 64;
};

namespace detail {

// Raised when a divisor interval straddles zero: the whole evaluation is
// retried with tighter trig enclosures before giving up.
struct RetryEval {};

inline EvalValue ev_point(Rational v) { return {v, v}; }

inline EvalValue ev_add(const EvalValue& x, const EvalValue& y) { return {x.lo + y.lo, x.hi + y.hi}; }
inline EvalValue ev_sub(const EvalValue& x, const EvalValue& y) { return {x.lo - y.hi, x.hi - y.lo}; }

inline EvalValue ev_mul(const EvalValue& x, const EvalValue& y) {
    if (x.exact() && y.exact()) {
        Rational p = x.lo * y.lo;
        return {p, p};
    }
    Rational p1 = x.lo * y.lo, p2 = x.lo * y.hi, p3 = x.hi * y.lo, p4 = x.hi * y.hi;
    return {min_r(min_r(p1, p2), min_r(p3, p4)), max_r(max_r(p1, p2), max_r(p3, p4))};
}

inline EvalValue ev_div(const EvalValue& x, const EvalValue& y) {
    if (y.lo <= 0 && 0 <= y.hi) {
        if (y.exact()) throw DomainError("division by zero");
        throw RetryEval{};
    }
    if (x.exact() && y.exact()) {
        Rational q = x.lo / y.lo;
        return {q, q};
    }
    Rational q1 = x.lo / y.lo, q2 = x.lo / y.hi, q3 = x.hi / y.lo, q4 = x.hi / y.hi;
    return {min_r(min_r(q1, q2), min_r(q3, q4)), max_r(max_r(q1, q2), max_r(q3, q4))};
}

inline EvalValue ev_abs(const EvalValue& x) {
    if (x.lo >= 0) return x;
    if (x.hi <= 0) return {-x.hi, -x.lo};
    return {Rational(0), max_r(-x.lo, x.hi)};
}

inline EvalValue ev_ipow(const EvalValue& x, const BigInt& n) {
    if (n == 0) return ev_point(Rational(1));
    if (x.exact()) {
        if (n < 0 && x.lo == 0) throw DomainError("zero raised to a negative power");
        return ev_point(pow_rational(x.lo, n));
    }
    if (n < 0) {
        if (x.lo <= 0 && 0 <= x.hi) {
            if (x.exact()) throw DomainError("zero raised to a negative power");
            throw RetryEval{};
        }
        Rational lo = pow_rational(x.lo, n), hi = pow_rational(x.hi, n);
        return {min_r(lo, hi), max_r(lo, hi)};
    }
    Rational plo = pow_rational(x.lo, n), phi = pow_rational(x.hi, n);
    bool even = (n % 2 == 0);
    if (!even) return {plo, phi};
    if (x.lo >= 0) return {plo, phi};
    if (x.hi <= 0) return {phi, plo};
    return {Rational(0), max_r(plo, phi)};
}

inline bool contains_trig(const ExprPtr& e) {
    if (!e) return false;
    switch (e->kind) {
    case NodeKind::Sin:
    case NodeKind::Cos: return true;
    case NodeKind::Number:
    case NodeKind::Var: return false;
    case NodeKind::Piecewise: {
        for (const auto& br : e->branches)
            if (contains_trig(br.body)) return true;
        return contains_trig(e->otherwise);
    }
    default: return contains_trig(e->a) || contains_trig(e->b);
    }
}

// Rationality of a subexpression's value at the sample point, where decidable.
// A trig-free expression of a rational point is rational. At an irrational
// point only the bare variable is known irrational; anything composite could
// collapse back to a rational, so it is refused rather than guessed.
enum class Rationality { Yes, No };

inline Rationality rationality_at(const ExprPtr& arg, const SamplePoint& p) {
    if (!p.irrational) {
        if (contains_trig(arg))
            throw DomainError("cannot decide rationality of a trigonometric value");
        return Rationality::Yes;
    }
    if (arg->kind == NodeKind::Var) return Rationality::No;
    throw DomainError("cannot decide rationality of a composite of an irrational point");
}

inline EvalValue eval_node(const ExprPtr& e, const SamplePoint& p, const EvalOptions& opt) {
    switch (e->kind) {
    case NodeKind::Number: return ev_point(e->number);
    case NodeKind::Var: return ev_point(p.value);
    case NodeKind::Add: return ev_add(eval_node(e->a, p, opt), eval_node(e->b, p, opt));
    case NodeKind::Sub: return ev_sub(eval_node(e->a, p, opt), eval_node(e->b, p, opt));
    case NodeKind::Mul: return ev_mul(eval_node(e->a, p, opt), eval_node(e->b, p, opt));
    case NodeKind::Div: return ev_div(eval_node(e->a, p, opt), eval_node(e->b, p, opt));
    case NodeKind::Neg: {
        EvalValue x = eval_node(e->a, p, opt);
        return {-x.hi, -x.lo};
    }
    case NodeKind::Abs: return ev_abs(eval_node(e->a, p, opt));
    case NodeKind::Pow: {
        EvalValue ex = eval_node(e->b, p, opt);
        if (!ex.exact() || !is_integer(ex.lo))
            throw DomainError("exponent does not evaluate to an integer");
        return ev_ipow(eval_node(e->a, p, opt), num(ex.lo));
    }
    case NodeKind::Sin:
    case NodeKind::Cos: {
        EvalValue x = eval_node(e->a, p, opt);
        Enclosure s = e->kind == NodeKind::Sin ? sin_enclosure(x.lo, opt.trig_width_bits)
                                               : cos_enclosure(x.lo, opt.trig_width_bits);
        // |sin a - sin b| <= |a - b| absorbs any width the argument carries
        Rational w = x.width();
        return {s.lo.finite() - w, s.hi.finite() + w};
    }
    case NodeKind::IndicatorQ: {
        Rationality r = rationality_at(e->a, p);
        return ev_point(Rational(r == Rationality::Yes ? 1 : 0));
    }
    case NodeKind::Thomae: {
        Rationality r = rationality_at(e->a, p);
        if (r == Rationality::No) return ev_point(Rational(0));
        EvalValue x = eval_node(e->a, p, opt);
        if (!x.exact())
            throw DomainError("thomae needs an exact rational argument");
        return ev_point(Rational(BigInt(1), den(x.lo)));
    }
    case NodeKind::Piecewise: {
        for (const auto& br : e->branches)
            if (br.guard.contains(p.value)) return eval_node(br.body, p, opt);
        if (e->otherwise) return eval_node(e->otherwise, p, opt);
        throw DomainError("no piecewise branch covers " + format_rational(p.value));
    }
    }
    throw DomainError("unreachable expression kind");
}

} // namespace detail

// Evaluate f at p. Throws DomainError when p is outside the domain, a divisor
// is exactly zero, or a value is otherwise undefined. A divisor enclosure that
// merely straddles zero triggers retries with tighter trig enclosures first.
inline EvalValue eval(const FuncDef& f, const SamplePoint& p, EvalOptions opt = {}) {
    if (!f.domain.contains(p.value))
        throw DomainError("point " + format_rational(p.value) + " is outside the domain");
    for (unsigned w = opt.trig_width_bits; w <= 4 * opt.trig_width_bits; w *= 2) {
        EvalOptions o = opt;
        o.trig_width_bits = w;
        try {
            return detail::eval_node(f.root, p, o);
        } catch (const detail::RetryEval&) {
            continue;
        }
    }
    throw DomainError("divisor enclosure straddles zero at maximum precision");
}

} // namespace accretion
