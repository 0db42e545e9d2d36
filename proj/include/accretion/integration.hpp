#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "accretion/enclose.hpp"
#include "accretion/eval.hpp"
#include "accretion/fn_accretion.hpp"
#include "accretion/interval_set.hpp"
#include "accretion/sample.hpp"

namespace accretion {

// A finite ladder of exact breakpoints a = x_0 < x_1 < ... < x_n = b. Cell k
// is the closed subinterval [x_k, x_{k+1}] for k = 0 .. n-1.
class Partition {
public:
    // spans the unit interval until a real one is assigned
    Partition() : xs_{Rational(0), Rational(1)} {}

    explicit Partition(std::vector<Rational> points) : xs_(std::move(points)) {
        if (xs_.size() < 2) throw DomainError("a partition needs at least two points");
        for (std::size_t i = 1; i < xs_.size(); ++i)
            if (!(xs_[i - 1] < xs_[i]))
                throw DomainError("partition points must be strictly increasing");
    }

    static Partition uniform(const Rational& a, const Rational& b, int n) {
        if (n < 1) throw DomainError("a uniform partition needs at least one cell");
        if (!(a < b)) throw DomainError("partition endpoints must satisfy a < b");
        std::vector<Rational> pts;
        pts.reserve(static_cast<std::size_t>(n) + 1);
        Rational width = b - a;
        for (int k = 0; k <= n; ++k) pts.push_back(a + width * Rational(k, n));
        return Partition(std::move(pts));
    }

    const std::vector<Rational>& points() const { return xs_; }
    std::size_t cells() const { return xs_.size() - 1; }
    const Rational& a() const { return xs_.front(); }
    const Rational& b() const { return xs_.back(); }

    Interval cell(std::size_t k) const {
        return make_interval(ExtendedReal(xs_[k]), false, ExtendedReal(xs_[k + 1]), false);
    }
    Rational cell_width(std::size_t k) const { return xs_[k + 1] - xs_[k]; }

    Partition refined_with(const Rational& p) const {
        if (p <= a() || b() <= p || std::binary_search(xs_.begin(), xs_.end(), p)) return *this;
        std::vector<Rational> pts = xs_;
        pts.insert(std::upper_bound(pts.begin(), pts.end(), p), p);
        return Partition(std::move(pts));
    }

private:
    std::vector<Rational> xs_;
};

// Merged breakpoints of two partitions of the same interval.
inline Partition common_refinement(const Partition& p1, const Partition& p2) {
    if (p1.a() != p2.a() || p1.b() != p2.b())
        throw DomainError("common refinement needs partitions of the same interval");
    std::vector<Rational> merged;
    std::set_union(p1.points().begin(), p1.points().end(), p2.points().begin(), p2.points().end(),
                   std::back_inserter(merged));
    return Partition(std::move(merged));
}

using WeightVector = std::vector<Rational>;

// s(P, v) = sum of v_k * (x_{k+1} - x_k), exact.
inline Rational weighted_sum(const Partition& p, const WeightVector& v) {
    if (v.size() != p.cells()) throw DomainError("weight count must match the cell count");
    Rational s = 0;
    for (std::size_t k = 0; k < v.size(); ++k) s += v[k] * p.cell_width(k);
    return s;
}

// Admissibility of a weight vector against certified per-cell ranges. The
// check is sound but conservative: ok means v_k clears the range enclosure on
// every cell, which implies it clears the true sup (resp. inf). When an
// enclosure is loose a genuinely admissible vector can still come back not-ok.
struct WeightCheck {
    bool ok = false;
    std::string note;
};

namespace detail {

inline WeightCheck weight_side_check(const FuncDef& f, const Partition& p, const WeightVector& v,
                                     bool upper, const EncloseOptions& opt) {
    if (v.size() != p.cells()) throw DomainError("weight count must match the cell count");
    for (std::size_t k = 0; k < v.size(); ++k) {
        RangeResult r = enclose_piece(f, p.cell(k), opt);
        if (!r.range.is_bounded()) return {false, "range is unbounded on a cell"};
        if (upper ? ExtendedReal(v[k]) < r.range.hi : r.range.lo < ExtendedReal(v[k]))
            return {false, ""};
    }
    return {true, ""};
}

} // namespace detail

inline WeightCheck is_upper_weight(const FuncDef& f, const Partition& p, const WeightVector& v,
                                   const EncloseOptions& opt = {}) {
    return detail::weight_side_check(f, p, v, true, opt);
}

inline WeightCheck is_lower_weight(const FuncDef& f, const Partition& p, const WeightVector& v,
                                   const EncloseOptions& opt = {}) {
    return detail::weight_side_check(f, p, v, false, opt);
}

// Per-cell range endpoints: upper_k = enclosure sup, lower_k = enclosure inf.
// With tight enclosures these are the classical sup/inf weight vectors.
struct DarbouxWeights {
    WeightVector upper, lower;
};

inline DarbouxWeights darboux_weights(const FuncDef& f, const Partition& p,
                                      const EncloseOptions& opt = {}) {
    DarbouxWeights out;
    out.upper.reserve(p.cells());
    out.lower.reserve(p.cells());
    for (std::size_t k = 0; k < p.cells(); ++k) {
        RangeResult r = enclose_piece(f, p.cell(k), opt);
        if (!r.range.is_bounded())
            throw DomainError("function is unbounded on a cell of the partition");
        out.upper.push_back(r.range.hi.finite());
        out.lower.push_back(r.range.lo.finite());
    }
    return out;
}

// Weighted sum with weights f(c_k) for one tag c_k inside each closed cell.
inline Rational riemann_sum(const FuncDef& f, const Partition& p,
                            const std::vector<SamplePoint>& tags, const EvalOptions& opt = {}) {
    if (tags.size() != p.cells()) throw DomainError("tag count must match the cell count");
    Rational s = 0;
    for (std::size_t k = 0; k < tags.size(); ++k) {
        const Rational& t = tags[k].value;
        if (t < p.points()[k] || p.points()[k + 1] < t)
            throw DomainError("tag lies outside its cell");
        s += eval(f, tags[k], opt).mid() * p.cell_width(k);
    }
    return s;
}

enum class IntegralStatus { Integrable, NotIntegrable, Inconclusive };

inline std::string str(IntegralStatus s) {
    switch (s) {
    case IntegralStatus::Integrable: return "integrable";
    case IntegralStatus::NotIntegrable: return "not-integrable";
    case IntegralStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct IntegralVerdict {
    IntegralStatus status = IntegralStatus::Inconclusive;
    // midpoint of the final upper/lower sum bracket; absent unless integrable
    std::optional<Rational> estimate;
    // integrable: the achieved sum gap; not-integrable: a certified positive
    // lower bound on the gap that survives every refinement
    Rational gap{0};
    Rational upper_sum{0}, lower_sum{0};
    Partition partition_used;
    int refinement_depth = 0;
    std::string note;
};

namespace detail {

// One refinement cell with its certified range. Unbounded cells outrank every
// bounded one in the refinement heap; among bounded cells the largest gap
// contribution (range width times cell width) goes first.
struct QuadCell {
    Rational lo, hi;
    Enclosure range;
    bool unbounded = false;
    Rational gap{0};
};

inline QuadCell make_quad_cell(const FuncDef& f, const Rational& lo, const Rational& hi,
                               const EncloseOptions& opt) {
    QuadCell c;
    c.lo = lo;
    c.hi = hi;
    RangeResult r = enclose_piece(
        f, make_interval(ExtendedReal(lo), false, ExtendedReal(hi), false), opt);
    c.range = r.range;
    c.unbounded = !r.range.is_bounded();
    if (!c.unbounded) c.gap = r.range.width() * (hi - lo);
    return c;
}

inline bool quad_cell_before(const QuadCell& a, const QuadCell& b) {
    if (a.unbounded != b.unbounded) return b.unbounded;
    return a.gap < b.gap;
}

inline Partition partition_from_cells(const std::vector<QuadCell>& cells, const Rational& b) {
    std::vector<Rational> pts;
    pts.reserve(cells.size() + 1);
    for (const QuadCell& c : cells) pts.push_back(c.lo);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    return Partition(std::move(pts));
}

} // namespace detail

// Adaptive refinement toward the sum-gap criterion: keep bisecting the cell
// with the largest gap contribution at its exact midpoint until the total gap
// drops below eps. A certified per-cell oscillation (rational-indicator
// shapes) short-circuits to not-integrable with an exact gap bound, because
// no refinement can squeeze the sums closer than that oscillation allows.
inline IntegralVerdict integrate(const FuncDef& f, const Rational& a, const Rational& b,
                                 const Rational& eps, int max_depth = 100000,
                                 const EncloseOptions& opt = {}) {
    if (!(a < b)) throw DomainError("integration needs a < b");
    if (eps <= 0) throw DomainError("integration tolerance must be positive");
    IntervalSet span = IntervalSet::of(make_interval(ExtendedReal(a), false, ExtendedReal(b), false));
    if (!span.difference(f.domain).is_empty())
        throw DomainError("integration interval must lie inside the domain");

    IntegralVerdict out;

    Rational m0 = min_oscillation(f);
    if (m0 > 0) {
        out.status = IntegralStatus::NotIntegrable;
        out.gap = m0 * (b - a);
        out.partition_used = Partition({a, b});
        detail::QuadCell whole = detail::make_quad_cell(f, a, b, opt);
        if (!whole.unbounded) {
            out.upper_sum = whole.range.hi.finite() * (b - a);
            out.lower_sum = whole.range.lo.finite() * (b - a);
        }
        out.note = "every nondegenerate cell carries oscillation at least " + format_rational(m0);
        return out;
    }

    std::vector<detail::QuadCell> cells;
    Rational sum_u = 0, sum_w = 0, total_gap = 0;
    int unbounded_n = 0;

    auto account = [&](const detail::QuadCell& c, int sign) {
        if (c.unbounded) {
            unbounded_n += sign;
            return;
        }
        Rational w = c.hi - c.lo;
        sum_u += sign * c.range.hi.finite() * w;
        sum_w += sign * c.range.lo.finite() * w;
        total_gap += sign * c.gap;
    };

    auto push_cell = [&](detail::QuadCell c) {
        account(c, +1);
        cells.push_back(std::move(c));
        std::push_heap(cells.begin(), cells.end(), detail::quad_cell_before);
    };

    // narrower than this, an unbounded enclosure is treated as the real thing
    Rational unbounded_floor = (b - a) * pow2_neg(40);

    push_cell(detail::make_quad_cell(f, a, b, opt));

    int depth = 0;
    for (;; ++depth) {
        if (unbounded_n == 0 && total_gap < eps) {
            out.status = IntegralStatus::Integrable;
            out.estimate = Rational((sum_u + sum_w) / 2);
            break;
        }
        if (depth >= max_depth) {
            if (unbounded_n > 0)
                throw DomainError("function is not bounded, integral undefined");
            out.status = IntegralStatus::Inconclusive;
            out.note = "refinement budget exhausted before the gap closed";
            break;
        }
        std::pop_heap(cells.begin(), cells.end(), detail::quad_cell_before);
        detail::QuadCell worst = std::move(cells.back());
        cells.pop_back();
        account(worst, -1);
        if (worst.unbounded && worst.hi - worst.lo < unbounded_floor)
            throw DomainError("function is not bounded, integral undefined");
        Rational mid = (worst.lo + worst.hi) / 2;
        push_cell(detail::make_quad_cell(f, worst.lo, mid, opt));
        push_cell(detail::make_quad_cell(f, mid, worst.hi, opt));
    }

    out.gap = total_gap;
    out.upper_sum = sum_u;
    out.lower_sum = sum_w;
    out.partition_used = detail::partition_from_cells(cells, b);
    out.refinement_depth = depth;
    return out;
}

// Same criterion driven by uniform partitions with doubling cell counts. An
// independent refinement strategy, used to cross-check the adaptive verdict.
inline IntegralVerdict integrate_uniform(const FuncDef& f, const Rational& a, const Rational& b,
                                         const Rational& eps, int max_doublings = 16,
                                         const EncloseOptions& opt = {}) {
    if (!(a < b)) throw DomainError("integration needs a < b");
    if (eps <= 0) throw DomainError("integration tolerance must be positive");
    IntervalSet span = IntervalSet::of(make_interval(ExtendedReal(a), false, ExtendedReal(b), false));
    if (!span.difference(f.domain).is_empty())
        throw DomainError("integration interval must lie inside the domain");

    IntegralVerdict out;
    Rational m0 = min_oscillation(f);
    if (m0 > 0) {
        out.status = IntegralStatus::NotIntegrable;
        out.gap = m0 * (b - a);
        out.partition_used = Partition({a, b});
        out.note = "every nondegenerate cell carries oscillation at least " + format_rational(m0);
        return out;
    }

    int n = 1;
    for (int round = 0; round <= max_doublings; ++round, n *= 2) {
        Partition p = Partition::uniform(a, b, n);
        DarbouxWeights dw = darboux_weights(f, p, opt);
        Rational su = weighted_sum(p, dw.upper), sw = weighted_sum(p, dw.lower);
        out.partition_used = p;
        out.refinement_depth = round;
        out.gap = su - sw;
        out.upper_sum = su;
        out.lower_sum = sw;
        if (out.gap < eps) {
            out.status = IntegralStatus::Integrable;
            out.estimate = Rational((su + sw) / 2);
            return out;
        }
    }
    out.status = IntegralStatus::Inconclusive;
    out.note = "refinement budget exhausted before the gap closed";
    return out;
}

// Checks the evaluation form of the fundamental theorem: the integral of f
// matches F(b) - F(a) within twice the integration tolerance. F is vetted by
// comparing its derivative against f at a handful of points first; a mismatch
// is an error, not a false return, since the comparison is then meaningless.
inline bool ftc_check(const FuncDef& f, const FuncDef& F, const Rational& a, const Rational& b,
                      const Rational& eps, int max_depth = 100000) {
    if (!(a < b)) throw DomainError("integration needs a < b");
    IntervalSet span = IntervalSet::of(make_interval(ExtendedReal(a), false, ExtendedReal(b), false));

    // reduced probe schedule: six scales deep enough that quotient error is
    // dominated by curvature, well under the acceptance tolerance
    FnProbeOptions dopt;
    dopt.first_scale = 10;
    dopt.last_scale = 15;
    dopt.samples_per_scale = 16;
    dopt.eps = Rational(1, 200);
    Rational spot_tol{1, 100};

    SampleOptions sopt;
    sopt.count = 20;
    std::vector<SamplePoint> spots = sample_points(span, sopt);
    for (const SamplePoint& x0 : spots) {
        EvalValue fx = eval(f, x0, EvalOptions{dopt.trig_width_bits});
        DerivativeReport d = accretion_derivative(F, x0, span, dopt);
        if (d.exists != Verdict::Yes || !d.value ||
            abs_r(*d.value - fx.mid()) > spot_tol + fx.width())
            throw DomainError("F is not an antiderivative at x = " + format_rational(x0.value));
    }

    IntegralVerdict v = integrate(f, a, b, eps, max_depth);
    if (v.status != IntegralStatus::Integrable || !v.estimate)
        throw DomainError("integrand did not come out integrable at this tolerance");
    EvalValue Fb = eval(F, SamplePoint::rat(b)), Fa = eval(F, SamplePoint::rat(a));
    Rational delta = Fb.mid() - Fa.mid();
    return abs_r(*v.estimate - delta) <= 2 * eps;
}

// The ordering that makes the integral well defined: any lower sum is at most
// any upper sum, across unrelated partitions of the same interval. Returns
// the comparison itself; admissibility of both weight vectors is a
// precondition and failing it is an error.
inline bool partition_inequality_check(const FuncDef& f, const Partition& p1, const Partition& p2,
                                       const WeightVector& upper_v, const WeightVector& lower_v,
                                       const EncloseOptions& opt = {}) {
    if (p1.a() != p2.a() || p1.b() != p2.b())
        throw DomainError("partitions must span the same interval");
    WeightCheck cu = is_upper_weight(f, p1, upper_v, opt);
    WeightCheck cl = is_lower_weight(f, p2, lower_v, opt);
    if (!cu.ok || !cl.ok) throw DomainError("weights are not admissible for the inequality");
    return weighted_sum(p2, lower_v) <= weighted_sum(p1, upper_v);
}

} // namespace accretion
