#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "accretion/cluster.hpp"
#include "accretion/enclose.hpp"
#include "accretion/errors.hpp"
#include "accretion/eval.hpp"
#include "accretion/func.hpp"
#include "accretion/interval_set.hpp"
#include "accretion/rational.hpp"
#include "accretion/sample.hpp"
#include "accretion/stern_brocot.hpp"
#include "accretion/verdict.hpp"

// Accretion of a function at a point: the values that f takes arbitrarily
// close to the center, no matter how small a neighborhood one restricts to.
// The probe zooms through neighborhoods of radius 2^-k. Two routes exist:
// a certified one when the function is provably continuous on every piece
// of the region and its range encloses tightly (the image of a connected
// piece is then exactly the closed range interval), and a sampled one for
// everything else, with the same clustering vocabulary as the sequence probe.

namespace accretion {

struct FnProbeOptions {
    int first_scale = 1;   // coarsest neighborhood radius 2^-first_scale
    int last_scale = 48;   // finest; 2^-48 pushes stray thomae samples below eps
    int samples_per_scale = 64;
    Rational eps{1, 1000000};
    Rational bound_threshold{BigInt(1000000000)};
    std::size_t min_interval_clusters = 10;
    unsigned trig_width_bits = 64;
    std::uint64_t seed = 0;
};

struct FunctionAccretion {
    AccretionShape shape = AccretionShape::Inconclusive;
    std::vector<Cluster> clusters;     // sampled route; empty on the certified one
    std::optional<Interval> hull;      // IntervalLike: exact on the certified route
    std::optional<Interval> raw_hull;  // sampled route, before endpoint snapping
    std::optional<IntervalSet> exact;  // certified route: the accretion set itself
    Verdict locally_bounded = Verdict::Inconclusive;
    Rational observed_max;             // largest |f| magnitude met by the probe
    bool analytic = false;             // true when the certified route applied
    Rational eps;
    std::string bounded_note;
    std::string note;
};

namespace detail {

inline Rational scale_delta(int k) { return pow2_neg(static_cast<unsigned>(k)); }

// True when e is provably continuous at every point of the piece. Divisors
// and bases of negative powers must be nonzero pointwise: either their range
// misses zero outright, or they are linear with a root that fails membership
// (an open endpoint at the root is fine, which is exactly the shape that
// punctured neighborhoods produce).
inline bool continuity_witness(const ExprPtr& e, const Interval& piece, const EncloseOptions& opt) {
    auto nonzero_on = [&](const ExprPtr& d) {
        if (auto p = try_poly(d); p && p->size() == 2 && (*p)[1] != 0) {
            Rational root = -(*p)[0] / (*p)[1];
            return !piece.contains(root);
        }
        return !enclose_node(d, piece, opt).range.contains_zero();
    };
    switch (e->kind) {
    case NodeKind::Number:
    case NodeKind::Var:
        return true;
    case NodeKind::Neg:
    case NodeKind::Abs:
    case NodeKind::Sin:
    case NodeKind::Cos:
        return continuity_witness(e->a, piece, opt);
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
        return continuity_witness(e->a, piece, opt) && continuity_witness(e->b, piece, opt);
    case NodeKind::Div:
        return continuity_witness(e->a, piece, opt) && continuity_witness(e->b, piece, opt) &&
               nonzero_on(e->b);
    case NodeKind::Pow: {
        if (e->b->kind != NodeKind::Number || !is_integer(e->b->number)) return false;
        if (!continuity_witness(e->a, piece, opt)) return false;
        if (e->b->number >= 0) return true;
        return nonzero_on(e->a);
    }
    default:
        // indicatorQ, thomae and piecewise guards carry discontinuities
        return false;
    }
}

struct AnalyticImage {
    bool ok = false;
    IntervalSet image;  // closure of f over the region, exact modulo trig width
    bool bounded = true;
};

inline AnalyticImage analytic_image(const FuncDef& f, const IntervalSet& region,
                                    const EncloseOptions& opt) {
    AnalyticImage out;
    std::vector<Interval> images;
    for (const Interval& piece : region.pieces()) {
        try {
            if (!continuity_witness(f.root, piece, opt)) return out;
            RangeResult r = enclose_piece(f, piece, opt);
            if (!r.tight) return out;
            images.push_back(make_interval(r.range.lo, !r.range.lo.is_finite(),
                                           r.range.hi, !r.range.hi.is_finite()));
            if (!r.range.is_bounded()) out.bounded = false;
        } catch (const DomainError&) {
            return out;
        }
    }
    out.image = IntervalSet::from_pieces(images);
    out.ok = true;
    return out;
}

} // namespace detail

// The accretion of f at the center within a region. When the center belongs
// to the region (and the domain), its own value participates: the center
// lies inside every neighborhood of itself. Callers wanting the limit-style
// reading puncture the region first.
inline FunctionAccretion accretion_of_function(const FuncDef& f, const SamplePoint& center,
                                               const IntervalSet& within,
                                               const FnProbeOptions& opt = {}) {
    if (opt.first_scale < 1 || opt.last_scale < opt.first_scale)
        throw DomainError("probe scales need 1 <= first_scale <= last_scale");
    FunctionAccretion out;
    out.eps = opt.eps;
    out.observed_max = Rational(0);
    EncloseOptions eopt{opt.trig_width_bits};

    IntervalSet reach = within.intersect(f.domain);
    auto region_at = [&](int k) {
        return reach.intersect(IntervalSet::neighborhood(center.value, detail::scale_delta(k)));
    };
    // neighborhoods are nested, so nonempty at the finest scale means
    // nonempty everywhere; an empty finest region means the center is not
    // an accumulation point of the region
    if (region_at(opt.last_scale).is_empty())
        throw DomainError("center is not approachable within the region");

    // certified route: tight ranges of provably continuous pieces make the
    // image an exact interval set, and nested neighborhoods collapse the
    // intersection over scales onto the finest one
    {
        bool ok = true, ever_bounded = false;
        std::optional<IntervalSet> acc;
        for (int k = opt.first_scale; k <= opt.last_scale; ++k) {
            auto im = detail::analytic_image(f, region_at(k), eopt);
            if (!im.ok) {
                ok = false;
                break;
            }
            if (im.bounded) ever_bounded = true;
            acc = acc ? acc->intersect(im.image) : im.image;
        }
        if (ok && acc) {
            out.analytic = true;
            out.note = "certified by tight ranges over continuous pieces";
            // an unbounded image piece whose finite edge has already receded
            // past the threshold is escaping, not accumulating
            std::vector<Interval> kept;
            bool receding = false, unbounded_kept = false;
            for (const Interval& iv : acc->pieces()) {
                if (iv.lo.is_finite() && iv.hi.is_finite()) {
                    kept.push_back(iv);
                    out.observed_max = max_r(out.observed_max,
                                             max_r(abs_r(iv.lo.finite()), abs_r(iv.hi.finite())));
                    continue;
                }
                Rational edge(0);
                bool has_edge = false;
                if (iv.lo.is_finite()) {
                    edge = abs_r(iv.lo.finite());
                    has_edge = true;
                } else if (iv.hi.is_finite()) {
                    edge = abs_r(iv.hi.finite());
                    has_edge = true;
                }
                if (has_edge && edge > opt.bound_threshold) {
                    receding = true;
                } else {
                    kept.push_back(iv);
                    unbounded_kept = true;
                }
                if (has_edge) out.observed_max = max_r(out.observed_max, edge);
            }
            out.exact = IntervalSet::from_pieces(kept);
            if (receding || unbounded_kept) {
                out.locally_bounded = Verdict::No;
                out.bounded_note = receding ? "image recedes beyond every bound near the center"
                                            : "image unbounded at the finest probed scale";
            } else {
                out.locally_bounded = Verdict::Yes;
                out.bounded_note = ever_bounded ? "image bounded at the finest probed scale"
                                                : "image bounded after escape removal";
            }

            // present the exact pieces through the shared shape vocabulary
            std::size_t narrow = 0, wide = 0;
            for (const Interval& iv : kept) {
                bool small = iv.lo.is_finite() && iv.hi.is_finite() &&
                             iv.hi.finite() - iv.lo.finite() <= 2 * opt.eps;
                (small ? narrow : wide)++;
            }
            if (kept.empty()) {
                out.shape = AccretionShape::Empty;
                out.note += "; every image piece escapes";
            } else if (wide == 0 && narrow <= 8) {
                std::vector<Cluster> cs;
                for (const Interval& iv : kept) {
                    Cluster c;
                    c.lo = Point(iv.lo.finite());
                    c.hi = Point(iv.hi.finite());
                    c.rep = Point((iv.lo.finite() + iv.hi.finite()) / 2);
                    c.hits = 1;
                    cs.push_back(c);
                }
                snap_representatives(cs, opt.eps);
                out.shape = AccretionShape::FiniteSet;
                out.clusters = std::move(cs);
            } else if (wide == 1 && narrow == 0) {
                out.shape = AccretionShape::IntervalLike;
                out.hull = kept.front();
                out.raw_hull = kept.front();
            } else {
                out.shape = AccretionShape::Inconclusive;
            }
            return out;
        }
    }

    // sampled route. Values come from every scale; candidates from the
    // finest. Coarse scales deliberately do not vote on persistence: a value
    // seen only deep in the zoom is legitimate (it recurs at every finer
    // scale by nesting), while one seen only at coarse scales is transient.
    // The final quarter of the schedule must agree on each candidate, which
    // is what lets escaping values fall out.
    int consensus_from = opt.last_scale - std::max(2, (opt.last_scale - opt.first_scale) / 4);
    consensus_from = std::max(consensus_from, opt.first_scale);
    bool center_member = reach.contains(center.value);
    std::vector<std::vector<Rational>> by_scale;
    bool encl_bounded = false;
    for (int k = opt.first_scale; k <= opt.last_scale; ++k) {
        IntervalSet reg = region_at(k);
        try {
            if (enclose_over(f, reg, eopt).range.is_bounded()) encl_bounded = true;
        } catch (const DomainError&) {
        }
        SampleOptions sopt;
        sopt.count = opt.samples_per_scale;
        sopt.seed = opt.seed + static_cast<std::uint64_t>(k);
        std::vector<SamplePoint> pts = sample_points(reg, sopt);
        if (center_member) pts.push_back(center);
        // deeper scales get more trig precision so that difference quotients
        // with tiny denominators keep their value resolution below eps
        EvalOptions vopt{opt.trig_width_bits + static_cast<unsigned>(k) + 16};
        std::vector<Rational> vals;
        vals.reserve(pts.size());
        for (const SamplePoint& p : pts) {
            try {
                Rational v = eval(f, p, vopt).mid();
                out.observed_max = max_r(out.observed_max, abs_r(v));
                vals.push_back(std::move(v));
            } catch (const DomainError&) {
            }
        }
        std::sort(vals.begin(), vals.end());
        by_scale.push_back(std::move(vals));
    }
    if (by_scale.back().empty())
        throw DomainError("function not evaluable near the center");

    if (encl_bounded) {
        out.locally_bounded = Verdict::Yes;
        out.bounded_note = "bounded range enclosure near the center";
    } else if (out.observed_max > opt.bound_threshold) {
        out.locally_bounded = Verdict::No;
        out.bounded_note = "sampled magnitude exceeded the threshold";
    } else {
        // the plain enclosure is often defeated by interval dependency (think
        // difference quotients); thin shells between consecutive radii keep
        // numerator and denominator in step, and together the shells exhaust
        // the punctured neighborhood down to the finest scale
        bool shells_ok = opt.last_scale > opt.first_scale;
        int shells_seen = 0;
        Rational shell_max(0);
        for (int k = opt.first_scale + 1; shells_ok && k <= opt.last_scale; ++k) {
            IntervalSet shell = region_at(k - 1).difference(
                IntervalSet::neighborhood(center.value, detail::scale_delta(k)));
            if (shell.is_empty()) continue;
            ++shells_seen;
            try {
                Enclosure r = enclose_over(f, shell, eopt).range;
                if (!r.is_bounded()) {
                    shells_ok = false;
                    break;
                }
                shell_max = max_r(shell_max, max_r(abs_r(r.lo.finite()), abs_r(r.hi.finite())));
            } catch (const DomainError&) {
                shells_ok = false;
            }
        }
        if (shells_ok && shells_seen > 0 && shell_max <= opt.bound_threshold) {
            out.locally_bounded = Verdict::Yes;
            out.bounded_note = "bounded on shells closing in on the center";
        } else {
            out.locally_bounded = Verdict::Inconclusive;
            out.bounded_note = "enclosures unbounded but samples stayed moderate";
        }
    }

    std::vector<Point> finest;
    finest.reserve(by_scale.back().size());
    for (const Rational& v : by_scale.back()) finest.push_back(Point(v));
    std::vector<Cluster> candidates = cluster_points(finest, opt.eps);
    std::vector<Cluster> persistent;
    for (const Cluster& c : candidates) {
        bool everywhere = true;
        for (int k = consensus_from; k <= opt.last_scale && everywhere; ++k)
            everywhere = sorted_values_meet(by_scale[static_cast<std::size_t>(k - opt.first_scale)],
                                            c, opt.eps);
        if (everywhere) persistent.push_back(c);
    }

    ShapeReading r = classify_clusters_1d(std::move(persistent), opt.eps,
                                          opt.min_interval_clusters);
    out.shape = r.shape;
    out.clusters = std::move(r.clusters);
    out.hull = r.hull;
    out.raw_hull = r.raw_hull;
    out.note = std::move(r.note);
    return out;
}

// Limit of f at the center: the value at the center itself is irrelevant, so
// the region is punctured before probing. A limit exists exactly when the
// punctured accretion is a single value and the function is locally bounded.
struct AccretionLimitReport {
    Verdict exists = Verdict::Inconclusive;
    std::optional<Rational> value;
    FunctionAccretion detail;
    std::string reason;
};

inline AccretionLimitReport accretion_limit(const FuncDef& f, const SamplePoint& center,
                                            const IntervalSet& within,
                                            const FnProbeOptions& opt = {}) {
    AccretionLimitReport rep;
    IntervalSet punctured = within.difference(IntervalSet::singleton(center.value));
    rep.detail = accretion_of_function(f, center, punctured, opt);
    const FunctionAccretion& a = rep.detail;
    if (a.locally_bounded == Verdict::No) {
        rep.exists = Verdict::No;
        rep.reason = "function escapes every neighborhood of the center";
        return rep;
    }
    switch (a.shape) {
    case AccretionShape::FiniteSet: {
        if (a.clusters.size() == 1) {
            rep.value = a.clusters.front().rep.x();
            if (a.locally_bounded == Verdict::Yes) {
                rep.exists = Verdict::Yes;
                rep.reason = "single accretion value";
            } else {
                rep.exists = Verdict::Inconclusive;
                rep.reason = "single accretion value but boundedness unresolved";
            }
            return rep;
        }
        Rational min_gap(-1);
        for (std::size_t i = 0; i + 1 < a.clusters.size(); ++i) {
            Rational g = hull_gap(a.clusters[i], a.clusters[i + 1]);
            if (min_gap < 0 || g < min_gap) min_gap = g;
        }
        if (min_gap >= 0 && min_gap <= 2 * a.eps) {
            rep.exists = Verdict::Inconclusive;
            rep.reason = "accretion values too close to tell apart";
        } else {
            rep.exists = Verdict::No;
            rep.reason = "several distinct accretion values";
        }
        return rep;
    }
    case AccretionShape::IntervalLike:
        rep.exists = Verdict::No;
        rep.reason = "accretion fills an interval";
        return rep;
    case AccretionShape::Empty:
        rep.exists = Verdict::No;
        rep.reason = "no accretion value detected";
        return rep;
    default:
        rep.exists = Verdict::Inconclusive;
        rep.reason = "accretion structure unresolved";
        return rep;
    }
}

// Continuity at a point of the region, phrased through accretion: the
// punctured limit must exist and agree with the value at the center.
struct ContinuityReport {
    Verdict continuous = Verdict::Inconclusive;
    Rational value_at_center;
    AccretionLimitReport limit;
    std::string reason;
};

inline ContinuityReport accrete_continuity(const FuncDef& f, const SamplePoint& center,
                                           const IntervalSet& within,
                                           const FnProbeOptions& opt = {}) {
    if (!within.intersect(f.domain).contains(center.value))
        throw DomainError("continuity query needs the center inside the region");
    ContinuityReport rep;
    EvalValue fc = eval(f, center, EvalOptions{opt.trig_width_bits});
    rep.value_at_center = fc.mid();
    rep.limit = accretion_limit(f, center, within, opt);
    if (rep.limit.exists != Verdict::Yes) {
        rep.continuous = rep.limit.exists == Verdict::No ? Verdict::No : Verdict::Inconclusive;
        rep.reason = rep.limit.reason;
        return rep;
    }
    if (abs_r(*rep.limit.value - fc.mid()) <= opt.eps + fc.width()) {
        rep.continuous = Verdict::Yes;
        rep.reason = "limit matches the value at the center";
    } else {
        rep.continuous = Verdict::No;
        rep.reason = "limit differs from the value at the center";
    }
    return rep;
}

// Derivative at a point, as the accretion limit of the difference quotient.
// The quotient is built symbolically with the center value as an exact
// constant; its domain excludes the center, so the limit machinery sees the
// puncture it needs automatically.
struct DerivativeReport {
    Verdict exists = Verdict::Inconclusive;
    std::optional<Rational> value;
    FuncDef quotient;
    AccretionLimitReport limit;
};

inline DerivativeReport accretion_derivative(const FuncDef& f, const SamplePoint& center,
                                             const IntervalSet& within,
                                             const FnProbeOptions& opt = {}) {
    if (!f.domain.contains(center.value))
        throw DomainError("derivative query needs the center inside the domain");
    // extra precision keeps the constant's residue, divided by distances as
    // small as 2^-last_scale, far below the cluster resolution
    EvalValue fc = eval(f, center, EvalOptions{opt.trig_width_bits + 96});
    DerivativeReport rep;
    ExprPtr quot = make_binary(
        NodeKind::Div, make_binary(NodeKind::Sub, f.root, make_number(fc.mid())),
        make_binary(NodeKind::Sub, make_var(), make_number(center.value)));
    rep.quotient = FuncDef{quot, f.domain.difference(IntervalSet::singleton(center.value)), f.var};
    rep.limit = accretion_limit(rep.quotient, center, within, opt);
    rep.exists = rep.limit.exists;
    rep.value = rep.limit.value;
    return rep;
}

// Locate the maximum of f on a bounded interval by grid scan plus ternary
// refinement, then test whether the derivative vanishes there. An extremum
// on the boundary is reported as such and the derivative test is skipped.
struct ExtremumReport {
    bool interior = false;
    Rational argmax;
    Rational value;
    std::optional<Rational> derivative;
    Verdict derivative_vanishes = Verdict::Inconclusive;
    std::string note;
};

inline ExtremumReport interior_extremum_check(const FuncDef& f, const Interval& piece,
                                              const FnProbeOptions& opt = {}) {
    if (!piece.lo.is_finite() || !piece.hi.is_finite() || piece.is_singleton())
        throw DomainError("extremum scan needs a bounded nondegenerate interval");
    EvalOptions vopt{opt.trig_width_bits};
    Rational a = piece.lo.finite(), b = piece.hi.finite();
    const int grid_n = 256;
    Rational h = (b - a) / grid_n;
    std::vector<std::pair<Rational, Rational>> nodes;  // (x, f(x))
    for (int i = 0; i <= grid_n; ++i) {
        Rational x = a + h * i;
        if (!piece.contains(x)) continue;
        try {
            nodes.emplace_back(x, eval(f, SamplePoint::rat(x), vopt).mid());
        } catch (const DomainError&) {
        }
    }
    if (nodes.empty()) throw DomainError("no evaluable grid nodes in the interval");
    std::size_t best = 0;
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (nodes[i].second > nodes[best].second) best = i;

    ExtremumReport rep;
    if (best == 0 || best + 1 == nodes.size()) {
        rep.interior = false;
        rep.argmax = nodes[best].first;
        rep.value = nodes[best].second;
        rep.note = "maximum pushes against the boundary";
        return rep;
    }
    rep.interior = true;

    // ternary descent between the argmax's neighbors; probes are rounded to
    // a 2^-60 grid so denominators stay small through the iterations
    auto snap_probe = [](const Rational& x) {
        return Rational(floor_big(x / pow2_neg(60))) * pow2_neg(60);
    };
    auto value_at = [&](const Rational& x) { return eval(f, SamplePoint::rat(x), vopt).mid(); };
    Rational lo = nodes[best - 1].first, hi = nodes[best + 1].first;
    for (int iter = 0; iter < 200 && hi - lo > pow2_neg(30); ++iter) {
        Rational m1 = snap_probe(lo + (hi - lo) / 3);
        Rational m2 = snap_probe(hi - (hi - lo) / 3);
        if (m1 <= lo || m2 >= hi || m1 >= m2) break;
        if (value_at(m1) < value_at(m2))
            lo = m1;
        else
            hi = m2;
    }
    // the simplest rational in the final bracket recovers an exact vertex
    // (a unimodal peak at a small-denominator point) whenever one is inside
    rep.argmax = simplest_in(lo, hi);
    rep.value = value_at(rep.argmax);

    DerivativeReport d = accretion_derivative(f, SamplePoint::rat(rep.argmax),
                                              IntervalSet::of(piece), opt);
    if (d.exists == Verdict::Yes) {
        rep.derivative = d.value;
        rep.derivative_vanishes = abs_r(*d.value) <= opt.eps ? Verdict::Yes : Verdict::No;
        rep.note = rep.derivative_vanishes == Verdict::Yes
                       ? "derivative vanishes at the interior maximum"
                       : "derivative fails to vanish at the located maximum";
    } else {
        rep.derivative_vanishes = Verdict::Inconclusive;
        rep.note = "derivative limit unresolved at the located maximum";
    }
    return rep;
}

} // namespace accretion
