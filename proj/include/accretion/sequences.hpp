#pragma once

#include <optional>
#include <string>
#include <vector>

#include "accretion/cluster.hpp"
#include "accretion/eval.hpp"
#include "accretion/func.hpp"
#include "accretion/interval_set.hpp"
#include "accretion/verdict.hpp"

namespace accretion {

// Sequences come in a few shapes: a closed-form term in n, separate even/odd
// terms, the breadth-first enumeration of the rationals in [0, 1], a finite
// list repeated forever, and a repeating cycle of plane points with an
// optional radial factor.
enum class SeqKind { Formula, Parity, CwRationals, List, Cycle2D };

struct SequenceSpec {
    SeqKind kind = SeqKind::Formula;
    FuncDef formula;                // Formula
    FuncDef even_term, odd_term;    // Parity
    std::vector<Rational> list;     // List, cycled
    std::vector<Point> cycle;       // Cycle2D, cycled
    std::optional<FuncDef> radial;  // Cycle2D scale factor in n

    int dim() const { return kind == SeqKind::Cycle2D ? 2 : 1; }
};

inline SequenceSpec formula_sequence(std::string_view text) {
    SequenceSpec s;
    s.kind = SeqKind::Formula;
    s.formula = parse_func(text, "n");
    return s;
}

inline SequenceSpec parity_sequence(std::string_view even_text, std::string_view odd_text) {
    SequenceSpec s;
    s.kind = SeqKind::Parity;
    s.even_term = parse_func(even_text, "n");
    s.odd_term = parse_func(odd_text, "n");
    return s;
}

inline SequenceSpec cw_sequence() {
    SequenceSpec s;
    s.kind = SeqKind::CwRationals;
    return s;
}

inline SequenceSpec list_sequence(std::vector<Rational> values) {
    if (values.empty()) throw DomainError("list sequence needs at least one value");
    SequenceSpec s;
    s.kind = SeqKind::List;
    s.list = std::move(values);
    return s;
}

inline SequenceSpec cycle2d_sequence(std::vector<Point> cycle,
                                     std::optional<std::string> radial_text = std::nullopt) {
    if (cycle.empty()) throw DomainError("cycle sequence needs at least one point");
    for (const auto& p : cycle)
        if (p.dim() != 2) throw DomainError("cycle sequence expects plane points");
    SequenceSpec s;
    s.kind = SeqKind::Cycle2D;
    s.cycle = std::move(cycle);
    if (radial_text) s.radial = parse_func(*radial_text, "n");
    return s;
}

// Terms x_1 .. x_horizon. Formula terms evaluate exactly except for trig,
// which contributes certified enclosures whose midpoints are taken; the
// leftover error is astronomically below every clustering tolerance.
inline std::vector<Point> sequence_terms(const SequenceSpec& s, long horizon) {
    if (horizon < 1) throw DomainError("sequence horizon must be positive");
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(horizon));
    switch (s.kind) {
    case SeqKind::Formula:
        for (long n = 1; n <= horizon; ++n)
            out.push_back(Point(eval(s.formula, SamplePoint::rat(Rational(n))).mid()));
        return out;
    case SeqKind::Parity:
        for (long n = 1; n <= horizon; ++n) {
            const FuncDef& f = n % 2 == 0 ? s.even_term : s.odd_term;
            out.push_back(Point(eval(f, SamplePoint::rat(Rational(n))).mid()));
        }
        return out;
    case SeqKind::CwRationals: {
        // next term 1/(2*floor(c)+1-c) walks every positive rational once;
        // keeping only values in [0, 1] and seeding with 0 enumerates
        // exactly the rationals of the unit interval
        out.push_back(Point(Rational(0)));
        Rational c(1);
        while (out.size() < static_cast<std::size_t>(horizon)) {
            if (c <= 1) out.push_back(Point(c));
            Rational next = Rational(1) / (2 * Rational(floor_big(c)) + 1 - c);
            c = next;
        }
        return out;
    }
    case SeqKind::List:
        for (long n = 1; n <= horizon; ++n)
            out.push_back(Point(s.list[static_cast<std::size_t>((n - 1) % static_cast<long>(s.list.size()))]));
        return out;
    case SeqKind::Cycle2D:
        for (long n = 1; n <= horizon; ++n) {
            Point base = s.cycle[static_cast<std::size_t>((n - 1) % static_cast<long>(s.cycle.size()))];
            if (s.radial) {
                Rational r = eval(*s.radial, SamplePoint::rat(Rational(n))).mid();
                base = Point(r * base.x(), r * base.y());
            }
            out.push_back(base);
        }
        return out;
    }
    throw DomainError("unreachable sequence kind");
}

struct ProbeSchedule {
    long horizon = 10000;
    long tail_start = 1000;  // persistence windows cover indices beyond this
    Rational eps{1, 1000};
    Rational bound_threshold{BigInt(1000000000)};
    std::size_t min_interval_clusters = 10;
};

struct BoundednessReport {
    Verdict bounded = Verdict::Inconclusive;
    Rational observed_max;  // largest coordinate magnitude seen
    std::string note;
};

// Everything the windowed probe learned about where the sequence settles.
// Clusters are the limit-point candidates that kept reappearing; for an
// interval-like verdict the snapped hull is the cleaner statement.
struct SequenceAccretion {
    AccretionShape shape = AccretionShape::Inconclusive;
    std::vector<Cluster> clusters;
    std::optional<Interval> hull;      // IntervalLike only, endpoints snapped
    std::optional<Interval> raw_hull;  // same before endpoint snapping
    BoundednessReport bounded;
    int dim = 1;
    Rational eps;
    long horizon = 0;
    // window statistics feeding the limsup/liminf analysis (1-D)
    Rational early_min, early_max, late_min, late_max;
    // directional escape flags: the max drifting up, the min drifting down,
    // the min itself rising (everything leaves upward), the max falling
    bool up_escape = false, down_escape = false;
    bool grow_up = false, grow_down = false;
    std::string note;
};

namespace detail {

inline Rational point_norm(const Point& p) {
    Rational n = abs_r(p.x());
    if (p.dim() == 2) n = max_r(n, abs_r(p.y()));
    return n;
}

inline BoundednessReport boundedness_probe(const std::vector<Point>& terms,
                                           const Rational& threshold) {
    BoundednessReport rep;
    std::size_t half = terms.size() / 2;
    Rational max_half(0), max_full(0);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        Rational n = point_norm(terms[i]);
        if (i < half) max_half = max_r(max_half, n);
        max_full = max_r(max_full, n);
    }
    rep.observed_max = max_full;
    if (max_full > threshold) {
        rep.bounded = Verdict::No;
        rep.note = "magnitude exceeded the threshold";
    } else if (max_half == 0 && max_full > 0) {
        rep.bounded = Verdict::Inconclusive;
        rep.note = "growth only appears late";
    } else if (max_full >= 2 * max_half && max_full > 0) {
        rep.bounded = Verdict::No;
        rep.note = "running maximum doubled over the horizon";
    } else if (10 * max_full > 11 * max_half) {
        rep.bounded = Verdict::Inconclusive;
        rep.note = "running maximum still creeping up";
    } else {
        rep.bounded = Verdict::Yes;
        rep.note = "running maximum stabilized";
    }
    return rep;
}

} // namespace detail

// Windowed accretion probe. Clusters are formed from the deep tail and must
// reappear within eps in the earlier half of the tail; a finite prefix can
// then never manufacture a limit point, and escaping sequences lose all
// candidates and come out empty.
inline SequenceAccretion accretion_of_sequence(const SequenceSpec& s, const ProbeSchedule& sched = {}) {
    if (sched.tail_start < 1 || sched.tail_start >= sched.horizon - 1)
        throw DomainError("probe schedule needs 1 <= tail_start < horizon-1");
    std::vector<Point> terms = sequence_terms(s, sched.horizon);
    SequenceAccretion out;
    out.dim = s.dim();
    out.eps = sched.eps;
    out.horizon = sched.horizon;
    out.bounded = detail::boundedness_probe(terms, sched.bound_threshold);

    long mid = sched.tail_start + (sched.horizon - sched.tail_start) / 2;
    std::vector<Point> early(terms.begin() + sched.tail_start, terms.begin() + mid);
    std::vector<Point> late(terms.begin() + mid, terms.end());

    // window extrema drive the limsup/liminf trend analysis
    if (out.dim == 1) {
        auto span = [](const std::vector<Point>& w, Rational& lo, Rational& hi) {
            lo = hi = w.front().x();
            for (const auto& p : w) {
                lo = min_r(lo, p.x());
                hi = max_r(hi, p.x());
            }
        };
        span(early, out.early_min, out.early_max);
        span(late, out.late_min, out.late_max);
        // linear growth gives a window ratio near 1.8 under this schedule, so
        // 3/2 catches it while leaving settled sequences alone; the floor
        // keeps small drifts from reading as escape to infinity
        Rational g{3, 2}, esc(100);
        out.up_escape = out.late_max >= g * max_r(out.early_max, esc);
        out.down_escape = out.late_min <= g * min_r(out.early_min, -esc);
        out.grow_up = out.late_min >= g * max_r(out.early_min, esc);
        out.grow_down = out.late_max <= g * min_r(out.early_max, -esc);
    }

    std::vector<Cluster> candidates = cluster_points(late, sched.eps);
    std::vector<Cluster> persistent;
    if (out.dim == 1) {
        std::vector<Rational> sorted_early;
        sorted_early.reserve(early.size());
        for (const auto& p : early) sorted_early.push_back(p.x());
        std::sort(sorted_early.begin(), sorted_early.end());
        for (const auto& c : candidates)
            if (sorted_values_meet(sorted_early, c, sched.eps)) persistent.push_back(c);
    } else {
        for (const auto& c : candidates) {
            bool hit = false;
            for (const auto& p : early)
                if (dist_to_hull(p, c) <= sched.eps) {
                    hit = true;
                    break;
                }
            if (hit) persistent.push_back(c);
        }
    }

    if (out.dim == 1) {
        ShapeReading r = classify_clusters_1d(std::move(persistent), sched.eps,
                                              sched.min_interval_clusters);
        out.shape = r.shape;
        out.clusters = std::move(r.clusters);
        out.hull = r.hull;
        out.raw_hull = r.raw_hull;
        out.note = std::move(r.note);
        return out;
    }

    // on the plane only empty and finite-set shapes are recognized
    if (persistent.empty()) {
        out.shape = AccretionShape::Empty;
        out.note = "no cluster recurs at this resolution";
        return out;
    }
    if (persistent.size() <= 8) {
        snap_representatives(persistent, sched.eps);
        out.shape = AccretionShape::FiniteSet;
        out.clusters = std::move(persistent);
        out.note = "isolated recurring clusters";
        return out;
    }
    out.shape = AccretionShape::Inconclusive;
    out.clusters = std::move(persistent);
    out.note = "many recurring clusters without interval structure";
    return out;
}

// Largest and smallest limit values, read off the accretion probe. Unbounded
// escape in a direction forces the corresponding value to +-infinity.
struct LimitBounds {
    ExtendedReal limsup = ExtendedReal::pos_inf();
    ExtendedReal liminf = ExtendedReal::neg_inf();
    Verdict certain = Verdict::Inconclusive;
    std::string note;
};

inline LimitBounds limsup_liminf(const SequenceAccretion& a) {
    if (a.dim != 1) throw DomainError("limsup and liminf are for sequences on the line");
    LimitBounds out;

    if (a.shape == AccretionShape::Empty) {
        bool sup_known = true, inf_known = true;
        if (a.up_escape) out.limsup = ExtendedReal::pos_inf();
        else if (a.grow_down) out.limsup = ExtendedReal::neg_inf();
        else sup_known = false;
        if (a.down_escape) out.liminf = ExtendedReal::neg_inf();
        else if (a.grow_up) out.liminf = ExtendedReal::pos_inf();
        else inf_known = false;
        out.certain = (sup_known && inf_known) ? Verdict::Yes : Verdict::Inconclusive;
        out.note = sup_known && inf_known ? "terms escape without recurring"
                                          : "no recurring clusters and no clean escape";
        return out;
    }

    Rational hi, lo;
    if (a.shape == AccretionShape::IntervalLike && a.hull) {
        lo = a.hull->lo.finite();
        hi = a.hull->hi.finite();
    } else {
        bool first = true;
        for (const auto& c : a.clusters) {
            Rational chi = c.snapped ? c.rep.x() : c.hi.x();
            Rational clo = c.snapped ? c.rep.x() : c.lo.x();
            if (first) {
                hi = chi;
                lo = clo;
                first = false;
            } else {
                hi = max_r(hi, chi);
                lo = min_r(lo, clo);
            }
        }
    }
    out.limsup = a.up_escape ? ExtendedReal::pos_inf() : ExtendedReal(hi);
    out.liminf = a.down_escape ? ExtendedReal::neg_inf() : ExtendedReal(lo);
    bool shape_known = a.shape != AccretionShape::Inconclusive;
    bool bound_known = a.bounded.bounded != Verdict::Inconclusive;
    out.certain = (shape_known && bound_known) ? Verdict::Yes : Verdict::Inconclusive;
    out.note = "read off the recurring clusters";
    return out;
}

struct ConvergenceReport {
    Verdict converges = Verdict::Inconclusive;
    std::optional<Rational> limit;
    std::string reason;
};

// Convergence needs a bounded sequence whose accretion is one tight cluster.
inline ConvergenceReport convergence_probe(const SequenceAccretion& a) {
    ConvergenceReport out;
    if (a.bounded.bounded == Verdict::No) {
        out.converges = Verdict::No;
        out.reason = "sequence is unbounded";
        return out;
    }
    if (a.bounded.bounded == Verdict::Inconclusive) {
        out.reason = "boundedness unresolved";
        return out;
    }
    switch (a.shape) {
    case AccretionShape::FiniteSet:
        if (a.clusters.size() == 1) {
            out.converges = Verdict::Yes;
            out.limit = a.clusters.front().rep.x();
            out.reason = a.clusters.front().snapped ? "single cluster, snapped limit"
                                                    : "single cluster";
        } else {
            // two clusters closer than 2*eps could be one smeared cluster
            Rational min_gap(-1);
            for (std::size_t i = 0; i < a.clusters.size(); ++i)
                for (std::size_t j = i + 1; j < a.clusters.size(); ++j) {
                    Rational g = hull_gap(a.clusters[i], a.clusters[j]);
                    if (min_gap < 0 || g < min_gap) min_gap = g;
                }
            if (min_gap <= 2 * a.eps) {
                out.reason = "clusters too close to separate";
            } else {
                out.converges = Verdict::No;
                out.reason = "several distinct limit points";
            }
        }
        return out;
    case AccretionShape::IntervalLike:
        out.converges = Verdict::No;
        out.reason = "limit points fill an interval";
        return out;
    case AccretionShape::Empty:
        out.reason = "bounded but no recurring cluster; probe artifact";
        return out;
    default:
        out.reason = "accretion structure unresolved";
        return out;
    }
}

} // namespace accretion
