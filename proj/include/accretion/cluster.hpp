#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "accretion/interval_set.hpp"
#include "accretion/point.hpp"
#include "accretion/stern_brocot.hpp"

namespace accretion {

// A cluster of nearby points, kept as its bounding box plus a representative.
// Boxes use the Chebyshev metric throughout so one and two dimensions share
// the same code paths.
struct Cluster {
    Point lo, hi;  // hull corners, coordinatewise min and max
    std::size_t hits = 0;
    Point rep;
    bool snapped = false;  // rep landed on a simple rational consistent with the hull

    int dim() const { return lo.dim(); }
    Rational diameter() const {
        Rational d = hi.x() - lo.x();
        if (dim() == 2) d = max_r(d, hi.y() - lo.y());
        return d;
    }
};

namespace detail {

inline Rational axis_gap(const Rational& alo, const Rational& ahi, const Rational& blo,
                         const Rational& bhi) {
    if (blo > ahi) return blo - ahi;
    if (alo > bhi) return alo - bhi;
    return Rational(0);
}

} // namespace detail

// Chebyshev distance from a point to a cluster's box; zero inside.
inline Rational dist_to_hull(const Point& p, const Cluster& c) {
    Rational d = detail::axis_gap(c.lo.x(), c.hi.x(), p.x(), p.x());
    if (p.dim() == 2) d = max_r(d, detail::axis_gap(c.lo.y(), c.hi.y(), p.y(), p.y()));
    return d;
}

// Chebyshev distance between two cluster boxes; zero when they overlap.
inline Rational hull_gap(const Cluster& a, const Cluster& b) {
    Rational d = detail::axis_gap(a.lo.x(), a.hi.x(), b.lo.x(), b.hi.x());
    if (a.dim() == 2) d = max_r(d, detail::axis_gap(a.lo.y(), a.hi.y(), b.lo.y(), b.hi.y()));
    return d;
}

// Greedy run clustering of sorted values: a run breaks when it would exceed
// diameter eps, so distinct clusters are separated by more than eps.
inline std::vector<Cluster> cluster_1d(std::vector<Rational> xs, const Rational& eps) {
    std::vector<Cluster> out;
    if (xs.empty()) return out;
    std::sort(xs.begin(), xs.end());
    Rational start = xs.front(), last = xs.front();
    std::size_t hits = 1;
    auto flush = [&] {
        out.push_back(Cluster{Point(start), Point(last), hits, Point((start + last) / 2), false});
    };
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i] - start <= eps) {
            last = xs[i];
            ++hits;
        } else {
            flush();
            start = last = xs[i];
            hits = 1;
        }
    }
    flush();
    return out;
}

// Greedy box clustering in the plane: each point joins the first cluster it
// sits within eps of, provided the merged box keeps diameter at most eps.
inline std::vector<Cluster> cluster_2d(std::vector<Point> pts, const Rational& eps) {
    std::vector<Cluster> out;
    std::sort(pts.begin(), pts.end());
    for (const auto& p : pts) {
        bool placed = false;
        for (auto& c : out) {
            if (dist_to_hull(p, c) > eps) continue;
            Rational nlx = min_r(c.lo.x(), p.x()), nhx = max_r(c.hi.x(), p.x());
            Rational nly = min_r(c.lo.y(), p.y()), nhy = max_r(c.hi.y(), p.y());
            if (nhx - nlx > eps || nhy - nly > eps) continue;
            c.lo = Point(nlx, nly);
            c.hi = Point(nhx, nhy);
            ++c.hits;
            placed = true;
            break;
        }
        if (!placed) out.push_back(Cluster{p, p, 1, p, false});
    }
    for (auto& c : out)
        c.rep = c.dim() == 2 ? Point((c.lo.x() + c.hi.x()) / 2, (c.lo.y() + c.hi.y()) / 2)
                             : Point((c.lo.x() + c.hi.x()) / 2);
    return out;
}

inline std::vector<Cluster> cluster_points(const std::vector<Point>& pts, const Rational& eps) {
    if (pts.empty()) return {};
    if (pts.front().dim() == 1) {
        std::vector<Rational> xs;
        xs.reserve(pts.size());
        for (const auto& p : pts) xs.push_back(p.x());
        return cluster_1d(std::move(xs), eps);
    }
    return cluster_2d(pts, eps);
}

namespace detail {

// One coordinate of the snap rule: the simplest rational in the eps-widened
// hull is adopted only when it sits essentially on the hull, within three
// hull widths plus exact-noise headroom. Otherwise the midpoint stands.
inline std::pair<Rational, bool> snap_coord(const Rational& lo, const Rational& hi,
                                            const Rational& eps) {
    Rational cand = simplest_in(lo - eps, hi + eps);
    Rational d = axis_gap(lo, hi, cand, cand);
    if (d <= 3 * (hi - lo) + pow2_neg(40)) return {cand, true};
    return {(lo + hi) / 2, false};
}

} // namespace detail

// Choose representatives: clusters isolated by more than 4*eps try to snap
// each coordinate to the simplest nearby rational, recovering exact limits
// like integers without inventing exactness for genuinely irrational ones.
inline void snap_representatives(std::vector<Cluster>& cs, const Rational& eps) {
    for (std::size_t i = 0; i < cs.size(); ++i) {
        Rational nearest(-1);
        for (std::size_t j = 0; j < cs.size(); ++j) {
            if (i == j) continue;
            Rational g = hull_gap(cs[i], cs[j]);
            if (nearest < 0 || g < nearest) nearest = g;
        }
        bool isolated = nearest < 0 || nearest > 4 * eps;
        if (!isolated) {
            cs[i].snapped = false;
            continue;
        }
        auto [sx, okx] = detail::snap_coord(cs[i].lo.x(), cs[i].hi.x(), eps);
        if (cs[i].dim() == 1) {
            cs[i].rep = Point(okx ? sx : (cs[i].lo.x() + cs[i].hi.x()) / 2);
            cs[i].snapped = okx;
        } else {
            auto [sy, oky] = detail::snap_coord(cs[i].lo.y(), cs[i].hi.y(), eps);
            cs[i].rep = Point(okx ? sx : (cs[i].lo.x() + cs[i].hi.x()) / 2,
                              oky ? sy : (cs[i].lo.y() + cs[i].hi.y()) / 2);
            cs[i].snapped = okx && oky;
        }
    }
}

// True when some value in the ascending-sorted list lands within eps of the
// cluster hull. Binary search keeps repeated persistence checks cheap.
inline bool sorted_values_meet(const std::vector<Rational>& sorted_vals, const Cluster& c,
                               const Rational& eps) {
    Rational lo = c.lo.x() - eps;
    auto it = std::lower_bound(sorted_vals.begin(), sorted_vals.end(), lo);
    return it != sorted_vals.end() && *it <= c.hi.x() + eps;
}

enum class AccretionShape { Empty, FiniteSet, IntervalLike, Inconclusive };

inline const char* str(AccretionShape s) {
    switch (s) {
    case AccretionShape::Empty: return "empty";
    case AccretionShape::FiniteSet: return "finite-set";
    case AccretionShape::IntervalLike: return "interval-like";
    default: return "inconclusive";
    }
}

// What a set of recurring 1-D clusters amounts to once classified.
struct ShapeReading {
    AccretionShape shape = AccretionShape::Inconclusive;
    std::vector<Cluster> clusters;
    std::optional<Interval> hull;      // IntervalLike only, endpoints snapped
    std::optional<Interval> raw_hull;  // same before endpoint snapping
    std::string note;
};

// Classify clusters on the line. Many of them chaining with gaps at most
// 2*eps over a span well beyond the resolution read as an interval; up to
// eight isolated ones read as a finite set and get snapped representatives.
inline ShapeReading classify_clusters_1d(std::vector<Cluster> cs, const Rational& eps,
                                         std::size_t min_interval_clusters) {
    ShapeReading out;
    if (cs.empty()) {
        out.shape = AccretionShape::Empty;
        out.note = "no cluster recurs at this resolution";
        return out;
    }
    if (cs.size() >= min_interval_clusters) {
        Rational lo = cs.front().lo.x(), hi = cs.front().hi.x();
        Rational max_gap(0);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            lo = min_r(lo, cs[i].lo.x());
            hi = max_r(hi, cs[i].hi.x());
            if (i > 0) max_gap = max_r(max_gap, hull_gap(cs[i - 1], cs[i]));
        }
        if (hi - lo >= 10 * eps && max_gap <= 2 * eps) {
            out.shape = AccretionShape::IntervalLike;
            out.clusters = std::move(cs);
            out.raw_hull = make_interval(ExtendedReal(lo), false, ExtendedReal(hi), false);
            // endpoints get the same simplest-rational treatment as isolated
            // clusters, at the window resolution they were located to
            Rational slo = simplest_in(lo - 2 * eps, lo + 2 * eps);
            Rational shi = simplest_in(hi - 2 * eps, hi + 2 * eps);
            if (slo > shi) {
                slo = lo;
                shi = hi;
            }
            out.hull = make_interval(ExtendedReal(slo), false, ExtendedReal(shi), false);
            out.note = "clusters chain into an interval";
            return out;
        }
    }
    if (cs.size() <= 8) {
        snap_representatives(cs, eps);
        out.shape = AccretionShape::FiniteSet;
        out.clusters = std::move(cs);
        out.note = "isolated recurring clusters";
        return out;
    }
    out.shape = AccretionShape::Inconclusive;
    out.clusters = std::move(cs);
    out.note = "many recurring clusters without interval structure";
    return out;
}

} // namespace accretion
