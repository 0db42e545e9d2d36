#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "accretion/fn_accretion.hpp"
#include "accretion/integration.hpp"
#include "accretion/sequences.hpp"

namespace accretion {

// A named worked example with a checkable expected outcome. The presets bake
// their own tolerances and schedules so a single run reproduces the whole
// gallery deterministically.
struct CorpusOutcome {
    std::string name;
    std::string claim;     // what the preset is expected to show
    bool pass = false;
    std::string observed;  // compact, deterministic summary of what happened
};

inline const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names = {
        "open-interval-sup",  "divergent-3139-3141", "singleton-unbounded",
        "i^n-accretion",      "q-enumeration",       "dirichlet-accretion",
        "thomae-accretion",   "recip-at-0",          "5cos-recip",
        "abs-derivative",     "x2cos-recip2-derivative",
        "thomae-integral",    "dirichlet-integral",  "ftc-x2"};
    return names;
}

namespace detail {

inline std::string cluster_rep_list(const std::vector<Cluster>& cs) {
    std::vector<Rational> reps;
    for (const auto& c : cs) reps.push_back(c.rep.x());
    std::sort(reps.begin(), reps.end());
    std::string out = "{";
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (i) out += ", ";
        out += format_rational(reps[i]);
    }
    return out + "}";
}

inline bool reps_are(const std::vector<Cluster>& cs, std::vector<Rational> want) {
    std::vector<Rational> reps;
    for (const auto& c : cs) reps.push_back(c.rep.x());
    std::sort(reps.begin(), reps.end());
    std::sort(want.begin(), want.end());
    return reps == want;
}

} // namespace detail

inline CorpusOutcome run_corpus_preset(const std::string& name) {
    CorpusOutcome out;
    out.name = name;

    if (name == "open-interval-sup") {
        out.claim = "sup of (0, 3140) is 3140, which is not a member";
        IntervalSet s = IntervalSet::parse("(0, 3140)");
        TopologyReport r = s.report();
        bool sup_ok = r.sup && *r.sup == ExtendedReal(Rational(3140));
        out.pass = sup_ok && !s.contains(Rational(3140)) && r.is_open;
        out.observed = "sup = " + (r.sup && r.sup->is_finite() ? format_rational(r.sup->finite())
                                                               : std::string("none"));
        return out;
    }
    if (name == "divergent-3139-3141") {
        out.claim = "1/n + 3140 + (-1)^n accretes to exactly {3139, 3141} and diverges";
        SequenceAccretion a = accretion_of_sequence(formula_sequence("1/n + 3140 + (-1)^n"));
        ConvergenceReport c = convergence_probe(a);
        out.pass = a.shape == AccretionShape::FiniteSet &&
                   detail::reps_are(a.clusters, {Rational(3139), Rational(3141)}) &&
                   c.converges == Verdict::No;
        out.observed = "clusters " + detail::cluster_rep_list(a.clusters) +
                       ", converges " + str(c.converges);
        return out;
    }
    if (name == "singleton-unbounded") {
        out.claim = "the 0/n parity sequence accretes to {0} yet is unbounded and divergent";
        SequenceAccretion a = accretion_of_sequence(parity_sequence("n", "0"));
        ConvergenceReport c = convergence_probe(a);
        out.pass = a.shape == AccretionShape::FiniteSet &&
                   detail::reps_are(a.clusters, {Rational(0)}) &&
                   a.bounded.bounded == Verdict::No && c.converges == Verdict::No;
        out.observed = "clusters " + detail::cluster_rep_list(a.clusters) + ", bounded " +
                       str(a.bounded.bounded) + ", converges " + str(c.converges);
        return out;
    }
    if (name == "i^n-accretion") {
        out.claim = "i^n (n-1)/n in the plane accretes to the four unit axis points";
        SequenceAccretion a = accretion_of_sequence(
            cycle2d_sequence({Point(Rational(0), Rational(1)), Point(Rational(-1), Rational(0)),
                              Point(Rational(0), Rational(-1)), Point(Rational(1), Rational(0))},
                             "(n - 1)/n"));
        std::vector<Point> want = {Point(Rational(0), Rational(1)), Point(Rational(-1), Rational(0)),
                                   Point(Rational(0), Rational(-1)), Point(Rational(1), Rational(0))};
        Rational tol{1, 1000};
        std::size_t matched = 0;
        for (const Point& w : want)
            for (const auto& c : a.clusters)
                if (abs_r(c.rep.x() - w.x()) <= tol && abs_r(c.rep.y() - w.y()) <= tol) {
                    ++matched;
                    break;
                }
        out.pass = a.shape == AccretionShape::FiniteSet && a.clusters.size() == 4 && matched == 4;
        out.observed = std::to_string(a.clusters.size()) + " clusters, " +
                       std::to_string(matched) + " within 1/1000 of the axis points";
        return out;
    }
    if (name == "q-enumeration") {
        out.claim = "an enumeration of the rationals in [0, 1] accretes to all of [0, 1]";
        ProbeSchedule sched;
        sched.eps = Rational(1, 25);  // resolution the horizon can actually support
        SequenceAccretion a = accretion_of_sequence(cw_sequence(), sched);
        bool hull_ok = a.hull && a.hull->lo == ExtendedReal(Rational(0)) &&
                       a.hull->hi == ExtendedReal(Rational(1));
        out.pass = a.shape == AccretionShape::IntervalLike && hull_ok;
        out.observed = a.hull && a.hull->lo.is_finite() && a.hull->hi.is_finite()
                           ? "interval [" + format_rational(a.hull->lo.finite()) + ", " +
                                 format_rational(a.hull->hi.finite()) + "]"
                           : "shape " + std::string(str(a.shape));
        return out;
    }
    if (name == "dirichlet-accretion") {
        out.claim = "the rational indicator accretes to exactly {0, 1} at 1/2";
        FunctionAccretion a = accretion_of_function(parse_func("indicatorQ(x)"),
                                                    SamplePoint::rat(Rational(1, 2)),
                                                    IntervalSet::whole_line());
        out.pass = a.shape == AccretionShape::FiniteSet &&
                   detail::reps_are(a.clusters, {Rational(0), Rational(1)});
        out.observed = "clusters " + detail::cluster_rep_list(a.clusters);
        return out;
    }
    if (name == "thomae-accretion") {
        out.claim = "thomae accretes to exactly {0, 1/2} at 1/2";
        FunctionAccretion a = accretion_of_function(parse_func("thomae(x)"),
                                                    SamplePoint::rat(Rational(1, 2)),
                                                    IntervalSet::whole_line());
        out.pass = a.shape == AccretionShape::FiniteSet &&
                   detail::reps_are(a.clusters, {Rational(0), Rational(1, 2)});
        out.observed = "clusters " + detail::cluster_rep_list(a.clusters);
        return out;
    }
    if (name == "recip-at-0") {
        out.claim = "1/x has no limit at 0: it escapes every neighborhood";
        AccretionLimitReport lim = accretion_limit(parse_func("1/x"), SamplePoint::rat(Rational(0)),
                                                   IntervalSet::whole_line());
        out.pass = lim.exists == Verdict::No && lim.detail.locally_bounded == Verdict::No;
        out.observed = "limit " + std::string(str(lim.exists)) + ", " + lim.reason;
        return out;
    }
    if (name == "5cos-recip") {
        out.claim = "5 cos(1/x) accretes to the full interval [-5, 5] at 0, so no limit";
        FnProbeOptions opt;
        opt.eps = Rational(1, 100);
        IntervalSet punctured = IntervalSet::parse("[-1, 0) U (0, 1]");
        FuncDef f = parse_func("5*cos(1/x)");
        FunctionAccretion a =
            accretion_of_function(f, SamplePoint::rat(Rational(0)), punctured, opt);
        AccretionLimitReport lim =
            accretion_limit(f, SamplePoint::rat(Rational(0)), punctured, opt);
        bool hull_ok = a.hull && a.hull->lo == ExtendedReal(Rational(-5)) &&
                       a.hull->hi == ExtendedReal(Rational(5));
        out.pass = a.shape == AccretionShape::IntervalLike && hull_ok &&
                   lim.exists == Verdict::No;
        out.observed = (a.hull && a.hull->lo.is_finite()
                            ? "interval [" + format_rational(a.hull->lo.finite()) + ", " +
                                  format_rational(a.hull->hi.finite()) + "]"
                            : "shape " + std::string(str(a.shape))) +
                       ", limit " + str(lim.exists);
        return out;
    }
    if (name == "abs-derivative") {
        out.claim = "the absolute value has no derivative at 0; quotients pile at -1 and 1";
        DerivativeReport d = accretion_derivative(parse_func("abs(x)"),
                                                  SamplePoint::rat(Rational(0)),
                                                  IntervalSet::whole_line());
        out.pass = d.exists == Verdict::No &&
                   detail::reps_are(d.limit.detail.clusters, {Rational(-1), Rational(1)});
        out.observed = "exists " + std::string(str(d.exists)) + ", quotient clusters " +
                       detail::cluster_rep_list(d.limit.detail.clusters);
        return out;
    }
    if (name == "x2cos-recip2-derivative") {
        out.claim = "x^2 cos(1/x^2), patched with 0 at 0, is differentiable at 0 with value 0";
        FnProbeOptions opt;
        opt.last_scale = 24;
        opt.samples_per_scale = 32;
        DerivativeReport d =
            accretion_derivative(parse_func("piecewise{ {0} -> 0 ; else -> x^2*cos(1/x^2) }"),
                                 SamplePoint::rat(Rational(0)), IntervalSet::whole_line(), opt);
        out.pass = d.exists == Verdict::Yes && d.value && abs_r(*d.value) <= Rational(1, 10000);
        out.observed = "exists " + std::string(str(d.exists)) +
                       (d.value ? ", value " + format_rational(*d.value) : "");
        return out;
    }
    if (name == "thomae-integral") {
        out.claim = "thomae is integrable over [0, 1] with integral 0 at tolerance 1/100";
        IntegralVerdict v =
            integrate(parse_func("thomae(x)"), Rational(0), Rational(1), Rational(1, 100));
        out.pass = v.status == IntegralStatus::Integrable && v.estimate &&
                   abs_r(*v.estimate) <= Rational(1, 100);
        out.observed = str(v.status) +
                       (v.estimate ? ", estimate " + format_decimal(*v.estimate) : "");
        return out;
    }
    if (name == "dirichlet-integral") {
        out.claim = "the rational indicator is not integrable over [0, 1]; the sum gap is 1";
        IntegralVerdict v =
            integrate(parse_func("indicatorQ(x)"), Rational(0), Rational(1), Rational(1, 1000));
        out.pass = v.status == IntegralStatus::NotIntegrable && v.gap == 1;
        out.observed = str(v.status) + ", gap " + format_rational(v.gap);
        return out;
    }
    if (name == "ftc-x2") {
        out.claim = "the integral of x^2 over [0, 1] matches x^3/3 at the endpoints";
        Rational eps{1, 1000};
        IntegralVerdict v = integrate(parse_func("x^2"), Rational(0), Rational(1), eps);
        bool ftc = ftc_check(parse_func("x^2"), parse_func("x^3/3"), Rational(0), Rational(1), eps);
        out.pass = ftc && v.status == IntegralStatus::Integrable && v.estimate &&
                   abs_r(*v.estimate - Rational(1, 3)) <= 2 * eps;
        out.observed = str(v.status) +
                       (v.estimate ? ", estimate " + format_decimal(*v.estimate) : "") +
                       ", antiderivative check " + (ftc ? "pass" : "fail");
        return out;
    }
    throw DomainError("unknown corpus preset: " + name);
}

} // namespace accretion
