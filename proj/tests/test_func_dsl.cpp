#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "accretion/enclose.hpp"
#include "accretion/eval.hpp"
#include "accretion/func.hpp"
#include "accretion/sample.hpp"
#include "test_support.hpp"

using namespace accretion;

namespace {

Rational eval_exact(const FuncDef& f, const Rational& x) {
    EvalValue v = eval(f, SamplePoint::rat(x));
    REQUIRE(v.exact());
    return v.lo;
}

// Brute-force sup of thomae over an interval: scan denominators up to 1000
// and take the largest 1/q whose level is populated. Independent of the
// Stern-Brocot machinery.
std::optional<Rational> brute_thomae_sup(const Interval& piece) {
    Rational lo = piece.lo.finite(), hi = piece.hi.finite();
    for (long q = 1; q <= 1000; ++q) {
        BigInt p_start = ceil_big(lo * q), p_end = floor_big(hi * q);
        for (BigInt p = p_start; p <= p_end; ++p) {
            Rational cand = make_rational(p, BigInt(q));
            if (den(cand) != q) continue;
            if (piece.contains(cand)) return Rational(BigInt(1), BigInt(q));
        }
    }
    return std::nullopt;
}

bool encloses_with_slack(const Enclosure& outer, const Enclosure& inner, const Rational& slack) {
    bool lo_ok = !outer.lo.is_finite() ||
                 (inner.lo.is_finite() && inner.lo.finite() >= outer.lo.finite() - slack);
    bool hi_ok = !outer.hi.is_finite() ||
                 (inner.hi.is_finite() && inner.hi.finite() <= outer.hi.finite() + slack);
    return lo_ok && hi_ok;
}

} // namespace

TEST_CASE("expression parsing round trips through the printer") {
    const char* cases[] = {
        "x^2",
        "5*cos(1/x)",
        "x^2*cos(1/x^2)",
        "abs(x - 3140)",
        "thomae(x)",
        "indicatorQ(x)",
        "piecewise{ {0} -> 0 ; else -> 1/x }",
        "piecewise{ [0, 1] -> x^2 ; (1, 2] -> 2*x - 1 ; else -> 3 }",
        "(x + 1)^2 - x^2",
        "2^3^2",
        "-x^2 + 1/2",
    };
    for (const char* text : cases) {
        CAPTURE(text);
        FuncDef f = parse_func(text);
        std::string printed = f.str();
        FuncDef again = parse_func(printed);
        CHECK(equal(f.root, again.root));
        // printing is canonical: a second trip is byte-identical
        CHECK(again.str() == printed);
    }
    // sequence-style formulas use a different variable name
    FuncDef seq = parse_func("1/n + 3140 + (-1)^n", "n");
    CHECK(seq.str() == "1/n + 3140 + (-1)^n");
    CHECK(equal(parse_func(seq.str(), "n").root, seq.root));
}

TEST_CASE("parser applies the usual precedence and associativity") {
    CHECK(eval_exact(parse_func("2 + 3*4"), Rational(0)) == 14);
    CHECK(eval_exact(parse_func("(2 + 3)*4"), Rational(0)) == 20);
    CHECK(eval_exact(parse_func("2^3^2"), Rational(0)) == 512);   // right associative
    CHECK(eval_exact(parse_func("6/3/2"), Rational(0)) == 1);     // left associative
    CHECK(eval_exact(parse_func("-2^2"), Rational(0)) == -4);     // minus binds looser
    CHECK(eval_exact(parse_func("2^-1"), Rational(0)) == parse_rational("1/2"));
    CHECK(eval_exact(parse_func("22/7"), Rational(0)) == parse_rational("22/7"));
    CHECK(eval_exact(parse_func("3.25"), Rational(0)) == parse_rational("13/4"));
}

TEST_CASE("parser rejects malformed expressions") {
    CHECK_THROWS_AS(parse_func("x +"), ParseError);
    CHECK_THROWS_AS(parse_func("foo(x)"), ParseError);
    CHECK_THROWS_AS(parse_func("n + 1"), ParseError);  // unknown name under var "x"
    CHECK_THROWS_AS(parse_func("x 5"), ParseError);
    CHECK_THROWS_AS(parse_func("(x"), ParseError);
    CHECK_THROWS_AS(parse_func("3..14"), ParseError);
    CHECK_THROWS_AS(parse_func("piecewise{ }"), ParseError);
    CHECK_THROWS_AS(parse_func("piecewise{ [0, 1] -> 1 }x"), ParseError);
    // overlapping guards are a structural error, caught at parse time
    CHECK_THROWS_AS(parse_func("piecewise{ (0, 1) -> 1 ; (1/2, 2) -> 0 }"), ParseError);
    // a guarded branch after else would be unreachable
    CHECK_THROWS_AS(parse_func("piecewise{ {0} -> 0 ; else -> 1 ; {2} -> 2 }"), ParseError);
}

TEST_CASE("evaluation is exact on rational arithmetic") {
    CHECK(eval_exact(parse_func("x^2"), Rational(3)) == 9);
    CHECK(eval_exact(parse_func("x^2"), parse_rational("-1/2")) == parse_rational("1/4"));
    CHECK(eval_exact(parse_func("abs(x - 1)"), parse_rational("1/3")) == parse_rational("2/3"));

    FuncDef seq = parse_func("1/n + 3140 + (-1)^n", "n");
    CHECK(eval_exact(seq, Rational(7)) == parse_rational("21974/7"));  // 3139 + 1/7
    CHECK(eval_exact(seq, Rational(8)) == parse_rational("25129/8"));  // 3141 + 1/8

    FuncDef recip = parse_func("piecewise{ {0} -> 0 ; else -> 1/x }");
    CHECK(eval_exact(recip, Rational(0)) == 0);
    CHECK(eval_exact(recip, Rational(2)) == parse_rational("1/2"));
    CHECK(eval_exact(recip, parse_rational("-1/3")) == -3);
}

TEST_CASE("evaluation failures raise domain errors") {
    CHECK_THROWS_AS(eval(parse_func("1/x"), SamplePoint::rat(Rational(0))), DomainError);
    CHECK_THROWS_AS(eval(parse_func("1/(x - x)"), SamplePoint::rat(Rational(5))), DomainError);
    CHECK_THROWS_AS(eval(parse_func("x^(1/2)"), SamplePoint::rat(Rational(4))), DomainError);
    CHECK_THROWS_AS(eval(parse_func("x^x"), SamplePoint::rat(parse_rational("1/2"))), DomainError);
    CHECK_THROWS_AS(eval(parse_func("(1/x)^-1"), SamplePoint::rat(Rational(0))), DomainError);

    FuncDef partial = parse_func("piecewise{ [0, 1] -> 1 }");
    CHECK(eval_exact(partial, parse_rational("1/2")) == 1);
    CHECK_THROWS_AS(eval(partial, SamplePoint::rat(Rational(2))), DomainError);

    FuncDef restricted = parse_func("x^2").restricted_to(IntervalSet::parse("[0, 1]"));
    CHECK_THROWS_AS(eval(restricted, SamplePoint::rat(Rational(2))), DomainError);
}

TEST_CASE("rationality-sensitive atoms read the sample tag") {
    FuncDef ind = parse_func("indicatorQ(x)");
    FuncDef tho = parse_func("thomae(x)");
    CHECK(eval_exact(ind, parse_rational("2/3")) == 1);
    CHECK(eval_exact(tho, parse_rational("2/3")) == parse_rational("1/3"));
    CHECK(eval_exact(tho, Rational(5)) == 1);
    CHECK(eval_exact(tho, Rational(0)) == 1);

    SamplePoint irr = SamplePoint::irr(parse_rational("577/408"));  // stands in for sqrt(2)
    CHECK(eval(ind, irr).lo == 0);
    CHECK(eval(tho, irr).lo == 0);

    // rationality of composite or transcendental arguments is not guessed
    CHECK_THROWS_AS(eval(parse_func("indicatorQ(x^2)"), irr), DomainError);
    CHECK_THROWS_AS(eval(parse_func("indicatorQ(sin(x))"), SamplePoint::rat(Rational(1))), DomainError);
    // but composites of an exact rational are fine
    CHECK(eval_exact(parse_func("indicatorQ(x/2 + 1)"), parse_rational("1/3")) == 1);
    CHECK(eval_exact(parse_func("thomae(x + 1)"), parse_rational("1/3")) == parse_rational("1/3"));
}

TEST_CASE("trig evaluation carries certified enclosures") {
    FuncDef s = parse_func("sin(x)");
    EvalValue at0 = eval(s, SamplePoint::rat(Rational(0)));
    CHECK(at0.lo <= 0);
    CHECK(at0.hi >= 0);
    CHECK(at0.width() <= pow2_neg(64));

    FuncDef c5 = parse_func("5*cos(1/x)");
    EvalValue v = eval(c5, SamplePoint::rat(parse_rational("1/2")));
    double expect = 5 * std::cos(2.0);
    CHECK(std::abs(static_cast<double>(v.mid()) - expect) < 1e-12);
    CHECK(v.width() <= 5 * pow2_neg(63));
}

TEST_CASE("a divisor enclosure straddling zero retries at higher precision") {
    // 5419351/1725033 is a convergent of pi, so sin of it is about 2.4e-14:
    // far below a 40-bit enclosure width but easily resolved at 80 bits
    FuncDef f = parse_func("1/sin(x)");
    EvalOptions coarse{40};
    EvalValue v = eval(f, SamplePoint::rat(parse_rational("5419351/1725033")), coarse);
    Rational mag = abs_r(v.mid());
    CHECK(mag > Rational(BigInt(10) * BigInt(1000000000000)));
    CHECK(mag < Rational(BigInt(1000000) * BigInt(1000000000000)));
}

TEST_CASE("quadratic ranges are exact despite repeated variables") {
    FuncDef f = parse_func("x^2");
    RangeResult r = enclose_piece(f, make_interval(ExtendedReal(Rational(-1)), false,
                                                   ExtendedReal(Rational(2)), false));
    CHECK(r.range == Enclosure{ExtendedReal(Rational(0)), ExtendedReal(Rational(4))});
    CHECK(r.tight);

    // naive interval arithmetic would give [-1, 1] here; the vertex form gives
    // the true range
    FuncDef g = parse_func("x^2 - x");
    RangeResult rg = enclose_piece(g, make_interval(ExtendedReal(Rational(0)), false,
                                                    ExtendedReal(Rational(1)), false));
    CHECK(rg.range == Enclosure{ExtendedReal(parse_rational("-1/4")), ExtendedReal(Rational(0))});
    CHECK(rg.tight);

    FuncDef h = parse_func("(x + 1)^2 - x^2");  // collapses to the line 2x + 1
    RangeResult rh = enclose_piece(h, make_interval(ExtendedReal(Rational(-1)), false,
                                                    ExtendedReal(Rational(1)), false));
    CHECK(rh.range == Enclosure{ExtendedReal(Rational(-1)), ExtendedReal(Rational(3))});
    CHECK(rh.tight);
}

TEST_CASE("reciprocal ranges stay exact at a zero endpoint") {
    FuncDef f = parse_func("1/x");
    RangeResult r = enclose_piece(f, make_interval(ExtendedReal(Rational(0)), true,
                                                   ExtendedReal(parse_rational("1/10")), false));
    CHECK(r.range == Enclosure{ExtendedReal(Rational(10)), ExtendedReal::pos_inf()});
    CHECK(r.tight);

    // an interior zero can only produce the whole line
    RangeResult wide = enclose_piece(f, make_interval(ExtendedReal(Rational(-1)), false,
                                                      ExtendedReal(Rational(1)), false));
    CHECK(wide.range == Enclosure::whole_line());
    CHECK_FALSE(wide.tight);
}

TEST_CASE("oscillating compositions hit their full band") {
    FuncDef f = parse_func("5*cos(1/x)");
    RangeResult r = enclose_piece(f, make_interval(ExtendedReal(Rational(0)), true,
                                                   ExtendedReal(parse_rational("1/100")), false));
    CHECK(r.range == Enclosure{ExtendedReal(Rational(-5)), ExtendedReal(Rational(5))});
    CHECK(r.tight);

    FuncDef s = parse_func("sin(x)");
    RangeResult rs = enclose_piece(s, make_interval(ExtendedReal(Rational(1)), false,
                                                    ExtendedReal(Rational(2)), false));
    CHECK(rs.range.hi == ExtendedReal(Rational(1)));  // pi/2 lies inside
    Rational lo = rs.range.lo.finite();
    CHECK(std::abs(static_cast<double>(lo) - std::sin(1.0)) < 1e-12);
}

TEST_CASE("indicator and thomae ranges over intervals") {
    FuncDef ind = parse_func("indicatorQ(x)");
    RangeResult ri = enclose_piece(ind, make_interval(ExtendedReal(Rational(0)), false,
                                                      ExtendedReal(Rational(1)), false));
    CHECK(ri.range == Enclosure{ExtendedReal(Rational(0)), ExtendedReal(Rational(1))});
    CHECK(ri.tight);

    FuncDef tho = parse_func("thomae(x)");
    RangeResult rt = enclose_piece(tho, make_interval(ExtendedReal(parse_rational("1/3")), true,
                                                      ExtendedReal(parse_rational("1/2")), true));
    // the simplest rational strictly between 1/3 and 1/2 is 2/5
    CHECK(rt.range == Enclosure{ExtendedReal(Rational(0)), ExtendedReal(parse_rational("1/5"))});
    CHECK(rt.tight);

    RangeResult closed = enclose_piece(tho, make_interval(ExtendedReal(parse_rational("1/2")), false,
                                                          ExtendedReal(Rational(1)), false));
    CHECK(closed.range.hi == ExtendedReal(Rational(1)));  // the integer 1 is included

    // degenerate piece evaluates pointwise
    RangeResult at23 = enclose_piece(tho, make_interval(ExtendedReal(parse_rational("2/3")), false,
                                                        ExtendedReal(parse_rational("2/3")), false));
    CHECK(at23.range == Enclosure::point(parse_rational("1/3")));
}

TEST_CASE("thomae range agrees with a brute-force denominator scan") {
    testsupport::Rng rng(2026);
    FuncDef tho = parse_func("thomae(x)");
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        Rational a(BigInt(rng.range(-200, 200)), BigInt(rng.range(1, 50)));
        Rational w(BigInt(rng.range(1, 40)), BigInt(400));
        bool lo_open = rng.coin(), hi_open = rng.coin();
        Interval piece = make_interval(ExtendedReal(a), lo_open, ExtendedReal(a + w), hi_open);
        auto brute = brute_thomae_sup(piece);
        if (!brute) continue;  // no denominator up to 1000 in range
        RangeResult r = enclose_piece(tho, piece);
        CAPTURE(piece.lo.str(), piece.hi.str(), lo_open, hi_open);
        CHECK(r.range.hi == ExtendedReal(*brute));
        CHECK(r.range.lo == ExtendedReal(Rational(0)));
        ++checked;
    }
    CHECK(checked > 80);
}

TEST_CASE("piecewise ranges union their branches") {
    FuncDef recip = parse_func("piecewise{ {0} -> 0 ; else -> 1/x }");
    RangeResult pos = enclose_over(recip, IntervalSet::parse("[1/10, 1]"));
    CHECK(pos.range == Enclosure{ExtendedReal(Rational(1)), ExtendedReal(Rational(10))});

    RangeResult both = enclose_over(recip, IntervalSet::parse("[-1, 1]"));
    CHECK(both.range == Enclosure::whole_line());

    FuncDef partial = parse_func("piecewise{ [0, 1] -> 1 }");
    CHECK_THROWS_AS(enclose_over(partial, IntervalSet::parse("[0, 2]")), DomainError);
    CHECK_THROWS_AS(enclose_over(partial, IntervalSet::parse("[5, 6]")), DomainError);
}

TEST_CASE("range enclosures shrink under bisection") {
    struct Case {
        const char* text;
        const char* start;
    };
    Case cases[] = {
        {"x^2 - x", "[-2, 3]"},
        {"x^3 - x", "[-2, 2]"},
        {"sin(x)", "[0, 7]"},
        {"abs(x - 1/2)", "[-1, 2]"},
        {"thomae(x)", "[0, 1]"},
        {"5*cos(1/x)", "(0, 2]"},
    };
    Rational slack = pow2_neg(50);
    for (const auto& c : cases) {
        CAPTURE(c.text);
        FuncDef f = parse_func(c.text);
        Interval cur = IntervalSet::parse(c.start).pieces().front();
        for (int depth = 0; depth < 10; ++depth) {
            RangeResult whole = enclose_piece(f, cur);
            Rational mid = (cur.lo.finite() + cur.hi.finite()) / 2;
            Interval left = make_interval(cur.lo, cur.lo_open, ExtendedReal(mid), false);
            Interval right = make_interval(ExtendedReal(mid), false, cur.hi, cur.hi_open);
            Enclosure split = hull(enclose_piece(f, left).range, enclose_piece(f, right).range);
            CHECK(encloses_with_slack(whole.range, split, slack));
            cur = left;
        }
    }
}

TEST_CASE("oscillation certificates recognise indicator combinations") {
    CHECK(min_oscillation(parse_func("indicatorQ(x)")) == 1);
    CHECK(min_oscillation(parse_func("3*indicatorQ(x) - 2")) == 3);
    CHECK(min_oscillation(parse_func("2 - indicatorQ(x)/2")) == parse_rational("1/2"));
    CHECK(min_oscillation(parse_func("-indicatorQ(x)")) == 1);
    // no certificate for shapes the decomposition does not cover
    CHECK(min_oscillation(parse_func("thomae(x)")) == 0);
    CHECK(min_oscillation(parse_func("x + indicatorQ(x)")) == 0);
    CHECK(min_oscillation(parse_func("x^2")) == 0);
}

TEST_CASE("sampling favours low denominators and tags irrationals") {
    SampleOptions opt;
    opt.count = 16;
    auto pts = sample_points(IntervalSet::parse("[0, 1]").pieces().front(), opt);
    REQUIRE(pts.size() == 16);
    int n_rat = 0, n_irr = 0;
    for (const auto& p : pts) {
        CHECK(p.value >= 0);
        CHECK(p.value <= 1);
        if (p.irrational) {
            ++n_irr;
            CHECK(p.value > 0);
            CHECK(p.value < 1);
        } else {
            ++n_rat;
            CHECK(den(p.value) <= 5);  // the Farey sweep stays shallow on [0, 1]
        }
    }
    CHECK(n_rat == 8);
    CHECK(n_irr == 8);
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1].value < pts[i].value);
}

TEST_CASE("sampling respects open endpoints and degenerate pieces") {
    SampleOptions opt;
    opt.count = 10;
    auto open_pts = sample_points(IntervalSet::parse("(0, 1)").pieces().front(), opt);
    REQUIRE(open_pts.size() == 10);
    for (const auto& p : open_pts) {
        CHECK(p.value > 0);
        CHECK(p.value < 1);
    }

    auto single = sample_points(IntervalSet::parse("{2}").pieces().front(), opt);
    REQUIRE(single.size() == 1);
    CHECK(single[0].value == 2);
    CHECK_FALSE(single[0].irrational);

    CHECK_THROWS_AS(sample_points(IntervalSet::parse("[0, inf)").pieces().front(), opt),
                    DomainError);
}

TEST_CASE("sampling is deterministic per seed and covers every piece") {
    SampleOptions opt;
    opt.count = 16;
    opt.seed = 7;
    IntervalSet region = IntervalSet::parse("[0, 1] U [2, 3]");
    auto a = sample_points(region, opt);
    auto b = sample_points(region, opt);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].value == b[i].value);
        CHECK(a[i].irrational == b[i].irrational);
    }
    int low = 0, high = 0;
    for (const auto& p : a) {
        CHECK(region.contains(p.value));
        (p.value <= 1 ? low : high)++;
    }
    CHECK(low == 8);
    CHECK(high == 8);
}
