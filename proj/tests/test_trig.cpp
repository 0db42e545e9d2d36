#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "accretion/trig.hpp"

using namespace accretion;

namespace {

double approx(const Rational& r) { return r.convert_to<double>(); }

double mid(const Enclosure& e) { return (approx(e.lo.finite()) + approx(e.hi.finite())) / 2; }

// `reference` comes from double trig on a double argument, so allow for the
// argument's representation error (about |x| * 2^-53) scaled through the
// unit derivative, on top of double's own rounding.
void check_certified(const Enclosure& e, double x, double reference, unsigned width_bits) {
    double slack = 1e-14 + std::abs(x) * 4e-16;
    REQUIRE(e.is_bounded());
    CHECK(e.width() <= pow2_neg(width_bits));
    CHECK(approx(e.lo.finite()) <= reference + slack);
    CHECK(reference - slack <= approx(e.hi.finite()));
}

} // namespace

TEST_CASE("pi enclosure brackets the known digits") {
    Enclosure pi = pi_enclosure(128);
    Rational lo_ref = parse_rational("3.14159265358979323846264338327950288419");
    Rational hi_ref = parse_rational("3.14159265358979323846264338327950288420");
    CHECK(pi.lo.finite() < hi_ref);
    CHECK(lo_ref < pi.hi.finite());
    CHECK(pi.width() <= pow2_neg(128));
}

TEST_CASE("sine and cosine enclosures contain the true value at width 2^-64") {
    const double xs[] = {0.0, 1.0, -1.0, 0.5, 3.0, 2.718, 100.0, -12345.678};
    for (double xv : xs) {
        // build the rational exactly from a decimal literal with 3-6 digits
        Rational x(xv == 2.718 ? parse_rational("2718/1000")
                               : xv == -12345.678 ? parse_rational("-12345678/1000")
                                                  : Rational(BigInt(llround(xv * 2)), BigInt(2)));
        auto [s, c] = sin_cos_enclosure(x, 64);
        check_certified(s, xv, std::sin(approx(x)), 64);
        check_certified(c, xv, std::cos(approx(x)), 64);
    }
}

TEST_CASE("argument reduction survives huge arguments") {
    // x = 2^96 + 1/3: reduction needs pi to well past 96 bits
    Rational x = Rational(BigInt(1) << 96) + parse_rational("1/3");
    auto [s, c] = sin_cos_enclosure(x, 64);
    CHECK(s.width() <= pow2_neg(64));
    CHECK(c.width() <= pow2_neg(64));
    // sin^2 + cos^2 must straddle 1
    Rational lo = s.lo.finite() * s.lo.finite() + c.lo.finite() * c.lo.finite();
    Rational hi = s.hi.finite() * s.hi.finite() + c.hi.finite() * c.hi.finite();
    CHECK(min_r(lo, hi) <= 1);
    CHECK(1 <= max_r(lo, hi) + pow2_neg(60));
}

TEST_CASE("requesting narrower widths tightens the enclosure") {
    Rational x = parse_rational("1/3");
    Enclosure coarse = sin_enclosure(x, 32), fine = sin_enclosure(x, 128);
    CHECK(fine.width() <= pow2_neg(128));
    CHECK(fine.width() < coarse.width());
    CHECK(coarse.lo <= fine.lo);
    CHECK(fine.hi <= coarse.hi);
}

TEST_CASE("trig ranges attain interior extrema exactly") {
    Enclosure one_two{ExtendedReal(Rational(1)), ExtendedReal(Rational(2))};
    Enclosure s = sin_range(one_two); // contains pi/2
    CHECK(s.hi == ExtendedReal(Rational(1)));
    CHECK(std::abs(approx(s.lo.finite()) - std::sin(1.0)) < 1e-15);

    Enclosure zero_one{ExtendedReal(Rational(0)), ExtendedReal(Rational(1))};
    Enclosure c = cos_range(zero_one); // max at the endpoint 0 itself
    CHECK(c.hi == ExtendedReal(Rational(1)));
    CHECK(std::abs(approx(c.lo.finite()) - std::cos(1.0)) < 1e-15);
    Enclosure s01 = sin_range(zero_one); // monotone here: endpoint values
    CHECK(std::abs(approx(s01.hi.finite()) - std::sin(1.0)) < 1e-15);
    CHECK(approx(s01.lo.finite()) <= 0.0);

    Enclosure three_four{ExtendedReal(Rational(3)), ExtendedReal(Rational(4))};
    Enclosure c34 = cos_range(three_four); // contains pi
    CHECK(c34.lo == ExtendedReal(Rational(-1)));

    Enclosure wide{ExtendedReal(Rational(-100)), ExtendedReal(Rational(100))};
    CHECK(sin_range(wide) == Enclosure{ExtendedReal(Rational(-1)), ExtendedReal(Rational(1))});
    CHECK(cos_range(Enclosure::whole_line()) ==
          Enclosure{ExtendedReal(Rational(-1)), ExtendedReal(Rational(1))});
}

TEST_CASE("trig range encloses dense samples") {
    // soundness spot check: 200 samples of sin over [2, 9] all fall inside
    Enclosure dom{ExtendedReal(Rational(2)), ExtendedReal(Rational(9))};
    Enclosure r = sin_range(dom);
    for (int i = 0; i <= 200; ++i) {
        Rational x = Rational(2) + Rational(7 * i, 200);
        Enclosure v = sin_enclosure(x);
        CHECK(r.lo <= v.lo);
        CHECK(v.hi <= r.hi);
    }
}
