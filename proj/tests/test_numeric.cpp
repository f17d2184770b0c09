#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geolab/decimal.hpp"
#include "geolab/interval.hpp"
#include "geolab/rational.hpp"

#include <cmath>
#include <random>

using namespace geolab;

TEST_CASE("rational parsing") {
    CHECK(rat_from_string("5").value() == Rat(5));
    CHECK(rat_from_string("-2.97").value() == Rat(-297, 100));
    CHECK(rat_from_string("1/3").value() == Rat(1, 3));
    CHECK(rat_from_string("-7/4").value() == Rat(-7, 4));
    CHECK(rat_from_string("2.30").value() == Rat(23, 10));
    CHECK(rat_from_string(".5").value() == Rat(1, 2));
    CHECK_FALSE(rat_from_string("").has_value());
    CHECK_FALSE(rat_from_string("1/0").has_value());
    CHECK_FALSE(rat_from_string("1.2.3").has_value());
    CHECK_FALSE(rat_from_string("abc").has_value());
}

TEST_CASE("squarefree part") {
    CHECK(squarefree_part(Int(8)) == 2);
    CHECK(squarefree_part(Int(1)) == 1);
    CHECK(squarefree_part(Int(12)) == 3);
    CHECK(squarefree_part(Int(49)) == 1);
    CHECK(squarefree_part(Int(50)) == 2);
    CHECK(squarefree_part(Int(937073)) == squarefree_part(Int(937073)));
}

TEST_CASE("display rounding: half away from zero") {
    CHECK(round_display(2.455, 2).to_string() == "2.46");
    CHECK(round_display(-5.674999, 2).to_string() == "-5.67");
    CHECK(round_display(24.9512, 2).to_string() == "24.95");
    CHECK(round_display(2.5, 0).to_string() == "3");
    CHECK(round_display(-2.5, 0).to_string() == "-3");
    CHECK(round_display(8.30, 2).to_string() == "8.3");
    CHECK(round_display(5.0, 2).to_string() == "5");
    CHECK(round_display(-0.004, 2).to_string() == "0");
    CHECK(round_display(0.125, 2).to_string() == "0.13");
    CHECK_THROWS_AS(round_display(std::nan(""), 2), Error);
    CHECK_THROWS_AS(round_display(INFINITY, 2), Error);
}

TEST_CASE("display rounding: exact rational deviation") {
    Decimal d = round_display_rat(Rat(1, 3), 2);
    CHECK(d.to_rat() == Rat(33, 100));
    CHECK(Rat(1, 3) - d.to_rat() == Rat(1, 300));
}

TEST_CASE("interval arithmetic keeps exact endpoints exact") {
    Interval a(1.0, 2.0), b(-3.0, 0.5);
    Interval p = imul(a, b);
    CHECK(p.lo == -6.0);
    CHECK(p.hi == 1.0);
    Interval s = iadd(Interval(0.25, 0.5), Interval(0.125, 1.0));
    CHECK(s.lo == 0.375);
    CHECK(s.hi == 1.5);
}

TEST_CASE("interval widening on inexact operations is outward") {
    Interval t = iadd(Interval::point(0.1), Interval::point(0.2));
    CHECK(t.lo < 0.1 + 0.2);
    CHECK(t.hi >= 0.1 + 0.2);
    CHECK(t.contains(0.30000000000000004)); // nearest double to the true sum
}

TEST_CASE("interval sin over [0, pi] is [0, 1]") {
    Interval r = isin(Interval(0.0, M_PI));
    CHECK(r.lo == 0.0);
    CHECK(r.hi == 1.0);
}

TEST_CASE("interval sin saturates over wide domains") {
    Interval r = isin(Interval(1e-6, 1e6));
    CHECK(r.lo == -1.0);
    CHECK(r.hi == 1.0);
}

TEST_CASE("interval cos critical points") {
    Interval r = icos(Interval(-0.5, 0.5));
    CHECK(r.hi == 1.0);
    CHECK(r.lo < std::cos(0.5));
    CHECK(r.lo > 0.8);
}

TEST_CASE("interval division domain errors") {
    CHECK_THROWS_AS(idiv(Interval(1, 4), Interval(0, 1)), Error);
    CHECK_THROWS_AS(idiv(Interval(1, 4), Interval(-1, 1)), Error);
    Interval q = idiv(Interval(1, 4), Interval(1, 2));
    CHECK(q.lo == 0.5);
    CHECK(q.hi == 4.0);
}

TEST_CASE("interval sqrt / ln / exp domains") {
    CHECK_THROWS_AS(isqrt(Interval(-4, -1)), Error);
    Interval r = isqrt(Interval(-1, 4));
    CHECK(r.lo == 0.0);
    CHECK(r.hi == 2.0);
    CHECK_THROWS_AS(iln(Interval(-2, -1)), Error);
    CHECK_THROWS_AS(iln(Interval(0, 1)), Error);
    Interval l = iln(Interval(1, std::exp(1.0)));
    CHECK(l.lo == 0.0);
    CHECK(l.contains(1.0));
    Interval e = iexp(Interval(0, 1));
    CHECK(e.contains(1.0));
    CHECK(e.contains(2.718281828459045));
}

TEST_CASE("interval even powers tighten at zero") {
    Interval r = ipow_int(Interval(-2, 1), 2);
    CHECK(r.lo == 0.0);
    CHECK(r.hi == 4.0);
}

TEST_CASE("interval soundness on random point samples") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> val(-10.0, 10.0);
    std::uniform_real_distribution<double> widen(0.0, 2.0);
    for (int iter = 0; iter < 2000; ++iter) {
        double a = val(rng), b = val(rng);
        Interval x(std::min(a, a + widen(rng)), std::max(a, a + widen(rng)));
        Interval y(std::min(b, b + widen(rng)), std::max(b, b + widen(rng)));
        std::uniform_real_distribution<double> inx(x.lo, x.hi), iny(y.lo, y.hi);
        double px = inx(rng), py = iny(rng);
        CHECK(iadd(x, y).contains(px + py));
        CHECK(isub(x, y).contains(px - py));
        CHECK(imul(x, y).contains(px * py));
        if (!y.contains_zero()) CHECK(idiv(x, y).contains(px / py));
        CHECK(isin(x).contains(std::sin(px)));
        CHECK(icos(x).contains(std::cos(px)));
        CHECK(iexp(x).contains(std::exp(px)));
        if (x.lo > 0.0) CHECK(iln(x).contains(std::log(px < x.lo ? x.lo : px)));
    }
}
