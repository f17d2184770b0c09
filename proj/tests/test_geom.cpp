#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geolab/geom.hpp"

#include <random>

using namespace geolab;
using namespace geolab::geom;

namespace {
using EP = Point<ExactScalar>;
using EC = Circle<ExactScalar>;

Rat R(long n, long d) {
    Rat q(n, d);
    q.canonicalize();
    return q;
}

EP ep(long xn, long yn, long d = 1) {
    return make_point<ExactScalar>(Rat(xn, d), Rat(yn, d));
}

ExactScalar es(long n, long d = 1) { return ExactScalar(Rat(n, d)); }
} // namespace

TEST_CASE("dist_sq basics") {
    CHECK(dist_sq(ep(0, 0), ep(0, 0)).is_zero());
    CHECK(dist_sq(ep(0, 0), ep(3, 4)).as_rational() == 25);
    // Fig. 7 printed coordinates: A-B distance^2 = 55.9625 = 7.4808...^2
    EP a = make_point<ExactScalar>(Rat(-297, 100), Rat(245, 100));
    EP b = make_point<ExactScalar>(Rat(451, 100), Rat(234, 100));
    CHECK(dist_sq(a, b).as_rational() == R(559625, 10000));
}

TEST_CASE("circle-circle intersection branches, tangent, disjoint") {
    EC c1{ep(0, 0), es(25)};
    EC c2{ep(6, 0), es(25)};
    auto pts = circle_circle_intersections(c1, c2);
    REQUIRE(pts.size() == 2);
    CHECK(same_point(pts[0], ep(3, 4)));  // left of (0,0)->(6,0)
    CHECK(same_point(pts[1], ep(3, -4)));

    EC u1{ep(0, 0), es(1)};
    EC u2{ep(2, 0), es(1)};
    auto tang = circle_circle_intersections(u1, u2);
    REQUIRE(tang.size() == 1);
    CHECK(same_point(tang[0], ep(1, 0)));

    EC far{ep(5, 0), es(1)};
    CHECK(circle_circle_intersections(u1, far).empty());

    CHECK_THROWS_AS(circle_circle_intersections(c1, c1), Error);
    // concentric distinct circles do not intersect
    EC inner{ep(0, 0), es(4)};
    CHECK(circle_circle_intersections(c1, inner).empty());
}

TEST_CASE("intersection points satisfy both circle equations exactly") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<long> c(-8, 8);
    std::uniform_int_distribution<long> r(1, 9);
    int found = 0;
    for (int iter = 0; iter < 120; ++iter) {
        EC c1{ep(c(rng), c(rng)), es(r(rng))};
        EC c2{ep(c(rng), c(rng)), es(r(rng))};
        if (same_point(c1.center, c2.center)) continue;
        for (const auto& p : circle_circle_intersections(c1, c2)) {
            CHECK((dist_sq(p, c1.center) - c1.radius_sq).sign() == 0);
            CHECK((dist_sq(p, c2.center) - c2.radius_sq).sign() == 0);
            ++found;
        }
    }
    CHECK(found > 20);
}

TEST_CASE("circumcircle witness and errors") {
    Circle<ExactScalar> cc = circumcircle(ep(0, 0), ep(2, 0), ep(0, 2));
    CHECK(same_point(cc.center, ep(1, 1)));
    CHECK(cc.radius_sq.as_rational() == 2);

    // rational Tzitzeica witness triangle
    Circle<ExactScalar> w = circumcircle(ep(-1, 7), ep(3, -1), ep(-4, -2));
    CHECK(same_point(w.center, ep(-1, 2)));
    CHECK(w.radius_sq.as_rational() == 25);

    CHECK_THROWS_AS(circumcircle(ep(0, 0), ep(1, 1), ep(2, 2)), Error);
    CHECK_THROWS_AS(circumcircle(ep(0, 0), ep(0, 0), ep(2, 2)), Error);
}

TEST_CASE("circumcircle invariant under vertex permutation") {
    EP p1 = ep(-3, 1), p2 = ep(2, 5, 3), p3 = ep(7, -2);
    Circle<ExactScalar> ref = circumcircle(p1, p2, p3);
    for (auto [a, b, c] : {std::tuple{p1, p3, p2}, {p2, p1, p3}, {p2, p3, p1},
                           {p3, p1, p2}, {p3, p2, p1}}) {
        Circle<ExactScalar> cc = circumcircle(a, b, c);
        CHECK(same_point(cc.center, ref.center));
        CHECK((cc.radius_sq - ref.radius_sq).is_zero());
    }
    for (const auto& p : {p1, p2, p3})
        CHECK((dist_sq(p, ref.center) - ref.radius_sq).sign() == 0);
}

TEST_CASE("polygon area") {
    Polygon<ExactScalar> tri{{ep(0, 0), ep(1, 0), ep(0, 1)}};
    CHECK(polygon_area(tri).as_rational() == Rat(1, 2));

    Polygon<ExactScalar> fig7{{make_point<ExactScalar>(Rat(-297, 100), Rat(245, 100)),
                               make_point<ExactScalar>(Rat(451, 100), Rat(234, 100)),
                               make_point<ExactScalar>(Rat(23, 10), Rat(-567, 100))}};
    // shoelace by hand: (2.97*8.01 + 4.51*8.12 - 2.3*0.11)/2 = 30.07895
    CHECK(polygon_area(fig7).as_rational() == R(601579, 20000));

    Polygon<ExactScalar> degenerate{{ep(0, 0), ep(1, 0), ep(2, 0)}};
    CHECK(polygon_area(degenerate).is_zero());

    // cyclic rotation and orientation flips keep the absolute value
    Polygon<ExactScalar> rot{{ep(1, 0), ep(0, 1), ep(0, 0)}};
    CHECK((polygon_area(rot) - polygon_area(tri)).is_zero());
    Polygon<ExactScalar> rev{{ep(0, 1), ep(1, 0), ep(0, 0)}};
    CHECK((polygon_area(rev) - polygon_area(tri)).is_zero());
}

TEST_CASE("rhombus predicate") {
    CHECK(is_rhombus(ep(0, 0), ep(1, 0), ep(1, 1), ep(0, 1)));
    CHECK(is_rhombus(ep(0, 0), ep(3, 4), ep(6, 0), ep(3, -4)));
    CHECK_FALSE(is_rhombus(ep(0, 0), ep(2, 0), ep(3, 1), ep(1, 1)));
    CHECK_FALSE(is_rhombus(ep(0, 0), ep(1, 0), ep(2, 0), ep(3, 0)));
    CHECK_FALSE(is_rhombus(ep(0, 0), ep(0, 0), ep(0, 0), ep(0, 0)));
}

TEST_CASE("rhombus lemma on random congruent intersecting circles") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<long> c(-6, 6);
    std::uniform_int_distribution<long> r(2, 8);
    int done = 0;
    while (done < 100) {
        long rr = r(rng);
        EP o1 = ep(c(rng), c(rng));
        EP o2 = ep(c(rng), c(rng));
        EC c1{o1, es(rr * rr)};
        EC c2{o2, es(rr * rr)};
        if (same_point(o1, o2)) continue;
        auto pts = circle_circle_intersections(c1, c2);
        if (pts.size() != 2) continue;
        CHECK(is_rhombus(o1, pts[0], o2, pts[1]));
        ++done;
    }
}

TEST_CASE("congruent circles") {
    EC a{ep(0, 0), es(25)};
    EC b{ep(9, 2), es(25)};
    EC c{ep(9, 2), es(2495, 100)};
    CHECK(congruent_circles(a, b));
    CHECK_FALSE(congruent_circles(a, c));
    CHECK(congruent_circles(a, a));
}

TEST_CASE("glider parametrization") {
    EC c{ep(0, 0), es(25)};
    CHECK(same_point(point_on_circle(c, Rat(1, 2)), ep(3, 4)));
    CHECK(same_point(point_on_circle(c, Rat(0)), ep(5, 0)));
    CHECK(same_point(point_on_circle(c, Rat(3)), ep(-4, 3)));
    CHECK(same_point(point_on_circle(c, std::nullopt), ep(-5, 0)));
    // glider stays on the circle even with an irrational radius
    EC c2{ep(1, 1), es(2)};
    auto p = point_on_circle(c2, Rat(5, 7));
    CHECK((dist_sq(p, c2.center) - c2.radius_sq).sign() == 0);
}

TEST_CASE("float mode agrees with exact mode on well-conditioned input") {
    std::mt19937 rng(1001);
    std::uniform_int_distribution<long> num(-900, 900);
    int done = 0;
    while (done < 60) {
        Rat ax(num(rng), 10), ay(num(rng), 10), bx(num(rng), 10), by(num(rng), 10);
        Rat r2(num(rng) % 400 + 500, 10);
        EC e1{make_point<ExactScalar>(ax, ay), ExactScalar(r2)};
        EC e2{make_point<ExactScalar>(bx, by), ExactScalar(r2)};
        Circle<double> f1{make_point<double>(ax, ay), scalar_ops<double>::from_rat(r2)};
        Circle<double> f2{make_point<double>(bx, by), scalar_ops<double>::from_rat(r2)};
        if (same_point(e1.center, e2.center)) continue;
        auto ei = circle_circle_intersections(e1, e2);
        if (ei.size() != 2) continue;
        // keep clearly away from tangency
        ExactScalar sep = dist_sq(ei[0], ei[1]);
        if (sep.to_double() < 1e-3) continue;
        auto fi = circle_circle_intersections(f1, f2);
        REQUIRE(fi.size() == 2);
        for (int k = 0; k < 2; ++k) {
            double exx = ei[k].x.to_double(), exy = ei[k].y.to_double();
            double scale = std::max({1.0, std::abs(exx), std::abs(exy)});
            CHECK(std::abs(fi[k].x - exx) / scale < 1e-9);
            CHECK(std::abs(fi[k].y - exy) / scale < 1e-9);
        }
        ++done;
    }
}
