#pragma once

#include "geolab/errors.hpp"
#include "geolab/scalar_traits.hpp"

#include <optional>
#include <vector>

namespace geolab::geom {

template <class S>
struct Point {
    S x{}, y{};
};

// radius_sq stays in the field even when the radius itself would need a
// square root; the radius is derived on demand.
template <class S>
struct Circle {
    Point<S> center;
    S radius_sq{};
};

template <class S>
struct Segment {
    Point<S> p, q;
};

template <class S>
struct Polygon {
    std::vector<Point<S>> vertices;
};

template <class S>
Point<S> make_point(const Rat& x, const Rat& y) {
    return Point<S>{scalar_ops<S>::from_rat(x), scalar_ops<S>::from_rat(y)};
}

template <class S>
bool same_point(const Point<S>& a, const Point<S>& b) {
    return scalar_ops<S>::sign(a.x - b.x) == 0 && scalar_ops<S>::sign(a.y - b.y) == 0;
}

template <class S>
S dist_sq(const Point<S>& p, const Point<S>& q) {
    S dx = p.x - q.x;
    S dy = p.y - q.y;
    return dx * dx + dy * dy;
}

template <class S>
Point<S> midpoint(const Point<S>& p, const Point<S>& q) {
    S half = scalar_ops<S>::from_rat(Rat(1, 2));
    return Point<S>{(p.x + q.x) * half, (p.y + q.y) * half};
}

// Twice the signed area of (a, b, c); positive when c lies to the left of
// the directed line a->b.
template <class S>
S orientation(const Point<S>& a, const Point<S>& b, const Point<S>& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

template <class S>
S segment_length(const Segment<S>& s) {
    return scalar_ops<S>::sqrt(dist_sq(s.p, s.q));
}

// Absolute shoelace value.
template <class S>
S polygon_area(const Polygon<S>& poly) {
    if (poly.vertices.size() < 3)
        throw Error(ErrorKind::BadArgument, "polygon needs at least 3 vertices");
    S twice{};
    for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
        const Point<S>& a = poly.vertices[i];
        const Point<S>& b = poly.vertices[(i + 1) % poly.vertices.size()];
        twice = twice + (a.x * b.y - b.x * a.y);
    }
    S half = scalar_ops<S>::from_rat(Rat(1, 2));
    return scalar_ops<S>::abs(twice * half);
}

template <class S>
bool congruent_circles(const Circle<S>& c1, const Circle<S>& c2) {
    return scalar_ops<S>::sign(c1.radius_sq - c2.radius_sq) == 0;
}

// 0, 1 or 2 points; the point strictly to the left of the directed line
// center1->center2 comes first. IdenticalCircles when the circles coincide.
template <class S>
std::vector<Point<S>> circle_circle_intersections(const Circle<S>& c1, const Circle<S>& c2) {
    using ops = scalar_ops<S>;
    S d2 = dist_sq(c1.center, c2.center);
    if (ops::sign(d2) == 0) {
        if (congruent_circles(c1, c2))
            throw Error(ErrorKind::IdenticalCircles, "circles coincide");
        return {};
    }
    S two = ops::from_long(2);
    S alpha = (d2 + c1.radius_sq - c2.radius_sq) / (two * d2);
    S disc = c1.radius_sq / d2 - alpha * alpha;
    int s = ops::disc_sign(disc);
    if (s < 0) return {};
    S ex = c2.center.x - c1.center.x;
    S ey = c2.center.y - c1.center.y;
    Point<S> base{c1.center.x + alpha * ex, c1.center.y + alpha * ey};
    if (s == 0) return {base};
    S beta = ops::sqrt(disc);
    Point<S> left{base.x - beta * ey, base.y + beta * ex};
    Point<S> right{base.x + beta * ey, base.y - beta * ex};
    return {left, right};
}

// Perpendicular-bisector intersection.
template <class S>
Circle<S> circumcircle(const Point<S>& p1, const Point<S>& p2, const Point<S>& p3) {
    using ops = scalar_ops<S>;
    if (same_point(p1, p2) || same_point(p1, p3) || same_point(p2, p3))
        throw Error(ErrorKind::DuplicatePoints, "circumcircle of coincident points");
    if (ops::sign(orientation(p1, p2, p3)) == 0)
        throw Error(ErrorKind::CollinearPoints, "circumcircle of collinear points");
    S two = ops::from_long(2);
    S a1 = two * (p2.x - p1.x), b1 = two * (p2.y - p1.y);
    S c1 = (p2.x * p2.x + p2.y * p2.y) - (p1.x * p1.x + p1.y * p1.y);
    S a2 = two * (p3.x - p1.x), b2 = two * (p3.y - p1.y);
    S c2 = (p3.x * p3.x + p3.y * p3.y) - (p1.x * p1.x + p1.y * p1.y);
    S det = a1 * b2 - a2 * b1;
    Point<S> center{(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det};
    return Circle<S>{center, dist_sq(center, p1)};
}

// Four consecutive sides pairwise equal and not all vertices collinear.
template <class S>
bool is_rhombus(const Point<S>& p1, const Point<S>& p2, const Point<S>& p3, const Point<S>& p4) {
    using ops = scalar_ops<S>;
    S s1 = dist_sq(p1, p2), s2 = dist_sq(p2, p3), s3 = dist_sq(p3, p4), s4 = dist_sq(p4, p1);
    if (ops::sign(s1 - s2) != 0 || ops::sign(s2 - s3) != 0 || ops::sign(s3 - s4) != 0)
        return false;
    if (ops::sign(s1) == 0) return false; // all four points coincide
    return ops::sign(orientation(p1, p2, p3)) != 0 || ops::sign(orientation(p1, p2, p4)) != 0;
}

// Rational tan-half-angle parametrization: center + (r(1-t^2), 2rt)/(1+t^2);
// nullopt parameter encodes t = infinity, the antipode (-r, 0).
template <class S>
Point<S> point_on_circle(const Circle<S>& c, const std::optional<Rat>& t) {
    using ops = scalar_ops<S>;
    S r = ops::sqrt(c.radius_sq);
    if (!t) return Point<S>{c.center.x - r, c.center.y};
    S num_x = ops::from_rat(Rat(1) - *t * *t);
    S num_y = ops::from_rat(Rat(2) * *t);
    S den = ops::from_rat(Rat(1) + *t * *t);
    return Point<S>{c.center.x + r * num_x / den, c.center.y + r * num_y / den};
}

} // namespace geolab::geom
