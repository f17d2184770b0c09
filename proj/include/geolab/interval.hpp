#pragma once

#include "geolab/errors.hpp"
#include "geolab/rational.hpp"

#include <cmath>
#include <string>

namespace geolab {

// Closed interval with binary64 endpoints (±inf allowed, never NaN).
// Every operation returns an enclosure of the exact image set: endpoints
// are widened outward by one ulp whenever the IEEE operation was inexact
// (exactness detected via error-free transforms), so representable results
// like [1,2]*[-3,0.5] = [-6,1] stay tight.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double l, double h);
    static Interval point(double x) { return Interval(x, x); }
    static Interval entire();
    static Interval from_rat(const Rat& q);
    static Interval hull(const Interval& a, const Interval& b);

    double width() const { return hi - lo; }
    double mid() const;
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    bool is_point() const { return lo == hi; }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }

    std::string to_string() const;
    bool operator==(const Interval&) const = default;
};

Interval iadd(const Interval& x, const Interval& y);
Interval isub(const Interval& x, const Interval& y);
Interval imul(const Interval& x, const Interval& y);
// DomainViolation when 0 is inside y.
Interval idiv(const Interval& x, const Interval& y);
Interval ineg(const Interval& x);
// DomainViolation when x.hi < 0; negative slack below 0 is clipped.
Interval isqrt(const Interval& x);
// Period-aware: exact hull endpoints when a critical point lies inside.
Interval isin(const Interval& x);
Interval icos(const Interval& x);
Interval iexp(const Interval& x);
// DomainViolation when x touches (-inf, 0].
Interval iln(const Interval& x);
Interval iabs(const Interval& x);
// n >= 0; even powers are tightened around 0.
Interval ipow_int(const Interval& x, long n);

inline Interval operator+(const Interval& a, const Interval& b) { return iadd(a, b); }
inline Interval operator-(const Interval& a, const Interval& b) { return isub(a, b); }
inline Interval operator*(const Interval& a, const Interval& b) { return imul(a, b); }
inline Interval operator/(const Interval& a, const Interval& b) { return idiv(a, b); }
inline Interval operator-(const Interval& a) { return ineg(a); }

namespace detail {
double next_up(double x);
double next_down(double x);
double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
} // namespace detail

} // namespace geolab
