#pragma once

#include "geolab/rational.hpp"

namespace geolab::detail {

// Interval with exact rational endpoints; only used inside adaptive
// refinement (exact sign decisions, to_interval), never exposed.
struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}
    static RatInterval point(const Rat& q) { return RatInterval(q, q); }

    Rat width() const { return hi - lo; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
};

RatInterval radd(const RatInterval& a, const RatInterval& b);
RatInterval rsub(const RatInterval& a, const RatInterval& b);
RatInterval rmul(const RatInterval& a, const RatInterval& b);
RatInterval rscale(const RatInterval& a, const Rat& c);

// Rational lower/upper bounds on sqrt(q), q >= 0, with error <= 2^-prec_bits.
Rat sqrt_lower(const Rat& q, unsigned prec_bits);
Rat sqrt_upper(const Rat& q, unsigned prec_bits);

// [sqrt(max(lo,0)) etc.]; requires hi >= 0.
RatInterval rsqrt(const RatInterval& x, unsigned prec_bits);

} // namespace geolab::detail
