#include "geolab/detail/rat_interval.hpp"

#include <algorithm>

namespace geolab::detail {

RatInterval radd(const RatInterval& a, const RatInterval& b) {
    return RatInterval(a.lo + b.lo, a.hi + b.hi);
}

RatInterval rsub(const RatInterval& a, const RatInterval& b) {
    return RatInterval(a.lo - b.hi, a.hi - b.lo);
}

RatInterval rmul(const RatInterval& a, const RatInterval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return RatInterval(std::min(std::min(p1, p2), std::min(p3, p4)),
                       std::max(std::max(p1, p2), std::max(p3, p4)));
}

RatInterval rscale(const RatInterval& a, const Rat& c) {
    if (c >= 0) return RatInterval(a.lo * c, a.hi * c);
    return RatInterval(a.hi * c, a.lo * c);
}

Rat sqrt_lower(const Rat& q, unsigned prec_bits) {
    if (q <= 0) return Rat(0);
    // sqrt(n/d) = sqrt(n*d)/d; floor(sqrt(n*d*4^p))/(d*2^p) <= sqrt(n/d)
    Int nd = q.get_num() * q.get_den();
    Int scaled = nd << (2 * prec_bits);
    Int root = isqrt_floor(scaled);
    Rat r(root, q.get_den() * (Int(1) << prec_bits));
    r.canonicalize();
    return r;
}

Rat sqrt_upper(const Rat& q, unsigned prec_bits) {
    if (q <= 0) return Rat(0);
    Int nd = q.get_num() * q.get_den();
    Int scaled = nd << (2 * prec_bits);
    Int root = isqrt_floor(scaled) + 1;
    Rat r(root, q.get_den() * (Int(1) << prec_bits));
    r.canonicalize();
    return r;
}

RatInterval rsqrt(const RatInterval& x, unsigned prec_bits) {
    Rat lo = x.lo > 0 ? sqrt_lower(x.lo, prec_bits) : Rat(0);
    Rat hi = x.hi > 0 ? sqrt_upper(x.hi, prec_bits) : Rat(0);
    return RatInterval(lo, hi);
}

} // namespace geolab::detail
