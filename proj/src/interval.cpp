#include "geolab/interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cassert>
#include <limits>
#include <sstream>

namespace geolab {

namespace detail {

double next_up(double x) {
    if (x == std::numeric_limits<double>::infinity()) return x;
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

double next_down(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return x;
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

namespace {

// TwoSum residual; s must be a+b rounded to nearest.
inline bool sum_exact(double a, double b, double s) {
    if (!std::isfinite(s)) return false;
    double bp = s - a;
    double ap = s - bp;
    return (a - ap) + (b - bp) == 0.0;
}

inline bool prod_exact(double a, double b, double p) {
    if (!std::isfinite(p)) return false;
    // fma residual underflow can mask inexactness near the denormal range
    if (p != 0.0 && std::abs(p) < 4.0 * std::numeric_limits<double>::min()) return false;
    if (p == 0.0 && a != 0.0 && b != 0.0) return false;
    return std::fma(a, b, -p) == 0.0;
}

inline bool quot_exact(double a, double b, double q) {
    if (!std::isfinite(q) || !std::isfinite(a) || !std::isfinite(b)) return false;
    if (q != 0.0 && std::abs(q) < 4.0 * std::numeric_limits<double>::min()) return false;
    return std::fma(q, b, -a) == 0.0;
}

inline double overflow_down(double v) {
    // rounded to +inf from finite operands: the exact value is >= DBL_MAX
    return v == std::numeric_limits<double>::infinity() ? std::numeric_limits<double>::max() : v;
}

inline double overflow_up(double v) {
    return v == -std::numeric_limits<double>::infinity() ? -std::numeric_limits<double>::max() : v;
}

} // namespace

double add_down(double a, double b) {
    double s = a + b;
    if (std::isnan(s)) return -std::numeric_limits<double>::infinity();
    if (!std::isfinite(s) && std::isfinite(a) && std::isfinite(b)) return overflow_down(s);
    return sum_exact(a, b, s) ? s : next_down(s);
}

double add_up(double a, double b) {
    double s = a + b;
    if (std::isnan(s)) return std::numeric_limits<double>::infinity();
    if (!std::isfinite(s) && std::isfinite(a) && std::isfinite(b)) return overflow_up(s);
    return sum_exact(a, b, s) ? s : next_up(s);
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b) {
    double p = a * b;
    if (std::isnan(p)) return 0.0; // 0 * inf endpoint product
    if (!std::isfinite(p) && std::isfinite(a) && std::isfinite(b)) return overflow_down(p);
    return prod_exact(a, b, p) ? p : next_down(p);
}

double mul_up(double a, double b) {
    double p = a * b;
    if (std::isnan(p)) return 0.0;
    if (!std::isfinite(p) && std::isfinite(a) && std::isfinite(b)) return overflow_up(p);
    return prod_exact(a, b, p) ? p : next_up(p);
}

double div_down(double a, double b) {
    double q = a / b;
    if (std::isnan(q)) return -std::numeric_limits<double>::infinity();
    if (!std::isfinite(q) && std::isfinite(a) && std::isfinite(b)) return overflow_down(q);
    return quot_exact(a, b, q) ? q : next_down(q);
}

double div_up(double a, double b) {
    double q = a / b;
    if (std::isnan(q)) return std::numeric_limits<double>::infinity();
    if (!std::isfinite(q) && std::isfinite(a) && std::isfinite(b)) return overflow_up(q);
    return quot_exact(a, b, q) ? q : next_up(q);
}

} // namespace detail

using namespace detail;

Interval::Interval(double l, double h) : lo(l), hi(h) {
    if (std::isnan(l) || std::isnan(h) || l > h)
        throw Error(ErrorKind::BadArgument, "invalid interval endpoints");
}

Interval Interval::entire() {
    return Interval(-std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity());
}

Interval Interval::from_rat(const Rat& q) {
    mpfr_t t;
    mpfr_init2(t, 53);
    mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDD);
    double lo = mpfr_get_d(t, MPFR_RNDD);
    mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDU);
    double hi = mpfr_get_d(t, MPFR_RNDU);
    mpfr_clear(t);
    return Interval(lo, hi);
}

Interval Interval::hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

double Interval::mid() const {
    if (lo == hi) return lo;
    double m = 0.5 * (lo + hi);
    if (std::isfinite(m)) return m;
    return 0.5 * lo + 0.5 * hi;
}

std::string Interval::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << "[" << lo << ", " << hi << "]";
    return os.str();
}

Interval iadd(const Interval& x, const Interval& y) {
    return Interval(add_down(x.lo, y.lo), add_up(x.hi, y.hi));
}

Interval isub(const Interval& x, const Interval& y) {
    return Interval(sub_down(x.lo, y.hi), sub_up(x.hi, y.lo));
}

Interval ineg(const Interval& x) { return Interval(-x.hi, -x.lo); }

Interval imul(const Interval& x, const Interval& y) {
    if ((x.lo == 0.0 && x.hi == 0.0) || (y.lo == 0.0 && y.hi == 0.0)) return Interval(0.0, 0.0);
    double lo = std::min(std::min(mul_down(x.lo, y.lo), mul_down(x.lo, y.hi)),
                         std::min(mul_down(x.hi, y.lo), mul_down(x.hi, y.hi)));
    double hi = std::max(std::max(mul_up(x.lo, y.lo), mul_up(x.lo, y.hi)),
                         std::max(mul_up(x.hi, y.lo), mul_up(x.hi, y.hi)));
    return Interval(lo, hi);
}

Interval idiv(const Interval& x, const Interval& y) {
    if (y.contains_zero())
        throw Error(ErrorKind::DomainViolation, "interval division by interval containing zero");
    double lo = std::min(std::min(div_down(x.lo, y.lo), div_down(x.lo, y.hi)),
                         std::min(div_down(x.hi, y.lo), div_down(x.hi, y.hi)));
    double hi = std::max(std::max(div_up(x.lo, y.lo), div_up(x.lo, y.hi)),
                         std::max(div_up(x.hi, y.lo), div_up(x.hi, y.hi)));
    return Interval(lo, hi);
}

Interval isqrt(const Interval& x) {
    if (x.hi < 0.0) throw Error(ErrorKind::DomainViolation, "sqrt of negative interval");
    double lo = 0.0;
    if (x.lo > 0.0) {
        double s = std::sqrt(x.lo);
        lo = std::fma(s, s, -x.lo) == 0.0 ? s : next_down(s);
        if (lo < 0.0) lo = 0.0;
    }
    double hi;
    if (std::isfinite(x.hi)) {
        double s = std::sqrt(x.hi);
        hi = std::fma(s, s, -x.hi) == 0.0 ? s : next_up(s);
    } else {
        hi = x.hi;
    }
    return Interval(lo, hi);
}

namespace {

enum class MpfrFn { Sin, Cos, Exp, Ln };

double mpfr_eval(double x, MpfrFn fn, mpfr_rnd_t rnd) {
    mpfr_t t;
    mpfr_init2(t, 53);
    mpfr_set_d(t, x, MPFR_RNDN); // exact, doubles are representable
    switch (fn) {
        case MpfrFn::Sin: mpfr_sin(t, t, rnd); break;
        case MpfrFn::Cos: mpfr_cos(t, t, rnd); break;
        case MpfrFn::Exp: mpfr_exp(t, t, rnd); break;
        case MpfrFn::Ln: mpfr_log(t, t, rnd); break;
    }
    double r = mpfr_get_d(t, rnd);
    mpfr_clear(t);
    return r;
}

// Integer k with phase*pi/2 + k*pi inside [lo, hi], outward-rounded so the
// result is a superset of the true index range. Returns false when the
// indices do not fit a long (astronomically large arguments).
bool critical_k_range(double lo, double hi, double phase_num, long& k_min, long& k_max) {
    mpfr_t pi, ph, b;
    mpfr_init2(pi, 128);
    mpfr_init2(ph, 128);
    mpfr_init2(b, 128);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_mul_d(ph, pi, phase_num * 0.5, MPFR_RNDN);
    bool ok = true;
    // k_min = ceil((lo - phase)/pi), bound computed rounded down
    mpfr_set_d(b, lo, MPFR_RNDD);
    mpfr_sub(b, b, ph, MPFR_RNDD);
    mpfr_div(b, b, pi, MPFR_RNDD);
    mpfr_ceil(b, b);
    ok = ok && mpfr_fits_slong_p(b, MPFR_RNDN);
    k_min = ok ? mpfr_get_si(b, MPFR_RNDN) : 0;
    // k_max = floor((hi - phase)/pi), bound computed rounded up
    mpfr_set_d(b, hi, MPFR_RNDU);
    mpfr_sub(b, b, ph, MPFR_RNDU);
    mpfr_div(b, b, pi, MPFR_RNDU);
    mpfr_floor(b, b);
    ok = ok && mpfr_fits_slong_p(b, MPFR_RNDN);
    k_max = ok ? mpfr_get_si(b, MPFR_RNDN) : 0;
    mpfr_clears(pi, ph, b, (mpfr_ptr) nullptr);
    return ok;
}

bool range_has_even(long a, long b) {
    if (a > b) return false;
    return (b - a) >= 1 || a % 2 == 0;
}

bool range_has_odd(long a, long b) {
    if (a > b) return false;
    return (b - a) >= 1 || a % 2 != 0;
}

Interval periodic_range(const Interval& x, MpfrFn fn) {
    if (!x.finite() || x.width() >= 7.0) return Interval(-1.0, 1.0);
    double flo = std::min(mpfr_eval(x.lo, fn, MPFR_RNDD), mpfr_eval(x.hi, fn, MPFR_RNDD));
    double fhi = std::max(mpfr_eval(x.lo, fn, MPFR_RNDU), mpfr_eval(x.hi, fn, MPFR_RNDU));
    // critical points at phase + k*pi; the function value there is +1 for
    // even k, -1 for odd k (sin: phase pi/2, cos: phase 0)
    long ka, kb;
    double phase = fn == MpfrFn::Sin ? 1.0 : 0.0;
    if (!critical_k_range(x.lo, x.hi, phase, ka, kb)) return Interval(-1.0, 1.0);
    if (range_has_even(ka, kb)) fhi = 1.0;
    if (range_has_odd(ka, kb)) flo = -1.0;
    flo = std::max(flo, -1.0);
    fhi = std::min(fhi, 1.0);
    return Interval(flo, fhi);
}

} // namespace

Interval isin(const Interval& x) { return periodic_range(x, MpfrFn::Sin); }

Interval icos(const Interval& x) { return periodic_range(x, MpfrFn::Cos); }

Interval iexp(const Interval& x) {
    double lo = std::isfinite(x.lo) ? mpfr_eval(x.lo, MpfrFn::Exp, MPFR_RNDD) : 0.0;
    double hi = std::isfinite(x.hi) ? mpfr_eval(x.hi, MpfrFn::Exp, MPFR_RNDU)
                                    : std::numeric_limits<double>::infinity();
    if (lo < 0.0) lo = 0.0;
    return Interval(lo, hi);
}

Interval iln(const Interval& x) {
    if (x.lo <= 0.0) throw Error(ErrorKind::DomainViolation, "ln of interval touching <= 0");
    double lo = mpfr_eval(x.lo, MpfrFn::Ln, MPFR_RNDD);
    double hi = std::isfinite(x.hi) ? mpfr_eval(x.hi, MpfrFn::Ln, MPFR_RNDU)
                                    : std::numeric_limits<double>::infinity();
    return Interval(lo, hi);
}

Interval iabs(const Interval& x) {
    if (x.lo >= 0.0) return x;
    if (x.hi <= 0.0) return ineg(x);
    return Interval(0.0, std::max(-x.lo, x.hi));
}

Interval ipow_int(const Interval& x, long n) {
    if (n < 0) throw Error(ErrorKind::BadArgument, "ipow_int expects n >= 0");
    if (n == 0) return Interval(1.0, 1.0);
    if (n % 2 == 0) {
        Interval a = iabs(x);
        Interval r(1.0, 1.0);
        for (long i = 0; i < n; ++i) r = imul(r, a);
        if (r.lo < 0.0) r.lo = 0.0;
        return r;
    }
    Interval r = x;
    for (long i = 1; i < n; ++i) r = imul(r, x);
    return r;
}

} // namespace geolab
