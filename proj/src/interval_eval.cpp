#include "geolab/analysis/interval_eval.hpp"

#include <cmath>
#include <limits>

namespace geolab::analysis {

namespace {

constexpr double kTwoPi = 6.283185307179586;
const double kInf = std::numeric_limits<double>::infinity();

IntervalEval combine2(const IntervalEval& a, const IntervalEval& b, Interval box) {
    IntervalEval r;
    r.box = box;
    r.fully_defined = a.fully_defined && b.fully_defined;
    r.undefined_everywhere = a.undefined_everywhere || b.undefined_everywhere;
    r.saturated = a.saturated || b.saturated;
    return r;
}

} // namespace

IntervalEval eval_interval_ext(const ExprPtr& e, const Interval& x) {
    switch (e->kind) {
        case NodeKind::Var: return {x, true, false, false};
        case NodeKind::Lit: return {Interval::from_rat(e->lit), true, false, false};
        case NodeKind::Neg: {
            IntervalEval a = eval_interval_ext(e->a, x);
            a.box = ineg(a.box);
            return a;
        }
        case NodeKind::Pow: {
            IntervalEval a = eval_interval_ext(e->a, x);
            a.box = ipow_int(a.box, e->power);
            return a;
        }
        case NodeKind::Sin:
        case NodeKind::Cos: {
            IntervalEval a = eval_interval_ext(e->a, x);
            IntervalEval r = a;
            r.box = e->kind == NodeKind::Sin ? isin(a.box) : icos(a.box);
            if (!a.box.finite() || a.box.width() >= kTwoPi) r.saturated = true;
            return r;
        }
        case NodeKind::Exp: {
            IntervalEval a = eval_interval_ext(e->a, x);
            a.box = iexp(a.box);
            return a;
        }
        case NodeKind::Abs: {
            IntervalEval a = eval_interval_ext(e->a, x);
            a.box = iabs(a.box);
            return a;
        }
        case NodeKind::Ln: {
            IntervalEval a = eval_interval_ext(e->a, x);
            IntervalEval r = a;
            if (a.undefined_everywhere) return r;
            if (a.box.hi <= 0.0) {
                // every defined value of the argument is nonpositive
                r.undefined_everywhere = true;
                r.fully_defined = false;
                r.box = Interval(0.0, 0.0);
                return r;
            }
            if (a.box.lo <= 0.0) {
                r.fully_defined = false;
                double hi = std::isfinite(a.box.hi)
                                ? iln(Interval(a.box.hi, a.box.hi)).hi
                                : kInf;
                r.box = Interval(-kInf, hi);
                return r;
            }
            r.box = iln(a.box);
            return r;
        }
        case NodeKind::Sqrt: {
            IntervalEval a = eval_interval_ext(e->a, x);
            IntervalEval r = a;
            if (a.undefined_everywhere) return r;
            if (a.box.hi < 0.0) {
                r.undefined_everywhere = true;
                r.fully_defined = false;
                r.box = Interval(0.0, 0.0);
                return r;
            }
            if (a.box.lo < 0.0) r.fully_defined = false;
            r.box = isqrt(Interval(std::max(a.box.lo, 0.0), std::max(a.box.hi, 0.0)));
            return r;
        }
        case NodeKind::Add: {
            IntervalEval a = eval_interval_ext(e->a, x);
            IntervalEval b = eval_interval_ext(e->b, x);
            return combine2(a, b, iadd(a.box, b.box));
        }
        case NodeKind::Sub: {
            IntervalEval a = eval_interval_ext(e->a, x);
            IntervalEval b = eval_interval_ext(e->b, x);
            return combine2(a, b, isub(a.box, b.box));
        }
        case NodeKind::Mul: {
            IntervalEval a = eval_interval_ext(e->a, x);
            IntervalEval b = eval_interval_ext(e->b, x);
            return combine2(a, b, imul(a.box, b.box));
        }
        case NodeKind::Div: {
            IntervalEval a = eval_interval_ext(e->a, x);
            IntervalEval b = eval_interval_ext(e->b, x);
            IntervalEval r = combine2(a, b, Interval(0.0, 0.0));
            if (r.undefined_everywhere) return r;
            if (b.box.lo == 0.0 && b.box.hi == 0.0) {
                // the denominator is zero wherever it is defined
                r.undefined_everywhere = true;
                r.fully_defined = false;
                return r;
            }
            if (b.box.contains_zero()) {
                r.fully_defined = false;
                r.box = Interval::entire();
                return r;
            }
            r.box = idiv(a.box, b.box);
            return r;
        }
    }
    throw Error(ErrorKind::BadArgument, "unreachable expression kind");
}

Interval eval_interval(const ExprPtr& e, const Interval& x) {
    IntervalEval r = eval_interval_ext(e, x);
    if (r.undefined_everywhere)
        throw Error(ErrorKind::DomainViolation, "expression undefined on the whole interval");
    return r.box;
}

} // namespace geolab::analysis
