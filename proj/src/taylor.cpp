#include "geolab/analysis/taylor.hpp"

#include <cmath>

namespace geolab::analysis {

namespace {

bool exactly_zero(const Interval& v) { return v.lo == 0.0 && v.hi == 0.0; }

struct Builder {
    Rat center;
    Interval dom_offset; // domain - center
    int degree;

    using Coeffs = std::vector<Interval>;

    Coeffs make(std::initializer_list<Interval> init) const {
        Coeffs c(degree + 1, Interval(0.0, 0.0));
        int i = 0;
        for (const Interval& v : init) {
            if (i > degree) {
                fold(c, v, i);
                ++i;
                continue;
            }
            c[i++] = v;
        }
        return c;
    }

    Interval offset_pow(int k) const { return ipow_int(dom_offset, k); }

    // fold a term a*(x-c)^k with k > degree into the top coefficient
    void fold(Coeffs& c, const Interval& a, int k) const {
        if (exactly_zero(a)) return;
        c[degree] = iadd(c[degree], imul(a, offset_pow(k - degree)));
    }

    Coeffs add(const Coeffs& a, const Coeffs& b) const {
        Coeffs r(degree + 1);
        for (int i = 0; i <= degree; ++i) r[i] = iadd(a[i], b[i]);
        return r;
    }

    Coeffs sub(const Coeffs& a, const Coeffs& b) const {
        Coeffs r(degree + 1);
        for (int i = 0; i <= degree; ++i) r[i] = isub(a[i], b[i]);
        return r;
    }

    Coeffs neg(const Coeffs& a) const {
        Coeffs r(degree + 1);
        for (int i = 0; i <= degree; ++i) r[i] = ineg(a[i]);
        return r;
    }

    Coeffs scale(const Coeffs& a, const Interval& s) const {
        Coeffs r(degree + 1);
        for (int i = 0; i <= degree; ++i)
            r[i] = exactly_zero(a[i]) ? Interval(0.0, 0.0) : imul(a[i], s);
        return r;
    }

    Coeffs mul(const Coeffs& a, const Coeffs& b) const {
        Coeffs r(degree + 1, Interval(0.0, 0.0));
        for (int i = 0; i <= degree; ++i) {
            if (exactly_zero(a[i])) continue;
            for (int j = 0; j <= degree; ++j) {
                if (exactly_zero(b[j])) continue;
                Interval term = imul(a[i], b[j]);
                if (i + j <= degree)
                    r[i + j] = iadd(r[i + j], term);
                else
                    fold(r, term, i + j);
            }
        }
        return r;
    }

    Interval range(const Coeffs& a) const {
        // Horner over the domain offset
        Interval acc(0.0, 0.0);
        for (int i = degree; i >= 0; --i) acc = iadd(imul(acc, dom_offset), a[i]);
        return acc;
    }

    // strip the constant term exactly (for series arguments)
    Coeffs hatted(const Coeffs& a) const {
        Coeffs r = a;
        r[0] = Interval(0.0, 0.0);
        return r;
    }

    Coeffs inverse(const Coeffs& w) const {
        Interval w0 = w[0];
        if (w0.contains_zero())
            throw Error(ErrorKind::DenominatorMayVanish,
                        "denominator enclosure contains zero at the expansion point");
        Interval range_w = range(w);
        if (range_w.contains_zero())
            throw Error(ErrorKind::DenominatorMayVanish,
                        "denominator range contains zero on the domain");
        // 1/w = (1/w0) * 1/(1+s), s = (w - w0)/w0
        Coeffs s = scale(hatted(w), idiv(Interval(1.0, 1.0), w0));
        Interval s_range = range(s);
        Interval one_plus = iadd(Interval(1.0, 1.0), s_range);
        if (one_plus.contains_zero())
            throw Error(ErrorKind::DenominatorMayVanish,
                        "denominator series is not contractive on the domain");
        // sum_{k<=degree} (-s)^k + remainder (-s)^{degree+1} / (1 + s)
        Coeffs acc = make({Interval(1.0, 1.0)});
        Coeffs minus_s = neg(s);
        Coeffs power = make({Interval(1.0, 1.0)});
        for (int k = 1; k <= degree; ++k) {
            power = mul(power, minus_s);
            acc = add(acc, power);
        }
        Interval rem = idiv(ipow_int(ineg(s_range), degree + 1), one_plus);
        acc[0] = iadd(acc[0], rem);
        return scale(acc, idiv(Interval(1.0, 1.0), w0));
    }

    // f(g) via the Taylor series of f at g0 with a Lagrange bound of
    // order degree+1 evaluated on the range of g
    Coeffs compose(NodeKind fn, const Coeffs& g) const {
        Interval g0 = g[0];
        Interval g_range = range(g);
        std::vector<Interval> taylor(degree + 2); // f^(k)(g0)/k!, k <= degree+1 is the bound
        switch (fn) {
            case NodeKind::Sin:
            case NodeKind::Cos: {
                Interval s0 = isin(g0), c0 = icos(g0);
                double fact = 1.0;
                for (int k = 0; k <= degree; ++k) {
                    if (k > 0) fact *= k;
                    int phase = (fn == NodeKind::Sin ? k : k + 1) % 4;
                    Interval deriv = phase == 0   ? s0
                                     : phase == 1 ? c0
                                     : phase == 2 ? ineg(s0)
                                                  : ineg(c0);
                    taylor[k] = idiv(deriv, Interval::point(fact));
                }
                fact *= degree + 1;
                taylor[degree + 1] =
                    idiv(Interval(-1.0, 1.0), Interval::point(fact));
                break;
            }
            case NodeKind::Exp: {
                Interval e0 = iexp(g0);
                double fact = 1.0;
                for (int k = 0; k <= degree; ++k) {
                    if (k > 0) fact *= k;
                    taylor[k] = idiv(e0, Interval::point(fact));
                }
                fact *= degree + 1;
                taylor[degree + 1] = idiv(iexp(g_range), Interval::point(fact));
                break;
            }
            case NodeKind::Ln: {
                if (g0.lo <= 0.0)
                    throw Error(ErrorKind::DomainViolation,
                                "ln argument not positive at the expansion point");
                if (g_range.lo <= 0.0)
                    throw Error(ErrorKind::DomainViolation,
                                "ln argument range touches zero on the domain");
                taylor[0] = iln(g0);
                for (int k = 1; k <= degree; ++k) {
                    // (-1)^(k-1) / (k * g0^k)
                    Interval denom = imul(Interval::point(double(k)), ipow_int(g0, k));
                    Interval term = idiv(Interval(1.0, 1.0), denom);
                    taylor[k] = (k % 2 == 0) ? ineg(term) : term;
                }
                Interval denom =
                    imul(Interval::point(double(degree + 1)), ipow_int(g_range, degree + 1));
                Interval term = idiv(Interval(1.0, 1.0), denom);
                taylor[degree + 1] = Interval::hull(term, ineg(term));
                break;
            }
            default:
                throw Error(ErrorKind::UnsupportedNode, "not a series-supported function");
        }
        Coeffs ghat = hatted(g);
        Coeffs acc = make({taylor[0]});
        Coeffs power = make({Interval(1.0, 1.0)});
        for (int k = 1; k <= degree; ++k) {
            power = mul(power, ghat);
            if (!exactly_zero(taylor[k])) acc = add(acc, scale(power, taylor[k]));
        }
        power = mul(power, ghat);
        if (!exactly_zero(taylor[degree + 1])) acc = add(acc, scale(power, taylor[degree + 1]));
        return acc;
    }

    Coeffs build(const ExprPtr& e) const {
        switch (e->kind) {
            case NodeKind::Var: {
                if (degree == 0) return make({iadd(Interval::from_rat(center), dom_offset)});
                return make({Interval::from_rat(center), Interval(1.0, 1.0)});
            }
            case NodeKind::Lit: return make({Interval::from_rat(e->lit)});
            case NodeKind::Neg: return neg(build(e->a));
            case NodeKind::Add: return add(build(e->a), build(e->b));
            case NodeKind::Sub: return sub(build(e->a), build(e->b));
            case NodeKind::Mul: return mul(build(e->a), build(e->b));
            case NodeKind::Div: return mul(build(e->a), inverse(build(e->b)));
            case NodeKind::Pow: {
                Coeffs base = build(e->a);
                Coeffs acc = base;
                for (long i = 1; i < e->power; ++i) acc = mul(acc, base);
                return acc;
            }
            case NodeKind::Sin:
            case NodeKind::Cos:
            case NodeKind::Exp:
            case NodeKind::Ln:
                return compose(e->kind, build(e->a));
            case NodeKind::Abs:
            case NodeKind::Sqrt:
                throw Error(ErrorKind::UnsupportedNode,
                            "abs/sqrt are not Taylor-model supported");
        }
        throw Error(ErrorKind::BadArgument, "unreachable expression kind");
    }
};

} // namespace

int PolyEnclosure::leading_zeros() const {
    int n = 0;
    for (const Interval& c : coeffs) {
        if (!exactly_zero(c)) break;
        ++n;
    }
    return n;
}

Interval PolyEnclosure::eval(const Interval& x) const {
    Interval t = isub(x, Interval::from_rat(center));
    Interval acc(0.0, 0.0);
    for (int i = degree(); i >= 0; --i) acc = iadd(imul(acc, t), coeffs[i]);
    return acc;
}

PolyEnclosure poly_enclosure(const ExprPtr& e, const Rat& center, int degree,
                             const Interval& domain) {
    if (degree < 0) throw Error(ErrorKind::BadArgument, "degree must be nonnegative");
    Interval c = Interval::from_rat(center);
    if (domain.lo > c.lo || domain.hi < c.hi)
        throw Error(ErrorKind::BadArgument, "expansion point must lie inside the domain");
    Builder b{center, isub(domain, c), degree};
    PolyEnclosure out;
    out.center = center;
    out.domain = domain;
    out.coeffs = b.build(e);
    return out;
}

TaylorModel taylor_model(const ExprPtr& e, const Rat& point, int degree,
                         const Interval& domain) {
    PolyEnclosure pe = poly_enclosure(e, point, degree + 2, domain);
    TaylorModel tm;
    tm.point = point;
    tm.degree = degree;
    tm.domain = domain;
    tm.coefficients.assign(pe.coeffs.begin(), pe.coeffs.begin() + degree + 1);
    Interval t = isub(domain, Interval::from_rat(point));
    Interval rem(0.0, 0.0);
    for (int k = degree + 1; k <= degree + 2; ++k)
        rem = iadd(rem, imul(pe.coeffs[k], ipow_int(t, k)));
    tm.remainder = rem;
    return tm;
}

} // namespace geolab::analysis
