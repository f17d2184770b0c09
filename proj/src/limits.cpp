#include "geolab/analysis/limits.hpp"

#include "geolab/analysis/interval_eval.hpp"
#include "geolab/analysis/taylor.hpp"

#include <cmath>
#include <sstream>

namespace geolab::analysis {

std::optional<LimitPoint> limit_point_from_string(const std::string& s) {
    if (s == "0") return LimitPoint::Zero;
    if (s == "0+") return LimitPoint::ZeroPlus;
    if (s == "0-") return LimitPoint::ZeroMinus;
    if (s == "inf" || s == "+inf") return LimitPoint::PlusInf;
    if (s == "-inf") return LimitPoint::MinusInf;
    return std::nullopt;
}

const char* limit_point_name(LimitPoint p) {
    switch (p) {
        case LimitPoint::ZeroPlus: return "0+";
        case LimitPoint::ZeroMinus: return "0-";
        case LimitPoint::Zero: return "0";
        case LimitPoint::PlusInf: return "inf";
        case LimitPoint::MinusInf: return "-inf";
    }
    return "?";
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

constexpr double kWidthGoal = 1e-6;
constexpr int kMaxHalvings = 60;
constexpr int kPolyDegree = 8;

// unique rational p/q with q <= 100 inside the enclosure, if any
std::optional<Rat> snap_simple_rational(const Interval& e) {
    std::optional<Rat> found;
    for (long q = 1; q <= 100; ++q) {
        double lo = std::ceil(e.lo * double(q) - 1e-18);
        double hi = std::floor(e.hi * double(q) + 1e-18);
        for (double pd = lo; pd <= hi; pd += 1.0) {
            Rat cand(long(pd), q);
            cand.canonicalize();
            double v = rat_to_double(cand);
            if (v < e.lo || v > e.hi) continue;
            if (found && *found != cand) return std::nullopt; // not unique
            found = cand;
        }
    }
    return found;
}

struct Engine {
    bool positive_side; // approach 0 from above or below
    int depth = 0;

    LimitVerdict run(const ExprPtr& e);

    std::optional<LimitVerdict> rule_squeeze(const ExprPtr& e);
    std::optional<LimitVerdict> rule_taylor(const ExprPtr& e);
    std::optional<LimitVerdict> rule_oscillation(const ExprPtr& e);
    LimitVerdict rule_probes(const ExprPtr& e);
};

void flatten_product(const ExprPtr& e, std::vector<ExprPtr>& out) {
    if (e->kind == NodeKind::Mul) {
        flatten_product(e->a, out);
        flatten_product(e->b, out);
        return;
    }
    out.push_back(e);
}

bool is_zero_value(const LimitVerdict& v) {
    if (v.kind != LimitVerdict::Kind::Certified) return false;
    if (v.exact_value) return *v.exact_value == 0;
    return v.value == 0.0;
}

LimitVerdict Engine::run(const ExprPtr& e) {
    if (depth > 8) return LimitVerdict{};
    if (e->kind == NodeKind::Neg) {
        Engine inner{positive_side, depth + 1};
        LimitVerdict v = inner.run(e->a);
        if (v.kind == LimitVerdict::Kind::Certified ||
            v.kind == LimitVerdict::Kind::NumericEstimate) {
            v.value = -v.value;
            if (v.exact_value) v.exact_value = Rat(-*v.exact_value);
            v.certificate.push_back("negation of the inner limit");
        }
        return v;
    }
    if (auto v = rule_squeeze(e)) return *v;
    if (auto v = rule_taylor(e)) return *v;
    if (auto v = rule_oscillation(e)) return *v;
    return rule_probes(e);
}

// R1: u * v with v = sin/cos(anything) bounded by 1 and u -> 0
std::optional<LimitVerdict> Engine::rule_squeeze(const ExprPtr& e) {
    if (e->kind != NodeKind::Mul) return std::nullopt;
    std::vector<ExprPtr> factors;
    flatten_product(e, factors);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        NodeKind k = factors[i]->kind;
        if (k != NodeKind::Sin && k != NodeKind::Cos) continue;
        ExprPtr rest;
        for (std::size_t j = 0; j < factors.size(); ++j) {
            if (j == i) continue;
            rest = rest ? Expr::binary(NodeKind::Mul, rest, factors[j]) : factors[j];
        }
        if (!rest) rest = Expr::lit_rat(Rat(1));
        Engine inner{positive_side, depth + 1};
        LimitVerdict u = inner.run(rest);
        if (!is_zero_value(u)) continue;
        LimitVerdict v;
        v.kind = LimitVerdict::Kind::Certified;
        v.value = 0.0;
        v.exact_value = Rat(0);
        v.headline = std::string("squeeze: |") + (k == NodeKind::Sin ? "sin" : "cos") +
                     "| <= 1";
        v.certificate.push_back("R1: |" + print_expr(factors[i]) + "| <= 1 and " +
                                print_expr(rest) + " -> 0");
        for (const std::string& line : u.certificate) v.certificate.push_back("  " + line);
        return v;
    }
    return std::nullopt;
}

// R2: polynomial enclosures on shrinking one-sided domains; quotients
// divide out the common vanishing power first
std::optional<LimitVerdict> Engine::rule_taylor(const ExprPtr& e) {
    const Interval H(-0.25, 0.25);
    PolyEnclosure num, den;
    bool quotient = e->kind == NodeKind::Div;
    try {
        if (quotient) {
            num = poly_enclosure(e->a, Rat(0), kPolyDegree, H);
            den = poly_enclosure(e->b, Rat(0), kPolyDegree, H);
        } else {
            num = poly_enclosure(e, Rat(0), kPolyDegree, H);
            den.center = Rat(0);
            den.domain = H;
            den.coeffs.assign(kPolyDegree + 1, Interval(0.0, 0.0));
            den.coeffs[0] = Interval(1.0, 1.0);
        }
    } catch (const Error&) {
        return std::nullopt; // unsupported shape; later rules take over
    }
    int m = den.leading_zeros();
    if (m > num.leading_zeros()) return std::nullopt; // diverging quotient
    if (m > 0) {
        num.coeffs.erase(num.coeffs.begin(), num.coeffs.begin() + m);
        den.coeffs.erase(den.coeffs.begin(), den.coeffs.begin() + m);
    }
    double h = 0.25;
    for (int j = 0; j < kMaxHalvings; ++j) {
        h *= 0.5;
        Interval x = positive_side ? Interval(0.0, h) : Interval(-h, 0.0);
        Interval n = num.eval(x);
        Interval d = den.eval(x);
        if (d.contains_zero()) continue;
        Interval enclosure = idiv(n, d);
        if (enclosure.width() < kWidthGoal) {
            LimitVerdict v;
            v.kind = LimitVerdict::Kind::Certified;
            v.exact_value = snap_simple_rational(enclosure);
            v.value = v.exact_value ? rat_to_double(*v.exact_value) : enclosure.mid();
            v.headline = "Taylor enclosure";
            std::ostringstream line;
            line << "R2: ";
            if (m > 0) line << "divided out x^" << m << ", ";
            line << "enclosure " << enclosure.to_string() << " on " << x.to_string();
            v.certificate.push_back(line.str());
            return v;
        }
    }
    return std::nullopt;
}

// R4: sin/cos of c/x with rational c != 0 attains +1 and -1 in every
// neighborhood of 0; two concrete interval evaluations witness it
std::optional<LimitVerdict> Engine::rule_oscillation(const ExprPtr& e) {
    NodeKind k = e->kind;
    if (k != NodeKind::Sin && k != NodeKind::Cos) return std::nullopt;
    const ExprPtr& arg = e->a;
    if (arg->kind != NodeKind::Div) return std::nullopt;
    if (arg->a->kind != NodeKind::Lit || arg->a->lit == 0) return std::nullopt;
    if (arg->b->kind != NodeKind::Var) return std::nullopt;
    double c = rat_to_double(arg->a->lit);

    const double pi = 3.141592653589793;
    double big = 2.0e5 * pi;
    // pick argument values hitting the extrema, on the requested side
    double theta_hi = k == NodeKind::Sin ? pi / 2 + big : big;          // f = +1
    double theta_lo = k == NodeKind::Sin ? pi / 2 + big + pi : big + pi; // f = -1
    double want_sign = positive_side ? 1.0 : -1.0;
    auto sample = [&](double theta) {
        double t = c / theta;
        if (t * want_sign < 0) t = c / -theta;
        double lo = std::nextafter(t, -1e300), hi = std::nextafter(t, 1e300);
        return Interval(std::min(lo, hi), std::max(lo, hi));
    };
    Interval x_hi = sample(theta_hi);
    Interval x_lo = sample(theta_lo);
    Interval b_hi = eval_interval_ext(e, x_hi).box;
    Interval b_lo = eval_interval_ext(e, x_lo).box;
    if (b_hi.mid() < b_lo.mid()) {
        std::swap(b_hi, b_lo);
        std::swap(x_hi, x_lo);
    }
    if (!(b_hi.lo > 0.5 && b_lo.hi < -0.5)) return std::nullopt;
    LimitVerdict v;
    v.kind = LimitVerdict::Kind::NoLimitCertified;
    v.headline = "certified oscillation";
    v.reason = "the function attains values near +1 and -1 in every neighborhood";
    v.certificate.push_back("R4: argument " + print_expr(arg) +
                            " is monotone and unbounded on this side of 0");
    v.certificate.push_back("  witness " + x_hi.to_string() + " -> enclosure " +
                            b_hi.to_string());
    v.certificate.push_back("  witness " + x_lo.to_string() + " -> enclosure " +
                            b_lo.to_string());
    v.certificate.push_back("  the same pattern repeats at every smaller scale (argument "
                            "period sweep)");
    return v;
}

// R5: dyadic probes
LimitVerdict Engine::rule_probes(const ExprPtr& e) {
    LimitVerdict v;
    std::vector<std::optional<double>> vals;
    for (int k = 10; k <= 40; ++k) {
        double x = std::ldexp(positive_side ? 1.0 : -1.0, -k);
        vals.push_back(eval_point(e, x));
    }
    auto last = [&](int i) { return vals[vals.size() - 1 - i]; };
    bool all_undefined = true;
    for (int i = 0; i < 5; ++i)
        if (last(i)) all_undefined = false;
    if (all_undefined) {
        v.kind = LimitVerdict::Kind::Undefined;
        v.reason = "the function is undefined on the approach side";
        return v;
    }
    double lo = 1e308, hi = -1e308;
    bool usable = true;
    for (int i = 0; i < 5; ++i) {
        if (!last(i) || !std::isfinite(*last(i))) {
            usable = false;
            break;
        }
        lo = std::min(lo, *last(i));
        hi = std::max(hi, *last(i));
    }
    if (usable && hi - lo <= kWidthGoal) {
        v.kind = LimitVerdict::Kind::NumericEstimate;
        v.value = *last(0);
        v.headline = "probe sequence";
        for (const auto& val : vals)
            if (val) v.probes.push_back(*val);
        std::ostringstream line;
        line << "R5: dyadic probes x = 2^-k, k = 10..40; last five agree within "
             << fmt(hi - lo);
        v.certificate.push_back(line.str());
        return v;
    }
    v.kind = LimitVerdict::Kind::Inconclusive;
    v.reason = usable ? "probe sequence does not settle" : "probes leave the finite range";
    return v;
}

LimitVerdict combine_two_sided(const LimitVerdict& plus, const LimitVerdict& minus) {
    using K = LimitVerdict::Kind;
    if (plus.kind == K::NoLimitCertified) return plus;
    if (minus.kind == K::NoLimitCertified) return minus;
    if (plus.kind == K::Undefined || minus.kind == K::Undefined) {
        LimitVerdict v;
        v.kind = K::Undefined;
        v.reason = "one-sided approach leaves the domain";
        return v;
    }
    auto is_val = [](const LimitVerdict& v) {
        return v.kind == K::Certified || v.kind == K::NumericEstimate;
    };
    if (is_val(plus) && is_val(minus)) {
        bool both_certified = plus.kind == K::Certified && minus.kind == K::Certified;
        bool equal = plus.exact_value && minus.exact_value
                         ? *plus.exact_value == *minus.exact_value
                         : std::abs(plus.value - minus.value) <= 1e-6;
        if (!equal) {
            LimitVerdict v;
            if (both_certified) {
                v.kind = K::NoLimitCertified;
                v.headline = "one-sided limits differ";
                v.reason = "certified one-sided limits " + fmt(plus.value) + " and " +
                           fmt(minus.value) + " differ";
                v.certificate = plus.certificate;
                for (const std::string& line : minus.certificate)
                    v.certificate.push_back(line);
            } else {
                v.kind = K::Inconclusive;
                v.reason = "one-sided results disagree";
            }
            return v;
        }
        LimitVerdict v = plus;
        if (!both_certified) {
            v.kind = K::NumericEstimate;
            if (plus.kind == K::Certified) v.exact_value = plus.exact_value;
        }
        v.certificate.insert(v.certificate.begin(), "two-sided: both approaches agree");
        for (const std::string& line : minus.certificate) v.certificate.push_back(line);
        return v;
    }
    LimitVerdict v;
    v.kind = K::Inconclusive;
    v.reason = "a one-sided verdict is inconclusive";
    return v;
}

} // namespace

LimitVerdict certify_limit(const ExprPtr& e, LimitPoint at) {
    switch (at) {
        case LimitPoint::ZeroPlus: {
            Engine eng{true, 0};
            return eng.run(e);
        }
        case LimitPoint::ZeroMinus: {
            Engine eng{false, 0};
            return eng.run(e);
        }
        case LimitPoint::Zero: {
            Engine plus{true, 0}, minus{false, 0};
            return combine_two_sided(plus.run(e), minus.run(e));
        }
        case LimitPoint::PlusInf:
        case LimitPoint::MinusInf: {
            ExprPtr sub = substitute_reciprocal(e);
            Engine eng{at == LimitPoint::PlusInf, 0};
            LimitVerdict v = eng.run(sub);
            v.certificate.insert(v.certificate.begin(),
                                 "R3: substitute t = 1/x, take t -> 0" +
                                     std::string(at == LimitPoint::PlusInf ? "+" : "-"));
            return v;
        }
    }
    return LimitVerdict{};
}

std::string LimitVerdict::to_text() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Certified:
            os << "Certified: " << (exact_value ? rat_to_string(*exact_value) : fmt(value));
            if (!headline.empty()) os << " (" << headline << ")";
            break;
        case Kind::NoLimitCertified:
            os << "NoLimitCertified";
            if (!headline.empty()) os << " (" << headline << ")";
            if (!reason.empty()) os << ": " << reason;
            break;
        case Kind::NumericEstimate:
            os << "NumericEstimate: " << fmt(value) << " (uncertified)";
            break;
        case Kind::Undefined:
            os << "Undefined: " << reason;
            break;
        case Kind::Inconclusive:
            os << "Inconclusive";
            if (!reason.empty()) os << ": " << reason;
            break;
    }
    for (const std::string& line : certificate) os << "\n  " << line;
    return os.str();
}

} // namespace geolab::analysis
