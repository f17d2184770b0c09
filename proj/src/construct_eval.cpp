#include "geolab/construct/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

namespace geolab::construct {

namespace {

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

// references used by a step definition
std::vector<std::string> refs_of(const StepDef& def) {
    std::vector<std::string> out;
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, CircleCR>) {
                out.push_back(d.center);
                if (d.radius_ref) out.push_back(*d.radius_ref);
            } else if constexpr (std::is_same_v<T, CircleThrough>) {
                out = {d.center, d.through};
            } else if constexpr (std::is_same_v<T, Intersect>) {
                out = {d.c1, d.c2};
            } else if constexpr (std::is_same_v<T, Glider>) {
                out = {d.circle};
            } else if constexpr (std::is_same_v<T, SegmentDef>) {
                out = {d.p, d.q};
            } else if constexpr (std::is_same_v<T, PolygonDef>) {
                out = d.vertices;
            } else if constexpr (std::is_same_v<T, CircumcircleDef>) {
                out = {d.p1, d.p2, d.p3};
            } else if constexpr (std::is_same_v<T, MidpointDef>) {
                out = {d.p, d.q};
            }
        },
        def);
    return out;
}

template <class S>
struct Evaluator {
    ScalarMode mode;
    TypedTrace<S> trace;
    std::map<std::string, std::size_t> index;

    const TraceObject<S>& obj(const std::string& name) const {
        return trace.objects[index.at(name)];
    }

    // free-object literal entering the pipeline; DisplayRounded snaps here
    S input(const Rat& lit) const {
        if (mode.kind == ScalarModeKind::DisplayRounded)
            return scalar_ops<S>::from_rat(round_display_rat(lit, mode.decimals).to_rat());
        return scalar_ops<S>::from_rat(lit);
    }

    geom::Point<S> point(const std::string& name) const {
        return std::get<geom::Point<S>>(obj(name).value);
    }
    geom::Circle<S> circle(const std::string& name) const {
        return std::get<geom::Circle<S>>(obj(name).value);
    }
    S num(const std::string& name) const { return std::get<S>(obj(name).value); }

    ObjectValue<S> eval_def(const StepDef& def) {
        return std::visit([&](const auto& d) -> ObjectValue<S> { return eval_one(d); }, def);
    }

    ObjectValue<S> eval_one(const FreePoint& d) {
        return geom::Point<S>{input(d.x), input(d.y)};
    }
    ObjectValue<S> eval_one(const FreeNum& d) { return input(d.value); }
    ObjectValue<S> eval_one(const CircleCR& d) {
        S r = d.radius_ref ? num(*d.radius_ref) : input(d.radius);
        if (scalar_ops<S>::sign(r) <= 0)
            throw Error(ErrorKind::DegenerateConfig, "circle radius must be positive");
        return geom::Circle<S>{point(d.center), r * r};
    }
    ObjectValue<S> eval_one(const CircleThrough& d) {
        geom::Point<S> c = point(d.center);
        S r2 = geom::dist_sq(c, point(d.through));
        if (scalar_ops<S>::sign(r2) == 0)
            throw Error(ErrorKind::DegenerateConfig, "circle through its own center");
        return geom::Circle<S>{c, r2};
    }
    ObjectValue<S> eval_one(const Intersect& d) {
        auto pts = geom::circle_circle_intersections(circle(d.c1), circle(d.c2));
        if (pts.empty())
            throw Error(ErrorKind::EmptyIntersection, "circles do not intersect");
        std::size_t want = d.branch == Branch::First ? 0 : 1;
        if (want >= pts.size())
            throw Error(ErrorKind::EmptyIntersection, "tangent circles have no second branch");
        return pts[want];
    }
    ObjectValue<S> eval_one(const Glider& d) {
        return geom::point_on_circle(circle(d.circle), d.param);
    }
    ObjectValue<S> eval_one(const SegmentDef& d) {
        geom::Point<S> p = point(d.p), q = point(d.q);
        return SegmentV<S>{p, q, scalar_ops<S>::sqrt(geom::dist_sq(p, q))};
    }
    ObjectValue<S> eval_one(const PolygonDef& d) {
        PolygonV<S> v;
        for (const auto& n : d.vertices) v.vertices.push_back(point(n));
        v.area = geom::polygon_area(geom::Polygon<S>{v.vertices});
        return v;
    }
    ObjectValue<S> eval_one(const CircumcircleDef& d) {
        return geom::circumcircle(point(d.p1), point(d.p2), point(d.p3));
    }
    ObjectValue<S> eval_one(const MidpointDef& d) {
        return geom::midpoint(point(d.p), point(d.q));
    }

    void run(const ConstructionProgram& program) {
        for (const Step& step : program.steps) {
            TraceObject<S> o;
            o.name = step.name;
            o.kind = step.kind;
            o.free_object = step.is_free();
            std::string poisoned_by;
            for (const std::string& r : refs_of(step.def)) {
                if (!obj(r).ok()) {
                    poisoned_by = r;
                    break;
                }
            }
            if (!poisoned_by.empty()) {
                o.status = Status::Poisoned;
                o.detail = poisoned_by;
            } else {
                try {
                    o.value = eval_def(step.def);
                } catch (const Error& e) {
                    o.status = Status::Failed;
                    o.detail = error_kind_name(e.kind());
                }
            }
            index[step.name] = trace.objects.size();
            trace.objects.push_back(std::move(o));
        }
    }
};

template <class S>
bool typed_all_ok(const TypedTrace<S>& t) {
    return std::all_of(t.objects.begin(), t.objects.end(),
                       [](const auto& o) { return o.ok(); });
}

template <class S>
bool typed_internal_limit(const TypedTrace<S>& t) {
    for (const auto& o : t.objects)
        if (o.status == Status::Failed &&
            (o.detail == "TowerDepthExceeded" || o.detail == "PrecisionCapExceeded"))
            return true;
    return false;
}

} // namespace

bool EvalTrace::all_ok() const {
    return std::visit([](const auto& t) { return typed_all_ok(t); }, typed);
}

bool EvalTrace::has_internal_limit_failure() const {
    return std::visit([](const auto& t) { return typed_internal_limit(t); }, typed);
}

EvalTrace evaluate(const ConstructionProgram& program, ScalarMode mode) {
    EvalTrace out;
    out.mode = mode;
    if (mode.kind == ScalarModeKind::Exact) {
        Evaluator<ExactScalar> ev{mode, {}, {}};
        ev.run(program);
        out.typed = std::move(ev.trace);
    } else {
        Evaluator<double> ev{mode, {}, {}};
        ev.run(program);
        out.typed = std::move(ev.trace);
    }
    return out;
}

namespace {

// ---- protocol formatting ----

struct ScalarText {
    std::string exact; // empty outside exact mode
    std::string shown;
};

template <class S>
ScalarText scalar_text(const S& v, const ScalarMode& mode) {
    if constexpr (std::is_same_v<S, ExactScalar>) {
        return {v.to_string(), round_display(v.to_double(), mode.decimals).to_string()};
    } else {
        if (mode.kind == ScalarModeKind::DisplayRounded)
            return {"", round_display(v, mode.decimals).to_string()};
        return {"", fmt_double(v)};
    }
}

std::string join_pair(const ScalarText& x, const ScalarText& y, bool exact_part) {
    if (exact_part) return "(" + x.exact + ", " + y.exact + ")";
    return "(" + x.shown + ", " + y.shown + ")";
}

std::string circle_equation(const std::string& cx, const std::string& cy,
                            const std::string& r2, bool cx_neg, bool cy_neg) {
    auto term = [](char var, const std::string& mag, bool neg) {
        std::string s(1, var);
        if (mag == "0") return "" + s + "^2";
        return "(" + s + (neg ? " + " : " - ") + mag + ")^2";
    };
    return term('x', cx, cx_neg) + " + " + term('y', cy, cy_neg) + " = " + r2;
}

template <class S>
std::string magnitude_str(const S& v, bool& neg, const ScalarMode& mode, bool exact_part) {
    ScalarText t = scalar_text(v, mode);
    std::string s = exact_part ? t.exact : t.shown;
    neg = !s.empty() && s[0] == '-';
    if (neg) s = s.substr(1);
    return s;
}

template <class S>
std::string object_line(const TraceObject<S>& o, const ScalarMode& mode) {
    if (o.status == Status::Failed) return o.name + ": undefined (" + o.detail + ")";
    if (o.status == Status::Poisoned)
        return o.name + ": undefined (poisoned by " + o.detail + ")";
    const bool exact_mode = std::is_same_v<S, ExactScalar>;
    auto render = [&](bool exact_part) -> std::string {
        return std::visit(
            [&](const auto& v) -> std::string {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, std::monostate>) {
                    return o.name + ": undefined";
                } else if constexpr (std::is_same_v<T, geom::Point<S>>) {
                    return o.name + " = " +
                           join_pair(scalar_text(v.x, mode), scalar_text(v.y, mode), exact_part);
                } else if constexpr (std::is_same_v<T, geom::Circle<S>>) {
                    bool nx = false, ny = false;
                    std::string cx = magnitude_str(v.center.x, nx, mode, exact_part);
                    std::string cy = magnitude_str(v.center.y, ny, mode, exact_part);
                    ScalarText r2 = scalar_text(v.radius_sq, mode);
                    return o.name + ": " +
                           circle_equation(cx, cy, exact_part ? r2.exact : r2.shown, nx, ny);
                } else if constexpr (std::is_same_v<T, SegmentV<S>>) {
                    ScalarText len = scalar_text(v.length, mode);
                    return o.name + " = " + (exact_part ? len.exact : len.shown);
                } else if constexpr (std::is_same_v<T, PolygonV<S>>) {
                    ScalarText area = scalar_text(v.area, mode);
                    return o.name + " = " + (exact_part ? area.exact : area.shown);
                } else {
                    ScalarText val = scalar_text(v, mode);
                    return o.name + " = " + (exact_part ? val.exact : val.shown);
                }
            },
            o.value);
    };
    if (exact_mode) {
        std::string ex = render(true);
        std::string approx = render(false);
        // drop the leading "name = " / "name: " duplication in the approx
        auto cut = approx.find_first_of("=:");
        return ex + "   ~ " + approx.substr(cut + 2);
    }
    return render(false);
}

template <class S>
std::string typed_protocol(const TypedTrace<S>& t, const ScalarMode& mode) {
    std::ostringstream os;
    os << "Free objects\n";
    for (const auto& o : t.objects)
        if (o.free_object) os << "  " << object_line(o, mode) << "\n";
    os << "Dependent objects\n";
    for (const auto& o : t.objects)
        if (!o.free_object) os << "  " << object_line(o, mode) << "\n";
    return os.str();
}

} // namespace

std::string protocol_report(const EvalTrace& trace) {
    return std::visit([&](const auto& t) { return typed_protocol(t, trace.mode); }, trace.typed);
}

// ---- deviation report ----

namespace {

struct NumericField {
    std::string object;
    std::string field;
    ExactScalar exact;
    double approx = 0.0;
};

void numeric_fields(const TraceObject<ExactScalar>& e, const TraceObject<double>& a,
                    std::vector<std::pair<NumericField, double>>& out) {
    auto push = [&](const std::string& field, const ExactScalar& ev, double av) {
        out.push_back({NumericField{e.name, field, ev, ev.to_double()}, av});
    };
    if (!e.ok() || !a.ok()) return;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, geom::Point<ExactScalar>>) {
                const auto& av = std::get<geom::Point<double>>(a.value);
                push("x", v.x, av.x);
                push("y", v.y, av.y);
            } else if constexpr (std::is_same_v<T, geom::Circle<ExactScalar>>) {
                const auto& av = std::get<geom::Circle<double>>(a.value);
                push("center_x", v.center.x, av.center.x);
                push("center_y", v.center.y, av.center.y);
                push("radius_sq", v.radius_sq, av.radius_sq);
            } else if constexpr (std::is_same_v<T, SegmentV<ExactScalar>>) {
                push("length", v.length, std::get<SegmentV<double>>(a.value).length);
            } else if constexpr (std::is_same_v<T, PolygonV<ExactScalar>>) {
                push("area", v.area, std::get<PolygonV<double>>(a.value).area);
            } else if constexpr (std::is_same_v<T, ExactScalar>) {
                push("value", v, std::get<double>(a.value));
            }
        },
        e.value);
}

} // namespace

DeviationReport deviation_report(const ConstructionProgram& program, unsigned k) {
    EvalTrace exact_trace = evaluate(program, ScalarMode::exact());
    const auto& et = exact_trace.exact();
    for (const auto& o : et.objects)
        if (o.status == Status::Failed)
            throw Error(ErrorKind::BadArgument,
                        "program not evaluable in exact mode: " + o.name + " failed with " +
                            o.detail);
    EvalTrace disp_trace = evaluate(program, ScalarMode::display(k));
    const auto& dt = disp_trace.approx();

    DeviationReport report;
    report.decimals = k;
    std::vector<std::pair<NumericField, double>> fields;
    for (std::size_t i = 0; i < et.objects.size(); ++i)
        numeric_fields(et.objects[i], dt.objects[i], fields);
    for (auto& [f, approx_value] : fields) {
        DeviationRow row;
        row.object = f.object;
        row.field = f.field;
        row.exact_form = f.exact.to_string();
        row.exact_approx = f.approx;
        row.display = round_display(approx_value, k);
        ExactScalar dev = abs(f.exact - ExactScalar(row.display.to_rat()));
        row.deviation = dev.is_zero() ? 0.0 : dev.to_interval(40).hi;
        if (dev.is_rational()) row.deviation_exact = rat_to_string(dev.as_rational());
        report.max_deviation = std::max(report.max_deviation, row.deviation);
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string DeviationReport::to_text() const {
    std::ostringstream os;
    os << "object";
    os << std::setw(14) << "field" << std::setw(22) << "exact" << std::setw(14) << "display"
       << std::setw(16) << "deviation\n";
    for (const auto& r : rows) {
        std::ostringstream name;
        name << r.object << "." << r.field;
        os << std::left << std::setw(16) << name.str() << std::right;
        os << std::setw(24) << r.exact_form << std::setw(12) << r.display.to_string()
           << std::setw(16) << fmt_double(r.deviation);
        if (!r.deviation_exact.empty()) os << "  (= " << r.deviation_exact << ")";
        os << "\n";
    }
    os << "max deviation = " << fmt_double(max_deviation) << " at " << decimals
       << " display decimals\n";
    return os.str();
}

// ---- sweeps ----

geom::Point<ExactScalar> PathSpec::at(const Rat& s) const {
    if (kind == Kind::Line) {
        Rat x = x0 + s * (x1 - x0);
        Rat y = y0 + s * (y1 - y0);
        return geom::make_point<ExactScalar>(x, y);
    }
    Rat t = t0 + s * (t1 - t0);
    geom::Circle<ExactScalar> host{geom::make_point<ExactScalar>(x0, y0),
                                   ExactScalar(radius * radius)};
    return geom::point_on_circle(host, std::optional<Rat>(t));
}

PathSpec parse_path_spec(const std::string& text) {
    auto open = text.find('(');
    auto close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw Error(ErrorKind::SyntaxError, "path spec: expected kind(args)");
    std::string kind = text.substr(0, open);
    std::string args = text.substr(open + 1, close - open - 1);
    std::vector<Rat> vals;
    std::istringstream in(args);
    std::string piece;
    while (std::getline(in, piece, ',')) {
        // trim
        auto b = piece.find_first_not_of(" \t");
        auto e = piece.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw Error(ErrorKind::SyntaxError, "path spec: empty argument");
        auto q = rat_from_string(piece.substr(b, e - b + 1));
        if (!q) throw Error(ErrorKind::SyntaxError, "path spec: bad number '" + piece + "'");
        vals.push_back(*q);
    }
    PathSpec spec;
    if (kind == "line") {
        if (vals.size() != 4)
            throw Error(ErrorKind::SyntaxError, "path spec: line(x0,y0,x1,y1)");
        spec.kind = PathSpec::Kind::Line;
        spec.x0 = vals[0];
        spec.y0 = vals[1];
        spec.x1 = vals[2];
        spec.y1 = vals[3];
        return spec;
    }
    if (kind == "arc") {
        if (vals.size() != 5)
            throw Error(ErrorKind::SyntaxError, "path spec: arc(cx,cy,r,t0,t1)");
        spec.kind = PathSpec::Kind::Arc;
        spec.x0 = vals[0];
        spec.y0 = vals[1];
        spec.radius = vals[2];
        spec.t0 = vals[3];
        spec.t1 = vals[4];
        if (spec.radius <= 0)
            throw Error(ErrorKind::SyntaxError, "path spec: arc radius must be positive");
        return spec;
    }
    throw Error(ErrorKind::SyntaxError, "path spec: unknown kind '" + kind + "'");
}

bool SweepStepResult::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const auto& c) { return c.second.pass; });
}

SweepReport perturb_sweep(const ConstructionProgram& program, const std::string& target,
                          const PathSpec& path, std::size_t steps, ScalarMode mode,
                          const std::vector<std::pair<std::string, NamedCheck>>& checks) {
    auto idx = program.index_of(target);
    if (!idx) throw Error(ErrorKind::UnknownObject, "no object named '" + target + "'");
    if (!std::holds_alternative<FreePoint>(program.steps[*idx].def))
        throw Error(ErrorKind::NotFree, "'" + target + "' is not a free point");
    if (steps < 1) throw Error(ErrorKind::BadArgument, "steps must be >= 1");

    SweepReport report;
    report.target = target;
    for (std::size_t i = 0; i < steps; ++i) {
        Rat s = steps == 1 ? Rat(0) : Rat(long(i), long(steps - 1));
        s.canonicalize();
        geom::Point<ExactScalar> p = path.at(s);
        ConstructionProgram variant = program;
        variant.steps[*idx].def = FreePoint{p.x.as_rational(), p.y.as_rational()};
        EvalTrace trace = evaluate(variant, mode);
        SweepStepResult step;
        step.index = i;
        step.param = s;
        step.x = p.x.as_rational();
        step.y = p.y.as_rational();
        for (const auto& [name, check] : checks)
            step.checks.emplace_back(name, check(variant, trace, mode));
        if (step.all_pass()) ++report.passed;
        report.steps.push_back(std::move(step));
    }
    return report;
}

std::string SweepReport::to_text() const {
    std::ostringstream os;
    os << "sweep of " << target << ": " << passed << "/" << steps.size()
       << " steps pass all checks\n";
    for (const auto& s : steps) {
        os << "  step " << s.index << " t=" << rat_to_string(s.param) << " at ("
           << rat_to_string(s.x) << ", " << rat_to_string(s.y) << ")";
        if (s.checks.empty()) {
            os << "\n";
            continue;
        }
        os << " :";
        for (const auto& [name, result] : s.checks) {
            os << " " << name << "=" << (result.pass ? "pass" : "FAIL");
            if (!result.pass && !result.detail.empty()) os << " (" << result.detail << ")";
        }
        os << "\n";
    }
    return os.str();
}

} // namespace geolab::construct
