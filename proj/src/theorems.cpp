#include "geolab/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace geolab::theorems {

using construct::Branch;
using construct::ConstructionProgram;
using construct::EvalTrace;
using construct::Status;
using construct::Step;
using geom::Circle;
using geom::Point;

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

ExactScalar exact_rat(const Rat& q) { return ExactScalar(q); }

} // namespace

const char* Verdict::outcome_name() const {
    switch (outcome) {
        case Outcome::VerifiedExact: return "VerifiedExact";
        case Outcome::VerifiedWithin: return "VerifiedWithin";
        case Outcome::Falsified: return "Falsified";
        case Outcome::Degenerate: return "Degenerate";
    }
    return "?";
}

std::string Verdict::to_text() const {
    std::ostringstream os;
    switch (outcome) {
        case Outcome::VerifiedExact:
            os << "VerifiedExact: residual exactly 0";
            break;
        case Outcome::VerifiedWithin:
            os << "VerifiedWithin " << fmt(tolerance) << ": max residual = " << fmt(max_residual);
            break;
        case Outcome::Falsified:
            os << "Falsified: max residual = " << fmt(max_residual) << " (tolerance "
               << fmt(tolerance) << ")";
            break;
        case Outcome::Degenerate:
            os << "Degenerate: " << reason;
            break;
    }
    for (const auto& [k, v] : evidence) os << "\n  " << k << " = " << v;
    return os.str();
}

ConstructionProgram tzitzeica_program(const TzitzeicaConfig& config) {
    if (config.r_sq <= 0)
        throw Error(ErrorKind::DegenerateConfig, "r_sq must be positive");
    auto r = rat_exact_sqrt(config.r_sq);
    if (!r)
        throw Error(ErrorKind::BadArgument,
                    "the circle constructor takes a rational radius; r_sq must be a "
                    "rational square");

    Point<ExactScalar> O = geom::make_point<ExactScalar>(config.ox, config.oy);
    Circle<ExactScalar> host{O, exact_rat(config.r_sq)};
    Point<ExactScalar> centers[3] = {
        geom::point_on_circle(host, std::optional<Rat>(config.t_a)),
        geom::point_on_circle(host, std::optional<Rat>(config.t_b)),
        geom::point_on_circle(host, std::optional<Rat>(config.t_c)),
    };
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            if (geom::same_point(centers[i], centers[j]))
                throw Error(ErrorKind::DegenerateConfig, "coincident centers");
            // antipodal centers make the two circles tangent at O
            Point<ExactScalar> mid = geom::midpoint(centers[i], centers[j]);
            if (geom::same_point(mid, O))
                throw Error(ErrorKind::DegenerateConfig, "antipodal centers (tangent at O)");
        }

    // pick the intersection branch that is not O, per pair
    const char* center_names[3] = {"A", "B", "C"};
    const char* circle_names[3] = {"cA", "cB", "cC"};
    struct PairDef {
        int i, j;
        const char* name;
    } pairs[3] = {{0, 1, "MAB"}, {0, 2, "MAC"}, {1, 2, "MBC"}};

    std::ostringstream os;
    os << "# Tzitzeica three-circle configuration\n";
    os << "point O = free(" << rat_to_string(config.ox) << ", " << rat_to_string(config.oy)
       << ")\n";
    os << "circle k = circle(O, " << rat_to_string(*r) << ")\n";
    const Rat* params[3] = {&config.t_a, &config.t_b, &config.t_c};
    for (int i = 0; i < 3; ++i)
        os << "point " << center_names[i] << " = point_on(k, " << rat_to_string(*params[i])
           << ")\n";
    for (int i = 0; i < 3; ++i)
        os << "circle " << circle_names[i] << " = circle_through(" << center_names[i] << ", O)\n";
    for (const auto& p : pairs) {
        Circle<ExactScalar> ci{centers[p.i], geom::dist_sq(centers[p.i], O)};
        Circle<ExactScalar> cj{centers[p.j], geom::dist_sq(centers[p.j], O)};
        auto pts = geom::circle_circle_intersections(ci, cj);
        if (pts.size() != 2)
            throw Error(ErrorKind::DegenerateConfig, "circles do not meet in two points");
        Branch branch = geom::same_point(pts[0], O) ? Branch::Second : Branch::First;
        os << "point " << p.name << " = intersect(" << circle_names[p.i] << ", "
           << circle_names[p.j] << ", " << (branch == Branch::First ? "first" : "second")
           << ")\n";
    }
    os << "circle w = circumcircle(MAB, MAC, MBC)\n";
    return construct::parse_program(os.str());
}

Verdict check_rhombus_lemma(const Circle<ExactScalar>& c1, const Circle<ExactScalar>& c2) {
    if (!geom::congruent_circles(c1, c2))
        throw Error(ErrorKind::NotCongruent, "circles have different radii");
    auto pts = geom::circle_circle_intersections(c1, c2);
    if (pts.size() != 2)
        throw Error(ErrorKind::NotIntersecting, "circles do not intersect in two points");
    Verdict v;
    bool rhombus = geom::is_rhombus(c1.center, pts[0], c2.center, pts[1]);
    v.outcome = rhombus ? Verdict::Outcome::VerifiedExact : Verdict::Outcome::Falsified;
    const Point<ExactScalar> quad[4] = {c1.center, pts[0], c2.center, pts[1]};
    const char* side_names[4] = {"side_a_sq", "side_b_sq", "side_c_sq", "side_d_sq"};
    for (int i = 0; i < 4; ++i) {
        ExactScalar side = geom::dist_sq(quad[i], quad[(i + 1) % 4]);
        v.evidence.emplace_back(side_names[i], side.to_string());
    }
    v.evidence.emplace_back("radius_sq", c1.radius_sq.to_string());
    return v;
}

namespace {

// Structural Tzitzeica shape: the circumcircle step, its three intersect
// inputs, the three circles those reference, their centers, and a point
// that lies on all three circles by construction.
struct TzShape {
    std::array<std::string, 3> circles;
    std::array<std::string, 3> centers;
    // intersections[k] is the selected intersection of circles (i,j), with
    // pair_of[k] = {i, j}
    std::array<std::string, 3> intersections;
    std::array<std::pair<int, int>, 3> pair_of;
    std::string circumcircle;
    std::string common_point;
};

std::optional<std::string> structurally_on_circle(const ConstructionProgram& program,
                                                  const std::string& circle,
                                                  const std::string& point) {
    // point lies on circle when the circle passes through it or the point
    // was constructed on/from it
    for (const Step& s : program.steps) {
        if (s.name == circle) {
            if (const auto* ct = std::get_if<construct::CircleThrough>(&s.def))
                if (ct->through == point) return point;
        }
        if (s.name == point) {
            if (const auto* in = std::get_if<construct::Intersect>(&s.def))
                if (in->c1 == circle || in->c2 == circle) return point;
            if (const auto* gl = std::get_if<construct::Glider>(&s.def))
                if (gl->circle == circle) return point;
        }
    }
    return std::nullopt;
}

TzShape detect_shape(const ConstructionProgram& program) {
    // the circumcircle over three intersection points
    const Step* circum = nullptr;
    const construct::CircumcircleDef* cdef = nullptr;
    for (const Step& s : program.steps) {
        if (const auto* d = std::get_if<construct::CircumcircleDef>(&s.def)) {
            bool all_intersections = true;
            for (const std::string& p : {d->p1, d->p2, d->p3}) {
                const Step* ps = program.find(p);
                if (!ps || !std::holds_alternative<construct::Intersect>(ps->def))
                    all_intersections = false;
            }
            if (all_intersections) {
                if (circum)
                    throw Error(ErrorKind::ShapeMismatch,
                                "more than one circumcircle over intersection points");
                circum = &s;
                cdef = d;
            }
        }
    }
    if (!circum)
        throw Error(ErrorKind::ShapeMismatch,
                    "no circumcircle over three intersection points");

    TzShape shape;
    shape.circumcircle = circum->name;
    std::vector<std::string> circle_names;
    std::array<std::pair<std::string, std::string>, 3> raw_pairs;
    const std::string pts[3] = {cdef->p1, cdef->p2, cdef->p3};
    for (int k = 0; k < 3; ++k) {
        const auto& in = std::get<construct::Intersect>(program.find(pts[k])->def);
        shape.intersections[k] = pts[k];
        raw_pairs[k] = {in.c1, in.c2};
        for (const auto& c : {in.c1, in.c2})
            if (std::find(circle_names.begin(), circle_names.end(), c) == circle_names.end())
                circle_names.push_back(c);
    }
    if (circle_names.size() != 3)
        throw Error(ErrorKind::ShapeMismatch,
                    "intersections must range over exactly three circles");
    std::sort(circle_names.begin(), circle_names.end());
    for (int i = 0; i < 3; ++i) shape.circles[i] = circle_names[i];
    auto circle_index = [&](const std::string& n) {
        return int(std::find(circle_names.begin(), circle_names.end(), n) -
                   circle_names.begin());
    };
    std::array<bool, 3> pair_seen{false, false, false};
    for (int k = 0; k < 3; ++k) {
        int i = circle_index(raw_pairs[k].first);
        int j = circle_index(raw_pairs[k].second);
        if (i == j) throw Error(ErrorKind::ShapeMismatch, "self-intersection step");
        if (i > j) std::swap(i, j);
        int slot = (i == 0 && j == 1) ? 0 : (i == 0 && j == 2) ? 1 : 2;
        if (pair_seen[slot])
            throw Error(ErrorKind::ShapeMismatch, "duplicate circle pair in intersections");
        pair_seen[slot] = true;
        shape.pair_of[k] = {i, j};
    }
    for (int i = 0; i < 3; ++i) {
        const Step* cs = program.find(shape.circles[i]);
        if (!cs) throw Error(ErrorKind::ShapeMismatch, "missing circle step");
        if (const auto* cr = std::get_if<construct::CircleCR>(&cs->def))
            shape.centers[i] = cr->center;
        else if (const auto* ct = std::get_if<construct::CircleThrough>(&cs->def))
            shape.centers[i] = ct->center;
        else
            throw Error(ErrorKind::ShapeMismatch, "circumcircle cannot be an initial circle");
    }
    // a point structurally on all three circles and distinct from the
    // selected intersections
    for (const Step& s : program.steps) {
        if (s.kind != construct::ObjectKind::Point) continue;
        if (std::find(shape.intersections.begin(), shape.intersections.end(), s.name) !=
            shape.intersections.end())
            continue;
        bool on_all = true;
        for (int i = 0; i < 3 && on_all; ++i)
            on_all = structurally_on_circle(program, shape.circles[i], s.name).has_value();
        if (on_all) {
            shape.common_point = s.name;
            break;
        }
    }
    if (shape.common_point.empty())
        throw Error(ErrorKind::ShapeMismatch, "no common point shared by the three circles");
    return shape;
}

template <class S>
struct ShapeValues {
    std::array<Circle<S>, 3> circles;
    std::array<Point<S>, 3> centers;
    std::array<Point<S>, 3> intersections;
    Circle<S> circum;
    Point<S> common;
};

template <class S>
ShapeValues<S> shape_values(const TzShape& shape, const construct::TypedTrace<S>& trace,
                            std::string& degenerate_reason) {
    ShapeValues<S> v{};
    auto get = [&](const std::string& name) -> const construct::TraceObject<S>* {
        const auto* o = trace.find(name);
        if (!o) throw Error(ErrorKind::ShapeMismatch, "missing object " + name);
        if (!o->ok()) {
            degenerate_reason = name + " is " + (o->status == Status::Failed
                                                     ? "undefined (" + o->detail + ")"
                                                     : "poisoned by " + o->detail);
            return nullptr;
        }
        return o;
    };
    for (int i = 0; i < 3; ++i) {
        const auto* c = get(shape.circles[i]);
        const auto* p = get(shape.centers[i]);
        const auto* m = get(shape.intersections[i]);
        if (!c || !p || !m) return v;
        v.circles[i] = std::get<Circle<S>>(c->value);
        v.centers[i] = std::get<Point<S>>(p->value);
        v.intersections[i] = std::get<Point<S>>(m->value);
    }
    const auto* w = get(shape.circumcircle);
    const auto* o = get(shape.common_point);
    if (!w || !o) return v;
    v.circum = std::get<Circle<S>>(w->value);
    v.common = std::get<Point<S>>(o->value);
    return v;
}

template <class S>
Verdict tzitzeica_verdict(const TzShape& shape, const construct::TypedTrace<S>& trace,
                          ScalarMode mode, double tolerance) {
    Verdict verdict;
    verdict.tolerance = tolerance;
    std::string degenerate;
    ShapeValues<S> v = shape_values(shape, trace, degenerate);
    if (!degenerate.empty()) {
        verdict.outcome = Verdict::Outcome::Degenerate;
        verdict.reason = degenerate;
        return verdict;
    }
    double max_res = 0.0;
    bool exact_zero = true;
    for (int i = 0; i < 3; ++i) {
        S residual = v.circum.radius_sq - v.circles[i].radius_sq;
        if (scalar_ops<S>::sign(residual) != 0) exact_zero = false;
        double r = std::abs(scalar_ops<S>::to_double(residual));
        max_res = std::max(max_res, r);
    }
    verdict.max_residual = max_res;
    for (int i = 0; i < 3; ++i) {
        auto txt = [&](const S& s) {
            if constexpr (std::is_same_v<S, ExactScalar>)
                return s.to_string();
            else
                return fmt(s);
        };
        verdict.evidence.emplace_back(shape.circles[i] + ".radius_sq",
                                      txt(v.circles[i].radius_sq));
        verdict.evidence.emplace_back(
            shape.intersections[i],
            "(" + txt(v.intersections[i].x) + ", " + txt(v.intersections[i].y) + ")");
    }
    {
        auto txt = [&](const S& s) {
            if constexpr (std::is_same_v<S, ExactScalar>)
                return s.to_string();
            else
                return fmt(s);
        };
        verdict.evidence.emplace_back(
            shape.circumcircle + ".center",
            "(" + txt(v.circum.center.x) + ", " + txt(v.circum.center.y) + ")");
        verdict.evidence.emplace_back(shape.circumcircle + ".radius_sq",
                                      txt(v.circum.radius_sq));
    }
    if (mode.is_exact()) {
        verdict.outcome =
            exact_zero ? Verdict::Outcome::VerifiedExact : Verdict::Outcome::Falsified;
    } else {
        verdict.outcome = max_res <= tolerance ? Verdict::Outcome::VerifiedWithin
                                               : Verdict::Outcome::Falsified;
    }
    return verdict;
}

} // namespace

Verdict check_tzitzeica(const ConstructionProgram& program, ScalarMode mode, double tolerance) {
    TzShape shape = detect_shape(program);
    EvalTrace trace = construct::evaluate(program, mode);
    if (mode.is_exact()) return tzitzeica_verdict(shape, trace.exact(), mode, tolerance);
    return tzitzeica_verdict(shape, trace.approx(), mode, tolerance);
}

namespace {

template <class S>
SidePairReport side_pairs(const TzShape& shape, const construct::TypedTrace<S>& trace,
                          ScalarMode mode) {
    std::string degenerate;
    ShapeValues<S> v = shape_values(shape, trace, degenerate);
    if (!degenerate.empty()) throw Error(ErrorKind::ShapeMismatch, degenerate);
    // the intersection of circles (i,j) sits in slot with pair {i,j}
    auto slot_of = [&](int i, int j) {
        for (int k = 0; k < 3; ++k)
            if (shape.pair_of[k] == std::make_pair(i, j)) return k;
        throw Error(ErrorKind::ShapeMismatch, "incomplete pair coverage");
    };
    SidePairReport report;
    const std::array<std::pair<int, int>, 3> sides{{{0, 1}, {0, 2}, {1, 2}}};
    for (auto [i, j] : sides) {
        int k = 3 - i - j; // the third circle
        int m1 = slot_of(std::min(i, k), std::max(i, k));
        int m2 = slot_of(std::min(j, k), std::max(j, k));
        SidePairRow row;
        row.center_side = shape.centers[i] + "-" + shape.centers[j];
        row.outer_side = shape.intersections[m1] + "-" + shape.intersections[m2];
        S center_len_sq = geom::dist_sq(v.centers[i], v.centers[j]);
        S outer_len_sq = geom::dist_sq(v.intersections[m1], v.intersections[m2]);
        row.exactly_equal = scalar_ops<S>::sign(center_len_sq - outer_len_sq) == 0;
        double cl = std::sqrt(scalar_ops<S>::to_double(center_len_sq));
        double ol = std::sqrt(scalar_ops<S>::to_double(outer_len_sq));
        if (mode.kind == ScalarModeKind::DisplayRounded) {
            cl = round_display(cl, mode.decimals).to_double();
            ol = round_display(ol, mode.decimals).to_double();
        }
        row.center_length = cl;
        row.outer_length = ol;
        row.difference = std::abs(cl - ol);
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace

SidePairReport parallelogram_side_report(const ConstructionProgram& program, ScalarMode mode) {
    TzShape shape = detect_shape(program);
    EvalTrace trace = construct::evaluate(program, mode);
    if (mode.is_exact()) return side_pairs(shape, trace.exact(), mode);
    return side_pairs(shape, trace.approx(), mode);
}

std::string SidePairReport::to_text() const {
    std::ostringstream os;
    for (const auto& r : rows) {
        os << r.center_side << " = " << fmt(r.center_length) << "  vs  " << r.outer_side
           << " = " << fmt(r.outer_length) << "  diff = " << fmt(r.difference);
        if (r.exactly_equal) os << " (exactly 0)";
        os << "\n";
    }
    return os.str();
}

std::vector<std::pair<std::string, construct::NamedCheck>> builtin_checks(double tolerance) {
    std::vector<std::pair<std::string, construct::NamedCheck>> out;
    out.emplace_back("tzitzeica",
                     [tolerance](const ConstructionProgram& p, const EvalTrace&,
                                 ScalarMode mode) -> construct::CheckResult {
                         try {
                             Verdict v = check_tzitzeica(p, mode, tolerance);
                             return {v.verified(), v.outcome_name() +
                                                       (v.reason.empty() ? "" : ": " + v.reason)};
                         } catch (const Error& e) {
                             return {false, e.what()};
                         }
                     });
    out.emplace_back(
        "rhombus",
        [tolerance](const ConstructionProgram&, const EvalTrace& trace,
                    ScalarMode mode) -> construct::CheckResult {
            // first congruent intersecting circle pair, in step order
            try {
                if (mode.is_exact()) {
                    const auto& t = trace.exact();
                    std::vector<const construct::TraceObject<ExactScalar>*> circles;
                    for (const auto& o : t.objects)
                        if (o.ok() && std::holds_alternative<Circle<ExactScalar>>(o.value))
                            circles.push_back(&o);
                    for (std::size_t i = 0; i < circles.size(); ++i)
                        for (std::size_t j = i + 1; j < circles.size(); ++j) {
                            const auto& c1 = std::get<Circle<ExactScalar>>(circles[i]->value);
                            const auto& c2 = std::get<Circle<ExactScalar>>(circles[j]->value);
                            if (!geom::congruent_circles(c1, c2)) continue;
                            if (geom::same_point(c1.center, c2.center)) continue;
                            if (geom::circle_circle_intersections(c1, c2).size() != 2) continue;
                            Verdict v = check_rhombus_lemma(c1, c2);
                            return {v.outcome == Verdict::Outcome::VerifiedExact,
                                    std::string(v.outcome_name())};
                        }
                    return {false, "no congruent intersecting circle pair"};
                }
                const auto& t = trace.approx();
                std::vector<const construct::TraceObject<double>*> circles;
                for (const auto& o : t.objects)
                    if (o.ok() && std::holds_alternative<Circle<double>>(o.value))
                        circles.push_back(&o);
                for (std::size_t i = 0; i < circles.size(); ++i)
                    for (std::size_t j = i + 1; j < circles.size(); ++j) {
                        const auto& c1 = std::get<Circle<double>>(circles[i]->value);
                        const auto& c2 = std::get<Circle<double>>(circles[j]->value);
                        if (std::abs(c1.radius_sq - c2.radius_sq) > tolerance) continue;
                        auto pts = geom::circle_circle_intersections(c1, c2);
                        if (pts.size() != 2) continue;
                        double s1 = geom::dist_sq(c1.center, pts[0]);
                        double s2 = geom::dist_sq(pts[0], c2.center);
                        double s3 = geom::dist_sq(c2.center, pts[1]);
                        double s4 = geom::dist_sq(pts[1], c1.center);
                        double spread = std::max({s1, s2, s3, s4}) - std::min({s1, s2, s3, s4});
                        return {spread <= tolerance, "side_sq spread " + fmt(spread)};
                    }
                return {false, "no congruent intersecting circle pair"};
            } catch (const Error& e) {
                return {false, e.what()};
            }
        });
    out.emplace_back("nondegenerate",
                     [](const ConstructionProgram&, const EvalTrace& trace,
                        ScalarMode) -> construct::CheckResult {
                         if (trace.all_ok()) return {true, ""};
                         std::string detail;
                         auto scan = [&](const auto& t) {
                             for (const auto& o : t.objects)
                                 if (!o.ok()) {
                                     detail = o.name + ": " + o.detail;
                                     break;
                                 }
                         };
                         std::visit(scan, trace.typed);
                         return {false, detail};
                     });
    return out;
}

construct::NamedCheck find_check(const std::string& name, double tolerance) {
    for (auto& [n, check] : builtin_checks(tolerance))
        if (n == name) return check;
    throw Error(ErrorKind::UnknownObject, "unknown check '" + name + "'");
}

} // namespace geolab::theorems
