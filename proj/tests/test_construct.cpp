#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geolab/construct/eval.hpp"
#include "geolab/construct/program.hpp"

#include <fstream>
#include <sstream>

using namespace geolab;
using namespace geolab::construct;

namespace {

const char* kFig7 = R"(point A = free(-2.97, 2.45)
point B = free(4.51, 2.34)
point D = free(2.3, -5.67)
num r = param(5)
circle c = circle(A, r)
circle d = circle(B, r)
point C = intersect(c, d, second)
point E = intersect(c, d, first)
circle e = circle_through(D, C)
point F = intersect(c, e, second)
point G = intersect(d, e, first)
circle f = circumcircle(E, F, G)
segment d2 = segment(A, B)
polygon poly2 = polygon(A, B, D)
)";

ErrorKind parse_error_kind(const std::string& text) {
    try {
        parse_program(text);
    } catch (const Error& e) {
        return e.kind();
    }
    throw std::logic_error("expected a parse error");
}

} // namespace

TEST_CASE("parse: two-step program") {
    ConstructionProgram p = parse_program("point A = free(-2.97, 2.45)\ncircle c = circle(A, 5)");
    REQUIRE(p.steps.size() == 2);
    CHECK(p.steps[0].name == "A");
    CHECK(p.steps[0].is_free());
    const auto& fp = std::get<FreePoint>(p.steps[0].def);
    CHECK(fp.x == Rat(-297, 100));
    const auto& cc = std::get<CircleCR>(p.steps[1].def);
    CHECK(cc.center == "A");
    CHECK(cc.radius == 5);
}

TEST_CASE("parse: comments, blank lines, crlf") {
    ConstructionProgram p =
        parse_program("# heading\r\n\r\npoint P = free(0, 0)  # trailing\r\n");
    REQUIRE(p.steps.size() == 1);
    CHECK(p.steps[0].name == "P");
}

TEST_CASE("parse errors") {
    CHECK(parse_error_kind("point P = free(0,0)\npoint P = free(1,1)") ==
          ErrorKind::DuplicateName);
    CHECK(parse_error_kind("circle c = circle(B, 5)") == ErrorKind::UnknownReference);
    CHECK(parse_error_kind("circle c = circle(B, 5)\npoint B = free(0,0)") ==
          ErrorKind::ForwardReference);
    CHECK(parse_error_kind("point P = free(0,0)\ncircle c = circle_through(P, c)") ==
          ErrorKind::CyclicDefinition);
    CHECK(parse_error_kind("point P = free(0") == ErrorKind::SyntaxError);
    CHECK(parse_error_kind("point P = free(0,0)\nsegment s = segment(P, P) extra") ==
          ErrorKind::SyntaxError);
    CHECK(parse_error_kind("widget w = thing(1)") == ErrorKind::SyntaxError);
    // referencing an object of the wrong kind
    CHECK(parse_error_kind("point P = free(0,0)\ncircle c = circle_through(P, P)\n"
                           "point Q = midpoint(P, c)") == ErrorKind::SyntaxError);
}

TEST_CASE("parse errors carry line and column") {
    try {
        parse_program("point A = free(0, 0)\npoint B = free(1, oops)");
        FAIL("expected SyntaxError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SyntaxError);
        std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("expected") != std::string::npos);
    }
}

TEST_CASE("print/parse round trip") {
    ConstructionProgram p = parse_program(kFig7);
    std::string text = print_program(p);
    ConstructionProgram q = parse_program(text);
    CHECK(p == q);
    CHECK(print_program(q) == text);
}

TEST_CASE("evaluate fig7 exactly") {
    ConstructionProgram p = parse_program(kFig7);
    EvalTrace trace = evaluate(p, ScalarMode::exact());
    REQUIRE(trace.all_ok());
    const auto& t = trace.exact();

    const auto& poly = std::get<PolygonV<ExactScalar>>(t.find("poly2")->value);
    Rat expected(601579, 20000);
    expected.canonicalize();
    CHECK(poly.area.as_rational() == expected);

    // the common point C is a quadratic irrational, so dist_sq(D, C) lives
    // one tower level up; it must differ from 25 exactly
    const auto& e = std::get<geom::Circle<ExactScalar>>(t.find("e")->value);
    CHECK_FALSE(e.radius_sq.is_rational());
    CHECK(e.radius_sq.tower_depth() == 1);
    CHECK((e.radius_sq - ExactScalar(Rat(25))).sign() != 0);
    double e_r2 = e.radius_sq.to_double();
    CHECK(e_r2 > 24.8);
    CHECK(e_r2 < 25.2);

    // E is the second intersection of the two congruent circles, so the
    // vector identity E = A + B - C holds exactly; for F the circles are
    // not congruent (r^2 = 25 vs ~25.03) and the identity only nearly holds
    const auto& C = std::get<geom::Point<ExactScalar>>(t.find("C")->value);
    const auto& E = std::get<geom::Point<ExactScalar>>(t.find("E")->value);
    const auto& F = std::get<geom::Point<ExactScalar>>(t.find("F")->value);
    const auto& A = std::get<geom::Point<ExactScalar>>(t.find("A")->value);
    const auto& B = std::get<geom::Point<ExactScalar>>(t.find("B")->value);
    const auto& D = std::get<geom::Point<ExactScalar>>(t.find("D")->value);
    CHECK((E.x - (A.x + B.x - C.x)).is_zero());
    CHECK((E.y - (A.y + B.y - C.y)).is_zero());
    CHECK_FALSE((F.x - (A.x + D.x - C.x)).is_zero());
    CHECK(std::abs(F.x.to_double() - (A.x + D.x - C.x).to_double()) < 0.02);
    CHECK(std::abs(F.y.to_double() - (A.y + D.y - C.y).to_double()) < 0.02);
}

TEST_CASE("float and exact modes agree to 1e-9 relative on fig7") {
    ConstructionProgram p = parse_program(kFig7);
    EvalTrace et = evaluate(p, ScalarMode::exact());
    EvalTrace ft = evaluate(p, ScalarMode::floating());
    const auto& te = et.exact();
    const auto& tf = ft.approx();
    REQUIRE(te.objects.size() == tf.objects.size());
    for (std::size_t i = 0; i < te.objects.size(); ++i) {
        REQUIRE(te.objects[i].ok());
        REQUIRE(tf.objects[i].ok());
        if (auto* seg = std::get_if<SegmentV<ExactScalar>>(&te.objects[i].value)) {
            double exact = seg->length.to_double();
            double approx = std::get<SegmentV<double>>(tf.objects[i].value).length;
            CHECK(std::abs(exact - approx) <= 1e-9 * std::max(1.0, std::abs(exact)));
        }
        if (auto* c = std::get_if<geom::Circle<ExactScalar>>(&te.objects[i].value)) {
            double exact = c->radius_sq.to_double();
            double approx = std::get<geom::Circle<double>>(tf.objects[i].value).radius_sq;
            CHECK(std::abs(exact - approx) <= 1e-9 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("error poisoning: disjoint circles") {
    ConstructionProgram p = parse_program(
        "point A = free(0,0)\npoint B = free(30,0)\ncircle c = circle(A, 1)\n"
        "circle d = circle(B, 1)\npoint P = intersect(c, d, first)\n"
        "segment s = segment(P, A)\npolygon t = polygon(P, A, B)");
    EvalTrace trace = evaluate(p, ScalarMode::exact());
    const auto& t = trace.exact();  // trace outlives the reference
    CHECK(t.find("P")->status == Status::Failed);
    CHECK(t.find("P")->detail == "EmptyIntersection");
    CHECK(t.find("s")->status == Status::Poisoned);
    CHECK(t.find("s")->detail == "P");
    CHECK(t.find("t")->status == Status::Poisoned);
    CHECK_FALSE(trace.all_ok());
}

TEST_CASE("tangent second branch and identical circles") {
    ConstructionProgram p = parse_program(
        "point A = free(0,0)\npoint B = free(2,0)\ncircle c = circle(A, 1)\n"
        "circle d = circle(B, 1)\npoint P = intersect(c, d, first)\n"
        "point Q = intersect(c, d, second)");
    EvalTrace trace = evaluate(p, ScalarMode::exact());
    const auto& t = trace.exact();
    CHECK(t.find("P")->ok());
    CHECK(t.find("Q")->status == Status::Failed);
    CHECK(t.find("Q")->detail == "EmptyIntersection");

    ConstructionProgram q = parse_program(
        "point A = free(0,0)\ncircle c = circle(A, 1)\ncircle d = circle(A, 1)\n"
        "point P = intersect(c, d, first)");
    EvalTrace trace_q = evaluate(q, ScalarMode::exact());
    const auto& tq = trace_q.exact();
    CHECK(tq.find("P")->detail == "IdenticalCircles");
}

TEST_CASE("protocol report formats") {
    ConstructionProgram p = parse_program(kFig7);
    EvalTrace trace = evaluate(p, ScalarMode::display(2));
    std::string report = protocol_report(trace);
    std::istringstream in(report);
    std::string line;
    std::getline(in, line);
    CHECK(line == "Free objects");
    std::getline(in, line);
    CHECK(line == "  A = (-2.97, 2.45)");
    CHECK(report.find("Dependent objects") != std::string::npos);
    CHECK(report.find("  c: (x + 2.97)^2 + (y - 2.45)^2 = 25") != std::string::npos);
    CHECK(report.find("  d2 = 7.48") != std::string::npos);

    // exact mode shows exact forms alongside rounded decimals
    std::string exact_report = protocol_report(evaluate(p, ScalarMode::exact()));
    CHECK(exact_report.find("A = (-297/100, 49/20)   ~ (-2.97, 2.45)") != std::string::npos);

    // failures are reported inline
    ConstructionProgram bad = parse_program(
        "point A = free(0,0)\npoint B = free(30,0)\ncircle c = circle(A, 1)\n"
        "circle d = circle(B, 1)\npoint P = intersect(c, d, first)");
    std::string rep = protocol_report(evaluate(bad, ScalarMode::display(2)));
    CHECK(rep.find("P: undefined (EmptyIntersection)") != std::string::npos);

    // empty program: two bare sections
    std::string empty = protocol_report(evaluate(ConstructionProgram{}, ScalarMode::display(2)));
    CHECK(empty == "Free objects\nDependent objects\n");
}

TEST_CASE("exact trace values are invariant under renaming") {
    ConstructionProgram p = parse_program(kFig7);
    std::string renamed_text = print_program(p);
    for (const char* from : {"poly2", "d2"}) {
        std::string to = std::string("zz_") + from;
        std::size_t pos = 0;
        while ((pos = renamed_text.find(from, pos)) != std::string::npos) {
            renamed_text.replace(pos, std::string(from).size(), to);
            pos += to.size();
        }
    }
    ConstructionProgram q = parse_program(renamed_text);
    EvalTrace tr1 = evaluate(p, ScalarMode::exact());
    EvalTrace tr2 = evaluate(q, ScalarMode::exact());
    const auto& t1 = tr1.exact();
    const auto& t2 = tr2.exact();
    const auto& a1 = std::get<PolygonV<ExactScalar>>(t1.find("poly2")->value);
    const auto& a2 = std::get<PolygonV<ExactScalar>>(t2.find("zz_poly2")->value);
    CHECK(a1.area.identical(a2.area));
    const auto& s1 = std::get<SegmentV<ExactScalar>>(t1.find("d2")->value);
    const auto& s2 = std::get<SegmentV<ExactScalar>>(t2.find("zz_d2")->value);
    CHECK(s1.length.identical(s2.length));
}

TEST_CASE("display snapping and exact deviation of 1/3") {
    ConstructionProgram p = parse_program("point P = free(1/3, 0)");
    DeviationReport report = deviation_report(p, 2);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].object == "P");
    CHECK(report.rows[0].field == "x");
    CHECK(report.rows[0].display.to_rat() == Rat(33, 100));
    CHECK(report.rows[0].deviation_exact == "1/300");
    CHECK(report.rows[1].deviation_exact == "0");
    CHECK(report.max_deviation == doctest::Approx(1.0 / 300).epsilon(1e-9));
    CHECK(report.to_text().find("max deviation") != std::string::npos);
}

TEST_CASE("deviation report on fig7") {
    ConstructionProgram p = parse_program(kFig7);
    DeviationReport report = deviation_report(p, 2);
    double e_dev_vs_25 = 0;
    bool found = false;
    for (const auto& row : report.rows) {
        if (row.object == "e" && row.field == "radius_sq") {
            found = true;
            e_dev_vs_25 = std::abs(row.display.to_double() - 25.0);
            CHECK(row.deviation <= 0.2);
        }
        CHECK(row.deviation <= 0.2);
    }
    REQUIRE(found);
    CHECK(e_dev_vs_25 <= 0.2);
    CHECK(e_dev_vs_25 > 0.0);
}

TEST_CASE("deviation_report propagates evaluation errors") {
    ConstructionProgram bad = parse_program(
        "point A = free(0,0)\npoint B = free(30,0)\ncircle c = circle(A, 1)\n"
        "circle d = circle(B, 1)\npoint P = intersect(c, d, first)");
    CHECK_THROWS_AS(deviation_report(bad, 2), Error);
}

TEST_CASE("sweep: steps=1 is a single evaluation at the path start") {
    ConstructionProgram p = parse_program(kFig7);
    PathSpec path = parse_path_spec("line(-2.97,2.45,0,0)");
    SweepReport r = perturb_sweep(p, "A", path, 1, ScalarMode::exact(), {});
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].x == Rat(-297, 100));
    CHECK(r.steps[0].param == 0);
    CHECK(r.passed == 1);
}

TEST_CASE("sweep: collapsing centers reports IdenticalCircles at the midpoint") {
    ConstructionProgram p = parse_program(
        "point A = free(0,0)\npoint B = free(4,0)\ncircle c = circle(A, 5)\n"
        "circle d = circle(B, 5)\npoint P = intersect(c, d, first)");
    // A moves over B and back out: at s=1/2 the centers coincide
    PathSpec path = parse_path_spec("line(0,0,8,0)");
    auto nondeg = [](const ConstructionProgram&, const EvalTrace& t,
                     ScalarMode) -> CheckResult {
        if (t.all_ok()) return {true, ""};
        return {false, "degenerate"};
    };
    SweepReport r = perturb_sweep(p, "A", path, 3, ScalarMode::exact(), {{"nondegenerate", nondeg}});
    REQUIRE(r.steps.size() == 3);
    CHECK(r.steps[0].all_pass());
    CHECK_FALSE(r.steps[1].all_pass());
    CHECK(r.steps[2].all_pass());
    CHECK(r.passed == 2);
}

TEST_CASE("sweep errors") {
    ConstructionProgram p = parse_program(kFig7);
    PathSpec path = parse_path_spec("line(0,0,1,1)");
    CHECK_THROWS_AS(perturb_sweep(p, "nope", path, 2, ScalarMode::exact(), {}), Error);
    CHECK_THROWS_AS(perturb_sweep(p, "d2", path, 2, ScalarMode::exact(), {}), Error);
    CHECK_THROWS_AS(parse_path_spec("spiral(1,2,3)"), Error);
}

TEST_CASE("arc path stays on the host circle") {
    PathSpec arc = parse_path_spec("arc(1,2,5,0,1)");
    auto p0 = arc.at(Rat(0));
    auto p1 = arc.at(Rat(1));
    auto c = geom::make_point<ExactScalar>(Rat(1), Rat(2));
    CHECK((geom::dist_sq(p0, c) - ExactScalar(Rat(25))).is_zero());
    CHECK((geom::dist_sq(p1, c) - ExactScalar(Rat(25))).is_zero());
    CHECK(geom::same_point(p0, geom::make_point<ExactScalar>(Rat(6), Rat(2))));
}

TEST_CASE("evaluation is deterministic") {
    ConstructionProgram p = parse_program(kFig7);
    std::string r1 = protocol_report(evaluate(p, ScalarMode::display(2)));
    std::string r2 = protocol_report(evaluate(p, ScalarMode::display(2)));
    CHECK(r1 == r2);
}
