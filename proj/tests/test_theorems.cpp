#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geolab/theorems.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace geolab;
using namespace geolab::theorems;
using construct::ConstructionProgram;
using construct::EvalTrace;

namespace {

TzitzeicaConfig witness() {
    TzitzeicaConfig c;
    c.ox = 0;
    c.oy = 0;
    c.r_sq = 25;
    c.t_a = Rat(1, 2);
    c.t_b = Rat(2);
    c.t_c = Rat(-1, 3);
    return c;
}

geom::Point<ExactScalar> trace_point(const construct::TypedTrace<ExactScalar>& t,
                                     const std::string& name) {
    return std::get<geom::Point<ExactScalar>>(t.find(name)->value);
}

} // namespace

TEST_CASE("witness program evaluates to the hand-derived configuration") {
    ConstructionProgram p = tzitzeica_program(witness());
    EvalTrace trace = construct::evaluate(p, ScalarMode::exact());
    REQUIRE(trace.all_ok());
    const auto& t = trace.exact();
    CHECK(geom::same_point(trace_point(t, "A"), geom::make_point<ExactScalar>(Rat(3), Rat(4))));
    CHECK(geom::same_point(trace_point(t, "B"), geom::make_point<ExactScalar>(Rat(-3), Rat(4))));
    CHECK(geom::same_point(trace_point(t, "C"), geom::make_point<ExactScalar>(Rat(4), Rat(-3))));
    CHECK(geom::same_point(trace_point(t, "MAB"), geom::make_point<ExactScalar>(Rat(0), Rat(8))));
    CHECK(geom::same_point(trace_point(t, "MAC"), geom::make_point<ExactScalar>(Rat(7), Rat(1))));
    CHECK(geom::same_point(trace_point(t, "MBC"), geom::make_point<ExactScalar>(Rat(1), Rat(1))));
    const auto& w = std::get<geom::Circle<ExactScalar>>(t.find("w")->value);
    CHECK(geom::same_point(w.center, geom::make_point<ExactScalar>(Rat(4), Rat(5))));
    CHECK(w.radius_sq.as_rational() == 25);
}

TEST_CASE("witness passes check_tzitzeica exactly") {
    ConstructionProgram p = tzitzeica_program(witness());
    Verdict v = check_tzitzeica(p, ScalarMode::exact(), 0.0);
    CHECK(v.outcome == Verdict::Outcome::VerifiedExact);
    CHECK(v.max_residual == 0.0);
    CHECK(v.to_text().find("VerifiedExact") == 0);
    CHECK(!v.evidence.empty());
}

TEST_CASE("generated programs round-trip through the parser") {
    ConstructionProgram p = tzitzeica_program(witness());
    CHECK(construct::parse_program(construct::print_program(p)) == p);
}

TEST_CASE("degenerate configs are rejected") {
    TzitzeicaConfig antipodal = witness();
    antipodal.t_c = Rat(-2); // antipode of t_a = 1/2
    CHECK_THROWS_AS(tzitzeica_program(antipodal), Error);

    TzitzeicaConfig coincident = witness();
    coincident.t_b = coincident.t_a;
    CHECK_THROWS_AS(tzitzeica_program(coincident), Error);

    TzitzeicaConfig irrational = witness();
    irrational.r_sq = Rat(2);
    CHECK_THROWS_AS(tzitzeica_program(irrational), Error);
}

TEST_CASE("random admissible configs verify exactly") {
    std::mt19937 rng(90210);
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 20);
    std::uniform_int_distribution<int> rpick(0, 3);
    const long radii_sq[4] = {1, 4, 25, 49};
    int done = 0;
    while (done < 30) {
        TzitzeicaConfig c;
        c.ox = Rat(num(rng), den(rng));
        c.oy = Rat(num(rng), den(rng));
        c.r_sq = radii_sq[rpick(rng)];
        c.t_a = Rat(num(rng), den(rng));
        c.t_b = Rat(num(rng), den(rng));
        c.t_c = Rat(num(rng), den(rng));
        ConstructionProgram p;
        try {
            p = tzitzeica_program(c);
        } catch (const Error&) {
            continue; // degenerate draw
        }
        Verdict v = check_tzitzeica(p, ScalarMode::exact(), 0.0);
        CHECK(v.outcome == Verdict::Outcome::VerifiedExact);
        ++done;
    }
}

TEST_CASE("second intersection identity with O at the origin") {
    std::mt19937 rng(5150);
    std::uniform_int_distribution<long> num(-15, 15);
    std::uniform_int_distribution<long> den(1, 12);
    int done = 0;
    while (done < 40) {
        TzitzeicaConfig c;
        c.r_sq = 25;
        c.t_a = Rat(num(rng), den(rng));
        c.t_b = Rat(num(rng), den(rng));
        c.t_c = Rat(num(rng), den(rng));
        ConstructionProgram p;
        try {
            p = tzitzeica_program(c);
        } catch (const Error&) {
            continue;
        }
        EvalTrace trace = construct::evaluate(p, ScalarMode::exact());
        REQUIRE(trace.all_ok());
        const auto& t = trace.exact();
        auto A = trace_point(t, "A"), B = trace_point(t, "B"), M = trace_point(t, "MAB");
        CHECK((M.x - (A.x + B.x)).is_zero());
        CHECK((M.y - (A.y + B.y)).is_zero());
        ++done;
    }
}

TEST_CASE("translation invariance of the verdict") {
    TzitzeicaConfig c = witness();
    Verdict v0 = check_tzitzeica(tzitzeica_program(c), ScalarMode::exact(), 0.0);
    c.ox = Rat(17, 3);
    c.oy = Rat(-21, 5);
    Verdict v1 = check_tzitzeica(tzitzeica_program(c), ScalarMode::exact(), 0.0);
    CHECK(v0.outcome == v1.outcome);
    CHECK(v0.max_residual == v1.max_residual);
}

TEST_CASE("rhombus lemma verdicts and errors") {
    using geom::Circle;
    auto circ = [](long x, long y, long r_sq) {
        return Circle<ExactScalar>{geom::make_point<ExactScalar>(Rat(x), Rat(y)),
                                   ExactScalar(Rat(r_sq))};
    };
    Verdict v = check_rhombus_lemma(circ(0, 0, 25), circ(6, 0, 25));
    CHECK(v.outcome == Verdict::Outcome::VerifiedExact);
    bool all_sides_25 = true;
    int side_rows = 0;
    for (const auto& [k, val] : v.evidence)
        if (k.rfind("side_", 0) == 0) {
            ++side_rows;
            if (val != "25") all_sides_25 = false;
        }
    CHECK(side_rows == 4);
    CHECK(all_sides_25);

    CHECK_THROWS_AS(check_rhombus_lemma(circ(0, 0, 25), circ(11, 0, 25)), Error);
    CHECK_THROWS_AS(check_rhombus_lemma(circ(0, 0, 25), circ(6, 0, 16)), Error);
    try {
        check_rhombus_lemma(circ(0, 0, 25), circ(11, 0, 25));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotIntersecting);
    }
    try {
        check_rhombus_lemma(circ(0, 0, 25), circ(6, 0, 16));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotCongruent);
    }
}

namespace {
std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}
} // namespace

TEST_CASE("fig7 program: display mode verdict and side pairs") {
    ConstructionProgram p = construct::parse_program(read_file("programs/fig7.geo"));

    Verdict exact = check_tzitzeica(p, ScalarMode::exact(), 0.0);
    CHECK(exact.outcome == Verdict::Outcome::Falsified); // printed figure is not exact
    CHECK(exact.max_residual < 0.1);

    Verdict display = check_tzitzeica(p, ScalarMode::display(2), 0.25);
    CHECK(display.outcome == Verdict::Outcome::VerifiedWithin);
    CHECK(display.max_residual <= 0.25);

    SidePairReport pairs = parallelogram_side_report(p, ScalarMode::display(2));
    REQUIRE(pairs.rows.size() == 3);
    for (const auto& row : pairs.rows) {
        CHECK(row.difference <= 0.02);
    }

    // moving the third center breaks the theorem even within tolerance
    ConstructionProgram broken = p;
    for (auto& step : broken.steps)
        if (step.name == "D") step.def = construct::FreePoint{Rat(28, 10), Rat(-567, 100)};
    Verdict bad = check_tzitzeica(broken, ScalarMode::exact(), 0.0);
    CHECK(bad.outcome == Verdict::Outcome::Falsified);
}

TEST_CASE("witness side pairs are exactly equal") {
    ConstructionProgram p = tzitzeica_program(witness());
    SidePairReport pairs = parallelogram_side_report(p, ScalarMode::exact());
    REQUIRE(pairs.rows.size() == 3);
    for (const auto& row : pairs.rows) {
        CHECK(row.exactly_equal);
        CHECK(row.difference == 0.0);
    }
    CHECK(pairs.to_text().find("exactly 0") != std::string::npos);
}

TEST_CASE("shape mismatch errors") {
    ConstructionProgram p =
        construct::parse_program("point A = free(0,0)\ncircle c = circle(A, 5)");
    CHECK_THROWS_AS(check_tzitzeica(p, ScalarMode::exact(), 0.0), Error);
    try {
        check_tzitzeica(p, ScalarMode::exact(), 0.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ShapeMismatch);
    }
}

TEST_CASE("degenerate evaluation yields a Degenerate verdict") {
    // collapse two centers onto each other: the glider parameters coincide
    ConstructionProgram p = tzitzeica_program(witness());
    std::string text = construct::print_program(p);
    // replace B's parameter with A's
    auto pos = text.find("point_on(k, 2)");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 14, "point_on(k, 1/2)");
    ConstructionProgram q = construct::parse_program(text);
    Verdict v = check_tzitzeica(q, ScalarMode::exact(), 0.0);
    CHECK(v.outcome == Verdict::Outcome::Degenerate);
    CHECK(!v.reason.empty());
}

TEST_CASE("monotone deviation on fig7 for k = 2,4,6,8") {
    ConstructionProgram p = construct::parse_program(read_file("programs/fig7.geo"));
    double prev = 1e18;
    for (unsigned k : {2u, 4u, 6u, 8u}) {
        construct::DeviationReport r = construct::deviation_report(p, k);
        CHECK(r.max_deviation <= prev);
        prev = r.max_deviation;
    }
}

TEST_CASE("builtin checks") {
    ConstructionProgram p = tzitzeica_program(witness());
    EvalTrace trace = construct::evaluate(p, ScalarMode::exact());
    auto tz = find_check("tzitzeica", 0.25);
    CHECK(tz(p, trace, ScalarMode::exact()).pass);
    auto nd = find_check("nondegenerate", 0.25);
    CHECK(nd(p, trace, ScalarMode::exact()).pass);

    ConstructionProgram rh = construct::parse_program(read_file("programs/rhombus.geo"));
    EvalTrace rht = construct::evaluate(rh, ScalarMode::exact());
    auto rc = find_check("rhombus", 0.25);
    CHECK(rc(rh, rht, ScalarMode::exact()).pass);

    CHECK_THROWS_AS(find_check("bogus", 0.25), Error);
}

TEST_CASE("sweep a Tzitzeica center along its constraint circle") {
    // same shape as the witness but with A as a free point, so the sweep
    // can rotate it; the arc keeps A exactly on the constraint circle and
    // inside the branch-stable range
    ConstructionProgram p = construct::parse_program(
        "point O = free(0, 0)\n"
        "point A = free(4, 3)\n"
        "circle k = circle(O, 5)\n"
        "point B = point_on(k, 2)\n"
        "point C = point_on(k, -1/3)\n"
        "circle cA = circle_through(A, O)\n"
        "circle cB = circle_through(B, O)\n"
        "circle cC = circle_through(C, O)\n"
        "point MAB = intersect(cA, cB, second)\n"
        "point MAC = intersect(cA, cC, first)\n"
        "point MBC = intersect(cB, cC, first)\n"
        "circle w = circumcircle(MAB, MAC, MBC)\n");
    construct::PathSpec path = construct::parse_path_spec("arc(0,0,5,1/3,2/3)");
    std::vector<std::pair<std::string, construct::NamedCheck>> used;
    used.emplace_back("tzitzeica", find_check("tzitzeica", 0.0));
    construct::SweepReport r =
        construct::perturb_sweep(p, "A", path, 20, ScalarMode::exact(), used);
    REQUIRE(r.steps.size() == 20);
    CHECK(r.passed == 20);
    CHECK(r.to_text().find("20/20") != std::string::npos);
}
