#pragma once

#include "geolab/construct/eval.hpp"
#include "geolab/geom.hpp"

#include <string>
#include <vector>

namespace geolab::theorems {

// Three congruent circles through a common point O, centers placed on the
// constraint circle by rational tan-half-angle parameters.
struct TzitzeicaConfig {
    Rat ox = Rat(0), oy = Rat(0);
    Rat r_sq = Rat(25);
    Rat t_a, t_b, t_c;
};

struct Verdict {
    enum class Outcome { VerifiedExact, VerifiedWithin, Falsified, Degenerate };
    Outcome outcome = Outcome::Degenerate;
    double tolerance = 0.0;
    double max_residual = 0.0;
    std::string reason;
    std::vector<std::pair<std::string, std::string>> evidence;

    bool verified() const {
        return outcome == Outcome::VerifiedExact || outcome == Outcome::VerifiedWithin;
    }
    const char* outcome_name() const;
    std::string to_text() const;
};

// DSL program for the config: constraint circle, three gliding centers,
// circles through O, second intersections, circumcircle. The branch
// selectors are chosen so the selected intersections avoid O.
// DegenerateConfig for coincident or antipodal centers (tangency at O);
// BadArgument when r_sq has no rational square root (the DSL's circle
// constructor takes a rational radius).
construct::ConstructionProgram tzitzeica_program(const TzitzeicaConfig& config);

// Step 1 lemma: centers and intersection points of two congruent
// intersecting circles form a rhombus. NotCongruent / NotIntersecting on
// precondition violations.
Verdict check_rhombus_lemma(const geom::Circle<ExactScalar>& c1,
                            const geom::Circle<ExactScalar>& c2);

// Tzitzeica check on any structurally matching program (three circles
// with a common point, three pairwise second intersections feeding one
// circumcircle). Exact mode: VerifiedExact iff every residual sign is 0.
// Approximate modes: VerifiedWithin(tolerance) on the max |residual|.
Verdict check_tzitzeica(const construct::ConstructionProgram& program, ScalarMode mode,
                        double tolerance);

struct SidePairRow {
    std::string center_side; // e.g. "A-B"
    std::string outer_side;  // e.g. "F-G"
    double center_length = 0.0;
    double outer_length = 0.0;
    double difference = 0.0;
    bool exactly_equal = false;
};

struct SidePairReport {
    std::vector<SidePairRow> rows;
    std::string to_text() const;
};

// Matched (center-triangle side, outer-triangle side) pairs expected equal
// by the parallelogram argument; exact mode proves each difference is 0.
SidePairReport parallelogram_side_report(const construct::ConstructionProgram& program,
                                         ScalarMode mode);

// Named predicates for sweeps and the CLI: "tzitzeica", "rhombus",
// "nondegenerate".
std::vector<std::pair<std::string, construct::NamedCheck>> builtin_checks(double tolerance);

construct::NamedCheck find_check(const std::string& name, double tolerance);

} // namespace geolab::theorems
