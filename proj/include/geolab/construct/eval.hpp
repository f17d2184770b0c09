#pragma once

#include "geolab/construct/program.hpp"
#include "geolab/decimal.hpp"
#include "geolab/geom.hpp"
#include "geolab/scalar_mode.hpp"

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace geolab::construct {

enum class Status { Ok, Failed, Poisoned };

template <class S>
struct SegmentV {
    geom::Point<S> p, q;
    S length;
};

template <class S>
struct PolygonV {
    std::vector<geom::Point<S>> vertices;
    S area;
};

template <class S>
using ObjectValue = std::variant<std::monostate, geom::Point<S>, geom::Circle<S>, SegmentV<S>,
                                 PolygonV<S>, S>;

template <class S>
struct TraceObject {
    std::string name;
    ObjectKind kind = ObjectKind::Point;
    bool free_object = false;
    Status status = Status::Ok;
    std::string detail; // error kind for Failed, source object for Poisoned
    ObjectValue<S> value;

    bool ok() const { return status == Status::Ok; }
};

template <class S>
struct TypedTrace {
    std::vector<TraceObject<S>> objects;
    const TraceObject<S>* find(const std::string& name) const {
        for (const auto& o : objects)
            if (o.name == name) return &o;
        return nullptr;
    }
};

// Evaluation result under one ScalarMode: exact traces hold ExactScalar
// values, float/display traces hold binary64 (display snaps free inputs
// before and reported values after).
struct EvalTrace {
    ScalarMode mode;
    std::variant<TypedTrace<ExactScalar>, TypedTrace<double>> typed;

    const TypedTrace<ExactScalar>& exact() const {
        return std::get<TypedTrace<ExactScalar>>(typed);
    }
    const TypedTrace<double>& approx() const { return std::get<TypedTrace<double>>(typed); }
    bool all_ok() const;
    bool has_internal_limit_failure() const;
};

EvalTrace evaluate(const ConstructionProgram& program, ScalarMode mode);

// Fig.-7 style two-section listing. Exact mode prints exact values with a
// k-decimal approximation alongside.
std::string protocol_report(const EvalTrace& trace);

struct DeviationRow {
    std::string object;
    std::string field;          // "x", "y", "radius_sq", "length", "area", "value"
    std::string exact_form;     // exact value (rational/radical form)
    double exact_approx = 0.0;
    Decimal display;            // DisplayRounded(k) pipeline result
    double deviation = 0.0;     // |exact - display| (upper bound)
    std::string deviation_exact; // exact rational deviation when available
};

struct DeviationReport {
    unsigned decimals = 2;
    std::vector<DeviationRow> rows;
    double max_deviation = 0.0;
    std::string to_text() const;
};

// Exact run vs DisplayRounded(k) run, one row per numeric trace value.
DeviationReport deviation_report(const ConstructionProgram& program, unsigned k);

struct PathSpec {
    enum class Kind { Line, Arc } kind = Kind::Line;
    // line: from -> to; arc: glider sweep t0 -> t1 on circle(center, r)
    Rat x0, y0, x1, y1;
    Rat radius, t0, t1;
    geom::Point<ExactScalar> at(const Rat& s) const; // s in [0, 1]
};

// "line(x0,y0,x1,y1)" | "arc(cx,cy,r,t0,t1)"
PathSpec parse_path_spec(const std::string& text);

struct CheckResult {
    bool pass = false;
    std::string detail;
};

using NamedCheck =
    std::function<CheckResult(const ConstructionProgram&, const EvalTrace&, ScalarMode)>;

struct SweepStepResult {
    std::size_t index = 0;
    Rat param;
    Rat x, y;
    std::vector<std::pair<std::string, CheckResult>> checks;
    bool all_pass() const;
};

struct SweepReport {
    std::string target;
    std::vector<SweepStepResult> steps;
    std::size_t passed = 0;
    std::string to_text() const;
};

// Re-evaluates the program with the target free point moved along the
// path at `steps` evenly spaced parameters, running each named check.
SweepReport perturb_sweep(const ConstructionProgram& program, const std::string& target,
                          const PathSpec& path, std::size_t steps, ScalarMode mode,
                          const std::vector<std::pair<std::string, NamedCheck>>& checks);

} // namespace geolab::construct
