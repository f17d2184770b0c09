#pragma once

#include "geolab/errors.hpp"
#include "geolab/rational.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace geolab::construct {

enum class Branch { First, Second };

enum class ObjectKind { Point, Num, Circle, Segment, Polygon };

const char* object_kind_name(ObjectKind k);

struct FreePoint {
    Rat x, y;
    bool operator==(const FreePoint&) const = default;
};
struct FreeNum {
    Rat value;
    bool operator==(const FreeNum&) const = default;
};
// circle(center, r): rational literal radius or a reference to a num
struct CircleCR {
    std::string center;
    std::optional<std::string> radius_ref;
    Rat radius;
    bool operator==(const CircleCR&) const = default;
};
struct CircleThrough {
    std::string center, through;
    bool operator==(const CircleThrough&) const = default;
};
struct Intersect {
    std::string c1, c2;
    Branch branch = Branch::First;
    bool operator==(const Intersect&) const = default;
};
// point_on(circle, t): rational tan-half-angle glider, nullopt = inf
struct Glider {
    std::string circle;
    std::optional<Rat> param;
    bool operator==(const Glider&) const = default;
};
struct SegmentDef {
    std::string p, q;
    bool operator==(const SegmentDef&) const = default;
};
struct PolygonDef {
    std::vector<std::string> vertices;
    bool operator==(const PolygonDef&) const = default;
};
struct CircumcircleDef {
    std::string p1, p2, p3;
    bool operator==(const CircumcircleDef&) const = default;
};
struct MidpointDef {
    std::string p, q;
    bool operator==(const MidpointDef&) const = default;
};

using StepDef = std::variant<FreePoint, FreeNum, CircleCR, CircleThrough, Intersect, Glider,
                             SegmentDef, PolygonDef, CircumcircleDef, MidpointDef>;

struct Step {
    std::string name;
    ObjectKind kind = ObjectKind::Point;
    StepDef def;
    int line = 0;

    bool is_free() const {
        return std::holds_alternative<FreePoint>(def) || std::holds_alternative<FreeNum>(def);
    }
    bool operator==(const Step& o) const {
        return name == o.name && kind == o.kind && def == o.def;
    }
};

// Ordered, name-unique, backward-referencing step list (a DAG by
// construction; the parser rejects forward and cyclic references).
struct ConstructionProgram {
    std::vector<Step> steps;

    const Step* find(const std::string& name) const;
    std::optional<std::size_t> index_of(const std::string& name) const;
    bool operator==(const ConstructionProgram&) const = default;
};

// Line-oriented text format: `<kind> <name> = <constructor>(args)` with
// `#` comments. Errors carry line/column and the expected-token set.
ConstructionProgram parse_program(const std::string& text);

// Canonical form: rationals as p/q, one step per line. parse(print(p)) == p.
std::string print_program(const ConstructionProgram& program);

} // namespace geolab::construct
