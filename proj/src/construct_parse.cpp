#include "geolab/construct/program.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace geolab::construct {

const char* object_kind_name(ObjectKind k) {
    switch (k) {
        case ObjectKind::Point: return "point";
        case ObjectKind::Num: return "num";
        case ObjectKind::Circle: return "circle";
        case ObjectKind::Segment: return "segment";
        case ObjectKind::Polygon: return "polygon";
    }
    return "?";
}

const Step* ConstructionProgram::find(const std::string& name) const {
    for (const Step& s : steps)
        if (s.name == name) return &s;
    return nullptr;
}

std::optional<std::size_t> ConstructionProgram::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < steps.size(); ++i)
        if (steps[i].name == name) return i;
    return std::nullopt;
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;
    int line;

    [[noreturn]] void fail(const std::string& expected) const {
        std::ostringstream os;
        os << "line " << line << ", col " << pos + 1 << ": expected " << expected;
        if (pos < text.size())
            os << ", got '" << text[pos] << "'";
        else
            os << ", got end of line";
        throw Error(ErrorKind::SyntaxError, os.str());
    }

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!eat(c)) fail(what);
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) fail("an identifier");
        return text.substr(start, pos - start);
    }

    Rat number() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' ||
                text[pos] == '/'))
            ++pos;
        auto q = rat_from_string(text.substr(start, pos - start));
        if (!q) {
            pos = start;
            fail("a number (integer, decimal or p/q)");
        }
        return *q;
    }

    bool peek_number() {
        skip_ws();
        if (pos >= text.size()) return false;
        char c = text[pos];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.';
    }
};

struct Parser {
    std::map<std::string, std::size_t> defined;   // name -> step index
    std::map<std::string, int> later_lines;       // names defined later (second pass)
    ConstructionProgram program;
    std::string current_name;

    ObjectKind ref_kind(Cursor& cur, const std::string& name) const {
        if (name == current_name)
            throw Error(ErrorKind::CyclicDefinition,
                        "line " + std::to_string(cur.line) + ": '" + name +
                            "' refers to itself");
        auto it = defined.find(name);
        if (it == defined.end()) {
            if (later_lines.count(name))
                throw Error(ErrorKind::ForwardReference,
                            "line " + std::to_string(cur.line) + ": '" + name +
                                "' is defined later (line " +
                                std::to_string(later_lines.at(name)) + ")");
            throw Error(ErrorKind::UnknownReference,
                        "line " + std::to_string(cur.line) + ": unknown object '" + name + "'");
        }
        return program.steps[it->second].kind;
    }

    std::string ref(Cursor& cur, ObjectKind want) {
        std::string name = cur.ident();
        ObjectKind got = ref_kind(cur, name);
        if (got != want)
            throw Error(ErrorKind::SyntaxError,
                        "line " + std::to_string(cur.line) + ": '" + name + "' is a " +
                            object_kind_name(got) + ", expected a " + object_kind_name(want));
        return name;
    }

    StepDef constructor(Cursor& cur, ObjectKind kind) {
        std::string ctor = cur.ident();
        cur.expect('(', "'('");
        StepDef def = body(cur, kind, ctor);
        cur.expect(')', "')'");
        return def;
    }

    StepDef body(Cursor& cur, ObjectKind kind, const std::string& ctor) {
        switch (kind) {
            case ObjectKind::Point: {
                if (ctor == "free") {
                    Rat x = cur.number();
                    cur.expect(',', "','");
                    Rat y = cur.number();
                    return FreePoint{x, y};
                }
                if (ctor == "intersect") {
                    std::string c1 = ref(cur, ObjectKind::Circle);
                    cur.expect(',', "','");
                    std::string c2 = ref(cur, ObjectKind::Circle);
                    cur.expect(',', "','");
                    std::string b = cur.ident();
                    if (b != "first" && b != "second") cur.fail("'first' or 'second'");
                    return Intersect{c1, c2, b == "first" ? Branch::First : Branch::Second};
                }
                if (ctor == "point_on") {
                    std::string c = ref(cur, ObjectKind::Circle);
                    cur.expect(',', "','");
                    if (cur.peek_number()) return Glider{c, cur.number()};
                    std::string tok = cur.ident();
                    if (tok != "inf") cur.fail("a rational parameter or 'inf'");
                    return Glider{c, std::nullopt};
                }
                if (ctor == "midpoint") {
                    std::string p = ref(cur, ObjectKind::Point);
                    cur.expect(',', "','");
                    return MidpointDef{p, ref(cur, ObjectKind::Point)};
                }
                cur.fail("'free', 'intersect', 'point_on' or 'midpoint'");
            }
            case ObjectKind::Num: {
                if (ctor == "param") return FreeNum{cur.number()};
                cur.fail("'param'");
            }
            case ObjectKind::Circle: {
                if (ctor == "circle") {
                    std::string center = ref(cur, ObjectKind::Point);
                    cur.expect(',', "','");
                    if (cur.peek_number()) return CircleCR{center, std::nullopt, cur.number()};
                    return CircleCR{center, ref(cur, ObjectKind::Num), Rat(0)};
                }
                if (ctor == "circle_through") {
                    std::string center = ref(cur, ObjectKind::Point);
                    cur.expect(',', "','");
                    return CircleThrough{center, ref(cur, ObjectKind::Point)};
                }
                if (ctor == "circumcircle") {
                    std::string p1 = ref(cur, ObjectKind::Point);
                    cur.expect(',', "','");
                    std::string p2 = ref(cur, ObjectKind::Point);
                    cur.expect(',', "','");
                    return CircumcircleDef{p1, p2, ref(cur, ObjectKind::Point)};
                }
                cur.fail("'circle', 'circle_through' or 'circumcircle'");
            }
            case ObjectKind::Segment: {
                if (ctor == "segment") {
                    std::string p = ref(cur, ObjectKind::Point);
                    cur.expect(',', "','");
                    return SegmentDef{p, ref(cur, ObjectKind::Point)};
                }
                cur.fail("'segment'");
            }
            case ObjectKind::Polygon: {
                if (ctor == "polygon") {
                    PolygonDef def;
                    def.vertices.push_back(ref(cur, ObjectKind::Point));
                    while (cur.eat(',')) def.vertices.push_back(ref(cur, ObjectKind::Point));
                    if (def.vertices.size() < 3)
                        throw Error(ErrorKind::SyntaxError,
                                    "line " + std::to_string(cur.line) +
                                        ": polygon needs at least 3 vertices");
                    return def;
                }
                cur.fail("'polygon'");
            }
        }
        cur.fail("a constructor");
    }
};

std::string strip_comment(const std::string& line) {
    auto hash = line.find('#');
    std::string s = hash == std::string::npos ? line : line.substr(0, hash);
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

std::optional<ObjectKind> kind_from_word(const std::string& w) {
    if (w == "point") return ObjectKind::Point;
    if (w == "num") return ObjectKind::Num;
    if (w == "circle") return ObjectKind::Circle;
    if (w == "segment") return ObjectKind::Segment;
    if (w == "polygon") return ObjectKind::Polygon;
    return std::nullopt;
}

} // namespace

ConstructionProgram parse_program(const std::string& text) {
    // first pass: names and their lines, for forward-reference diagnostics
    Parser parser;
    {
        std::istringstream in(text);
        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string body = strip_comment(raw);
            Cursor cur{body, 0, line_no};
            if (cur.at_end()) continue;
            std::string kind_word = cur.ident();
            if (!kind_from_word(kind_word)) continue;
            std::string name = cur.ident();
            if (!parser.later_lines.count(name)) parser.later_lines[name] = line_no;
        }
    }
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string body = strip_comment(raw);
        Cursor cur{body, 0, line_no};
        if (cur.at_end()) continue;
        std::string kind_word = cur.ident();
        auto kind = kind_from_word(kind_word);
        if (!kind) cur.fail("'point', 'num', 'circle', 'segment' or 'polygon'");
        std::string name = cur.ident();
        if (parser.defined.count(name))
            throw Error(ErrorKind::DuplicateName,
                        "line " + std::to_string(line_no) + ": '" + name + "' already defined");
        cur.expect('=', "'='");
        parser.current_name = name;
        Step step;
        step.name = name;
        step.kind = *kind;
        step.line = line_no;
        step.def = parser.constructor(cur, *kind);
        if (!cur.at_end()) cur.fail("end of line");
        parser.defined[name] = parser.program.steps.size();
        parser.program.steps.push_back(std::move(step));
    }
    return parser.program;
}

namespace {

std::string num_str(const Rat& q) { return rat_to_string(q); }

struct PrintVisitor {
    std::ostringstream& os;
    void operator()(const FreePoint& p) { os << "free(" << num_str(p.x) << ", " << num_str(p.y) << ")"; }
    void operator()(const FreeNum& n) { os << "param(" << num_str(n.value) << ")"; }
    void operator()(const CircleCR& c) {
        os << "circle(" << c.center << ", ";
        if (c.radius_ref)
            os << *c.radius_ref;
        else
            os << num_str(c.radius);
        os << ")";
    }
    void operator()(const CircleThrough& c) {
        os << "circle_through(" << c.center << ", " << c.through << ")";
    }
    void operator()(const Intersect& i) {
        os << "intersect(" << i.c1 << ", " << i.c2 << ", "
           << (i.branch == Branch::First ? "first" : "second") << ")";
    }
    void operator()(const Glider& g) {
        os << "point_on(" << g.circle << ", ";
        if (g.param)
            os << num_str(*g.param);
        else
            os << "inf";
        os << ")";
    }
    void operator()(const SegmentDef& s) { os << "segment(" << s.p << ", " << s.q << ")"; }
    void operator()(const PolygonDef& p) {
        os << "polygon(";
        for (std::size_t i = 0; i < p.vertices.size(); ++i) {
            if (i) os << ", ";
            os << p.vertices[i];
        }
        os << ")";
    }
    void operator()(const CircumcircleDef& c) {
        os << "circumcircle(" << c.p1 << ", " << c.p2 << ", " << c.p3 << ")";
    }
    void operator()(const MidpointDef& m) { os << "midpoint(" << m.p << ", " << m.q << ")"; }
};

} // namespace

std::string print_program(const ConstructionProgram& program) {
    std::ostringstream os;
    for (const Step& s : program.steps) {
        os << object_kind_name(s.kind) << " " << s.name << " = ";
        std::visit(PrintVisitor{os}, s.def);
        os << "\n";
    }
    return os.str();
}

} // namespace geolab::construct
