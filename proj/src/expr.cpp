#include "geolab/analysis/expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace geolab::analysis {

ExprPtr Expr::var() {
    auto e = std::make_shared<Expr>();
    e->kind = NodeKind::Var;
    return e;
}

ExprPtr Expr::lit_rat(const Rat& q) {
    auto e = std::make_shared<Expr>();
    e->kind = NodeKind::Lit;
    e->lit = q;
    e->lit.canonicalize();
    return e;
}

ExprPtr Expr::unary(NodeKind k, ExprPtr x) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(x);
    return e;
}

ExprPtr Expr::binary(NodeKind k, ExprPtr x, ExprPtr y) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(x);
    e->b = std::move(y);
    return e;
}

ExprPtr Expr::pow_int(ExprPtr x, long n) {
    if (n == 0) return lit_rat(Rat(1));
    if (n == 1) return x;
    if (x->kind == NodeKind::Lit && n > 1) {
        Rat v(1);
        for (long i = 0; i < n; ++i) v *= x->lit;
        return lit_rat(v);
    }
    if (n < 0) return binary(NodeKind::Div, lit_rat(Rat(1)), pow_int(std::move(x), -n));
    auto e = std::make_shared<Expr>();
    e->kind = NodeKind::Pow;
    e->a = std::move(x);
    e->power = n;
    return e;
}

bool structurally_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case NodeKind::Var: return true;
        case NodeKind::Lit: return a->lit == b->lit;
        case NodeKind::Pow:
            return a->power == b->power && structurally_equal(a->a, b->a);
        case NodeKind::Neg:
        case NodeKind::Sin:
        case NodeKind::Cos:
        case NodeKind::Exp:
        case NodeKind::Ln:
        case NodeKind::Abs:
        case NodeKind::Sqrt:
            return structurally_equal(a->a, b->a);
        default:
            return structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
    }
}

namespace {

struct ExprParser {
    const std::string& text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& expected) const {
        std::ostringstream os;
        os << "col " << pos + 1 << ": expected " << expected;
        if (pos < text.size())
            os << ", got '" << text[pos] << "'";
        else
            os << ", got end of input";
        throw Error(ErrorKind::SyntaxError, os.str());
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    // power a^b: right associative, normalized unless b is an integer
    ExprPtr parse_sum() {
        ExprPtr lhs = parse_term();
        for (;;) {
            if (eat('+'))
                lhs = Expr::binary(NodeKind::Add, lhs, parse_term());
            else if (eat('-'))
                lhs = Expr::binary(NodeKind::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        for (;;) {
            if (eat('*'))
                lhs = Expr::binary(NodeKind::Mul, lhs, parse_unary());
            else if (eat('/'))
                lhs = Expr::binary(NodeKind::Div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    ExprPtr parse_unary() {
        if (eat('-')) return Expr::unary(NodeKind::Neg, parse_unary());
        if (eat('+')) return parse_unary();
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (!eat('^')) return base;
        // right associative: exponent parses unary-then-power
        ExprPtr expo = parse_unary();
        if (expo->kind == NodeKind::Lit && expo->lit.get_den() == 1 &&
            expo->lit.get_num().fits_slong_p())
            return Expr::pow_int(base, expo->lit.get_num().get_si());
        if (expo->kind == NodeKind::Neg && expo->a->kind == NodeKind::Lit &&
            expo->a->lit.get_den() == 1 && expo->a->lit.get_num().fits_slong_p())
            return Expr::pow_int(base, -expo->a->lit.get_num().get_si());
        // a^b -> exp(b*ln(a))
        return Expr::unary(NodeKind::Exp,
                           Expr::binary(NodeKind::Mul, expo, Expr::unary(NodeKind::Ln, base)));
    }

    ExprPtr parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("an expression");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            ExprPtr e = parse_sum();
            if (!eat(')')) fail("')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
        fail("a number, name or '('");
    }

    ExprPtr parse_number() {
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
            ++pos;
        auto q = rat_from_string(text.substr(start, pos - start));
        if (!q) {
            pos = start;
            fail("a number");
        }
        return Expr::lit_rat(*q);
    }

    ExprPtr parse_name() {
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        std::string name = text.substr(start, pos - start);
        if (name == "x") return Expr::var();
        if (name == "pi")
            fail("a known name ('x' or a function)"); // no transcendental literals
        static const struct {
            const char* name;
            NodeKind kind;
        } fns[] = {{"sin", NodeKind::Sin}, {"cos", NodeKind::Cos}, {"exp", NodeKind::Exp},
                   {"ln", NodeKind::Ln},   {"abs", NodeKind::Abs}, {"sqrt", NodeKind::Sqrt}};
        for (const auto& f : fns) {
            if (name == f.name) {
                if (!eat('(')) fail("'(' after function name");
                ExprPtr arg = parse_sum();
                if (!eat(')')) fail("')'");
                return Expr::unary(f.kind, arg);
            }
        }
        pos = start;
        fail("a known name ('x' or a function)");
    }
};

int precedence(NodeKind k) {
    switch (k) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul:
        case NodeKind::Div: return 2;
        case NodeKind::Neg: return 3;
        case NodeKind::Pow: return 4;
        default: return 5;
    }
}

void print_rec(std::ostringstream& os, const ExprPtr& e, int parent_prec) {
    int prec = precedence(e->kind);
    bool need_parens = prec < parent_prec;
    if (need_parens) os << "(";
    switch (e->kind) {
        case NodeKind::Var: os << "x"; break;
        case NodeKind::Lit:
            if (e->lit < 0) {
                os << "(" << rat_to_string(e->lit) << ")";
            } else {
                os << rat_to_string(e->lit);
            }
            break;
        case NodeKind::Neg:
            os << "-";
            print_rec(os, e->a, prec + 1);
            break;
        case NodeKind::Add:
            print_rec(os, e->a, prec);
            os << " + ";
            print_rec(os, e->b, prec + 1);
            break;
        case NodeKind::Sub:
            print_rec(os, e->a, prec);
            os << " - ";
            print_rec(os, e->b, prec + 1);
            break;
        case NodeKind::Mul:
            print_rec(os, e->a, prec);
            os << "*";
            print_rec(os, e->b, prec + 1);
            break;
        case NodeKind::Div:
            print_rec(os, e->a, prec);
            os << "/";
            print_rec(os, e->b, prec + 1);
            break;
        case NodeKind::Pow:
            print_rec(os, e->a, prec + 1);
            os << "^" << e->power;
            break;
        case NodeKind::Sin: os << "sin("; print_rec(os, e->a, 0); os << ")"; break;
        case NodeKind::Cos: os << "cos("; print_rec(os, e->a, 0); os << ")"; break;
        case NodeKind::Exp: os << "exp("; print_rec(os, e->a, 0); os << ")"; break;
        case NodeKind::Ln: os << "ln("; print_rec(os, e->a, 0); os << ")"; break;
        case NodeKind::Abs: os << "abs("; print_rec(os, e->a, 0); os << ")"; break;
        case NodeKind::Sqrt: os << "sqrt("; print_rec(os, e->a, 0); os << ")"; break;
    }
    if (need_parens) os << ")";
}

} // namespace

ExprPtr parse_expr(const std::string& text) {
    ExprParser p{text, 0};
    ExprPtr e = p.parse_sum();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("end of input");
    return e;
}

std::string print_expr(const ExprPtr& e) {
    std::ostringstream os;
    print_rec(os, e, 0);
    return os.str();
}

ExprPtr substitute_reciprocal(const ExprPtr& e) {
    switch (e->kind) {
        case NodeKind::Var:
            return Expr::binary(NodeKind::Div, Expr::lit_rat(Rat(1)), Expr::var());
        case NodeKind::Lit:
            return e;
        case NodeKind::Pow:
            return Expr::pow_int(substitute_reciprocal(e->a), e->power);
        case NodeKind::Neg:
        case NodeKind::Sin:
        case NodeKind::Cos:
        case NodeKind::Exp:
        case NodeKind::Ln:
        case NodeKind::Abs:
        case NodeKind::Sqrt:
            return Expr::unary(e->kind, substitute_reciprocal(e->a));
        default:
            return Expr::binary(e->kind, substitute_reciprocal(e->a),
                                substitute_reciprocal(e->b));
    }
}

std::optional<double> eval_point(const ExprPtr& e, double x) {
    switch (e->kind) {
        case NodeKind::Var: return x;
        case NodeKind::Lit: return rat_to_double(e->lit);
        case NodeKind::Neg: {
            auto v = eval_point(e->a, x);
            return v ? std::optional<double>(-*v) : std::nullopt;
        }
        case NodeKind::Pow: {
            auto v = eval_point(e->a, x);
            if (!v) return std::nullopt;
            double r = 1.0;
            for (long i = 0; i < e->power; ++i) r *= *v;
            return r;
        }
        case NodeKind::Sin:
        case NodeKind::Cos:
        case NodeKind::Exp:
        case NodeKind::Ln:
        case NodeKind::Abs:
        case NodeKind::Sqrt: {
            auto v = eval_point(e->a, x);
            if (!v) return std::nullopt;
            switch (e->kind) {
                case NodeKind::Sin: return std::sin(*v);
                case NodeKind::Cos: return std::cos(*v);
                case NodeKind::Exp: return std::exp(*v);
                case NodeKind::Ln:
                    if (*v <= 0.0) return std::nullopt;
                    return std::log(*v);
                case NodeKind::Abs: return std::abs(*v);
                default:
                    if (*v < 0.0) return std::nullopt;
                    return std::sqrt(*v);
            }
        }
        default: {
            auto lhs = eval_point(e->a, x);
            auto rhs = eval_point(e->b, x);
            if (!lhs || !rhs) return std::nullopt;
            switch (e->kind) {
                case NodeKind::Add: return *lhs + *rhs;
                case NodeKind::Sub: return *lhs - *rhs;
                case NodeKind::Mul: return *lhs * *rhs;
                default:
                    if (*rhs == 0.0) return std::nullopt;
                    return *lhs / *rhs;
            }
        }
    }
}

} // namespace geolab::analysis
