#pragma once

#include "geolab/errors.hpp"
#include "geolab/rational.hpp"

#include <memory>
#include <optional>
#include <string>

namespace geolab::analysis {

enum class NodeKind { Var, Lit, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Ln, Abs, Sqrt };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Univariate AST. Integer powers stay structural; a^b with any other
// exponent is normalized at parse time to exp(b*ln(a)).
struct Expr {
    NodeKind kind = NodeKind::Lit;
    Rat lit;          // Lit
    long power = 0;   // Pow exponent, >= 2 after normalization
    ExprPtr a, b;

    static ExprPtr var();
    static ExprPtr lit_rat(const Rat& q);
    static ExprPtr unary(NodeKind k, ExprPtr x);
    static ExprPtr binary(NodeKind k, ExprPtr x, ExprPtr y);
    static ExprPtr pow_int(ExprPtr x, long n);
};

bool structurally_equal(const ExprPtr& a, const ExprPtr& b);

// Standard precedence (^ above unary minus above */ above +-), ^ is
// right-associative. SyntaxError carries the column.
ExprPtr parse_expr(const std::string& text);

std::string print_expr(const ExprPtr& e);

// x -> 1/x substitution (reduces limits at +-inf to 0+/0-).
ExprPtr substitute_reciprocal(const ExprPtr& e);

// Binary64 evaluation; nullopt for domain violations (division by zero,
// ln of a nonpositive value, sqrt of a negative value). Overflow keeps
// IEEE semantics.
std::optional<double> eval_point(const ExprPtr& e, double x);

} // namespace geolab::analysis
