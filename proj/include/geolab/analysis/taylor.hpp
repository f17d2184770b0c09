#pragma once

#include "geolab/analysis/expr.hpp"
#include "geolab/interval.hpp"

#include <vector>

namespace geolab::analysis {

// Interval-coefficient polynomial in (x - center), pointwise valid on the
// domain: f(x) is contained in sum coeffs[i]*(x-center)^i for every x.
// Overflow powers and remainder bounds are folded into the coefficients,
// so leading exact-zero coefficients can be divided out — the operation
// the limit engine needs.
struct PolyEnclosure {
    Rat center;
    Interval domain; // x range, centered on `center`
    std::vector<Interval> coeffs;

    int degree() const { return int(coeffs.size()) - 1; }
    // number of leading coefficients that are exactly [0, 0]
    int leading_zeros() const;
    // enclosure of the polynomial over x in X (X must lie inside domain)
    Interval eval(const Interval& x) const;
};

// Builds a pointwise enclosure of degree `degree`. Supported nodes:
// +, -, *, / (denominator range excluding 0), sin, cos, exp, ln, integer
// powers. UnsupportedNode for abs/sqrt, DenominatorMayVanish when a
// denominator range contains 0, DomainViolation when ln leaves its domain.
PolyEnclosure poly_enclosure(const ExprPtr& e, const Rat& center, int degree,
                             const Interval& domain);

// The public Taylor model: polynomial part of the requested degree plus a
// single additive remainder valid on the whole domain.
struct TaylorModel {
    Rat point;
    int degree = 0;
    Interval domain;
    std::vector<Interval> coefficients; // 0 .. degree
    Interval remainder;
};

TaylorModel taylor_model(const ExprPtr& e, const Rat& point, int degree,
                         const Interval& domain);

} // namespace geolab::analysis
