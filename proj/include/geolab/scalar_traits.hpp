#pragma once

#include "geolab/exact_scalar.hpp"
#include "geolab/rational.hpp"

#include <cmath>

namespace geolab {

// The one abstraction the kernel is parameterized over: exact constructible
// reals or plain binary64 (Float and DisplayRounded modes share the latter).
template <class S>
struct scalar_ops;

template <>
struct scalar_ops<double> {
    static constexpr bool exact = false;
    static double from_rat(const Rat& q) { return rat_to_double(q); }
    static double from_long(long n) { return static_cast<double>(n); }
    static double sqrt(double x) { return std::sqrt(x < 0 ? 0.0 : x); }
    static int sign(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
    static double abs(double x) { return std::abs(x); }
    // GeoGebra-style float behavior: near-zero discriminants count as
    // tangent; everything else is compared without epsilon.
    static int disc_sign(double d) { return std::abs(d) < 1e-12 ? 0 : (d > 0 ? 1 : -1); }
    static double to_double(double x) { return x; }
};

template <>
struct scalar_ops<ExactScalar> {
    static constexpr bool exact = true;
    static ExactScalar from_rat(const Rat& q) { return ExactScalar(q); }
    static ExactScalar from_long(long n) { return ExactScalar(n); }
    static ExactScalar sqrt(const ExactScalar& x) { return x.sqrt(); }
    static int sign(const ExactScalar& x) { return x.sign(); }
    static ExactScalar abs(const ExactScalar& x) { return x.sign() < 0 ? -x : x; }
    static int disc_sign(const ExactScalar& d) { return d.sign(); }
    static double to_double(const ExactScalar& x) { return x.to_double(); }
};

} // namespace geolab
