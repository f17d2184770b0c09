#pragma once

#include "geolab/errors.hpp"
#include "geolab/interval.hpp"
#include "geolab/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace geolab {

namespace detail {

// Tower of real quadratic extensions Q(sqrt(g0))(sqrt(g1))... Each
// generator is given by its coordinates (size 2^i) over the prefix basis.
// Invariants: generators are positive, not squares in their prefix field,
// and scaled to integer coordinates with squarefree content.
struct Tower {
    std::vector<std::vector<Rat>> gens;
    std::size_t depth() const { return gens.size(); }
    bool operator==(const Tower&) const = default;
};

using TowerPtr = std::shared_ptr<const Tower>;

} // namespace detail

// A constructible real: vector of 2^k exact rational coordinates over the
// basis of an extension tower. Canonical form: unused generators pruned,
// rational-radicand generators sorted; zero has the empty tower and a
// single zero coordinate, so the structural zero test is exact.
class ExactScalar {
  public:
    ExactScalar();
    ExactScalar(long n);
    explicit ExactScalar(const Rat& q);

    static constexpr std::size_t kMaxTowerDepth = 8;
    static constexpr unsigned kSignPrecisionCap = 1u << 16;

    bool is_zero() const;
    bool is_rational() const { return tower_->depth() == 0; }
    const Rat& as_rational() const; // requires is_rational()

    // Exact sign: structural zero test, then adaptive rational-interval
    // refinement with doubling precision (terminates for nonzero values;
    // the 2^16-bit cap raises PrecisionCapExceeded rather than guessing).
    int sign() const;

    // Enclosure of width <= 2^-precision (up to binary64 granularity).
    Interval to_interval(unsigned precision) const;
    double to_double() const;

    std::size_t tower_depth() const { return tower_->depth(); }

    // Exact form for rationals and depth-1 values ("3/2 + 5*sqrt(2)");
    // deeper values print as a '~'-prefixed decimal approximation.
    std::string to_string() const;

    ExactScalar operator-() const;
    friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
    friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
    // DivisionByZero when b == 0 (decided exactly).
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b);

    ExactScalar& operator+=(const ExactScalar& b) { return *this = *this + b; }
    ExactScalar& operator-=(const ExactScalar& b) { return *this = *this - b; }
    ExactScalar& operator*=(const ExactScalar& b) { return *this = *this * b; }
    ExactScalar& operator/=(const ExactScalar& b) { return *this = *this / b; }

    bool operator==(const ExactScalar& b) const { return (*this - b).is_zero(); }

    // Identical canonical representation (same tower, same coordinates) —
    // stronger than ==; this is what the normal-form property tests check.
    bool identical(const ExactScalar& b) const;

    // Nonnegative square root. NegativeRadicand when sign < 0; extends the
    // tower by at most one generator, none when the value is a square in
    // its own field (decided symbolically).
    ExactScalar sqrt() const;

    friend ExactScalar sqrt(const ExactScalar& a) { return a.sqrt(); }
    friend int sign(const ExactScalar& a) { return a.sign(); }
    friend ExactScalar abs(const ExactScalar& a) { return a.sign() < 0 ? -a : a; }

  private:
    ExactScalar(detail::TowerPtr t, std::vector<Rat> coords);

    detail::TowerPtr tower_;
    std::vector<Rat> coords_; // size 1 << depth

    friend struct ExactScalarOps;
};

int compare(const ExactScalar& a, const ExactScalar& b); // sign(a - b)

} // namespace geolab
