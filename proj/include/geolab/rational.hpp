#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace geolab {

using Rat = mpq_class;
using Int = mpz_class;

// Parses "5", "-2.97", "1/3", "-7/4". Decimal strings become exact
// rationals (2.97 -> 297/100). Returns nullopt on malformed input.
std::optional<Rat> rat_from_string(const std::string& text);

// Exact conversion; every finite double is a rational with a power-of-two
// denominator.
Rat rat_from_double(double x);

// Round-to-nearest(ties to even) conversion, via MPFR.
double rat_to_double(const Rat& q);

// "p/q" with canonical sign, "p" when the denominator is 1.
std::string rat_to_string(const Rat& q);

Int pow10(unsigned k);

// Largest integer s with s*s <= n (n >= 0).
Int isqrt_floor(const Int& n);

// m such that n = s^2 * m with m squarefree, for n > 0. Factors via trial
// division up to `trial_bound` plus perfect-square splitting; composite
// cofactors beyond the bound keep any hidden square factors. Deterministic.
Int squarefree_part(const Int& n, unsigned long trial_bound = 100000);

// Exact square root of a nonnegative rational if it is one.
std::optional<Rat> rat_exact_sqrt(const Rat& q);

} // namespace geolab
