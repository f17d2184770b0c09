#pragma once

#include "geolab/rational.hpp"

#include <string>

namespace geolab {

// A decimal value scaled/10^places, produced by display rounding. Exact:
// deviations against exact values are computed from the rational form.
struct Decimal {
    Int scaled;      // value = scaled / 10^places
    unsigned places = 0;

    Rat to_rat() const {
        Rat q(scaled, pow10(places));
        q.canonicalize();
        return q;
    }
    double to_double() const { return rat_to_double(to_rat()); }

    // GeoGebra-style display: round at `places`, trailing zeros trimmed
    // ("8.30" prints as "8.3", "5.00" as "5").
    std::string to_string() const;

    bool operator==(const Decimal&) const = default;
};

// Round-half-away-from-zero at k decimals. Ties are decided on the exact
// binary64 value, not its decimal shorthand. Throws NonFinite for inf/nan.
Decimal round_display(double x, unsigned k);

Decimal round_display_rat(const Rat& x, unsigned k);

} // namespace geolab
