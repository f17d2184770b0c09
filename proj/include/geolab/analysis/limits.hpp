#pragma once

#include "geolab/analysis/expr.hpp"
#include "geolab/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace geolab::analysis {

enum class LimitPoint { ZeroPlus, ZeroMinus, Zero, PlusInf, MinusInf };

std::optional<LimitPoint> limit_point_from_string(const std::string& s);
const char* limit_point_name(LimitPoint p);

struct LimitVerdict {
    enum class Kind { Certified, NoLimitCertified, NumericEstimate, Undefined, Inconclusive };
    Kind kind = Kind::Inconclusive;
    double value = 0.0;
    std::optional<Rat> exact_value; // simple rational inside the certified enclosure
    std::string headline;           // one-phrase rule summary
    std::vector<std::string> certificate;
    std::vector<double> probes;     // numeric-estimate evidence
    std::string reason;

    std::string to_text() const;
};

// Rule chain, in order: R1 bounded-factor squeeze, R2 Taylor-quotient
// enclosures on shrinking domains, R3 reciprocal substitution for +-inf,
// R4 certified oscillation for sin/cos(c/x), R5 dyadic probe sequence.
// Inconclusive is the safe bottom.
LimitVerdict certify_limit(const ExprPtr& e, LimitPoint at);

} // namespace geolab::analysis
