#pragma once

#include "geolab/analysis/expr.hpp"
#include "geolab/interval.hpp"

namespace geolab::analysis {

// Extended interval evaluation over a cell: tracks partial domains (the
// expression may be undefined at some points of X) and range saturation
// of sin/cos over full periods. `box` always encloses the image of the
// defined part; endpoints may be infinite.
struct IntervalEval {
    Interval box;
    bool fully_defined = true;
    bool undefined_everywhere = false;
    bool saturated = false;
};

IntervalEval eval_interval_ext(const ExprPtr& e, const Interval& x);

// Enclosure of the image of e over X intersected with its domain;
// DomainViolation when X lies entirely outside the domain.
Interval eval_interval(const ExprPtr& e, const Interval& x);

} // namespace geolab::analysis
