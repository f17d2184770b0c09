#pragma once

#include "geolab/analysis/limits.hpp"
#include "geolab/analysis/plot.hpp"
#include "geolab/construct/eval.hpp"
#include "geolab/theorems.hpp"

#include <json.hpp>

namespace geolab::report {

using Json = nlohmann::ordered_json;

// "schema": "trace/1"
Json trace_json(const construct::EvalTrace& trace);
// trace/1 with exact_value and deviation per object
Json deviation_json(const construct::DeviationReport& report);
// "schema": "verdict/1"
Json verdict_json(const theorems::Verdict& verdict);
// "schema": "plot/1"
Json plot_json(const analysis::PlotData& plot);

Json sweep_json(const construct::SweepReport& report);
Json limit_json(const analysis::LimitVerdict& verdict);

} // namespace geolab::report
