#pragma once

#include "geolab/analysis/plot.hpp"
#include "geolab/construct/eval.hpp"

#include <string>

namespace geolab::report {

// Deterministic SVG 1.1: stable element order, 6-decimal coordinates, so
// outputs are byte-stable across runs.
struct SvgStyle {
    int width = 800;
    int height = 600;
    int margin = 40;
};

std::string svg_plot(const analysis::PlotData& plot, const SvgStyle& style = {});

std::string svg_trace(const construct::EvalTrace& trace, const SvgStyle& style = {});

} // namespace geolab::report
