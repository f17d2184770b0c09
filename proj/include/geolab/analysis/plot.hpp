#pragma once

#include "geolab/analysis/expr.hpp"
#include "geolab/interval.hpp"

#include <vector>

namespace geolab::analysis {

// Output of the adaptive plotter. Polylines carry point samples of
// resolved cells; gaps are x-ranges where the function is (or may be)
// undefined; boxes are honest range enclosures for cells that stay
// oscillation-saturated at the depth limit, instead of fake polylines.
struct PlotData {
    struct Box {
        double x0, x1, y0, y1;
    };
    std::vector<std::vector<std::pair<double, double>>> polylines;
    std::vector<std::pair<double, double>> gaps; // merged x ranges
    std::vector<Box> boxes;
    Interval domain;
    Interval y_clip;
    double tol = 1e-3;
    int max_depth = 24;
};

PlotData adaptive_plot(const ExprPtr& e, const Interval& domain, const Interval& y_clip,
                       double tol, int max_depth);

} // namespace geolab::analysis
