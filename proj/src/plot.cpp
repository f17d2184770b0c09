#include "geolab/analysis/plot.hpp"

#include "geolab/analysis/interval_eval.hpp"

#include <cmath>

namespace geolab::analysis {

namespace {

enum class CellKind { Polyline, Gap, Box };

struct Cell {
    CellKind kind;
    double x0, x1;
    Interval range{0.0, 0.0};
};

struct Plotter {
    const ExprPtr& e;
    double tol;
    int max_depth;
    std::vector<Cell> cells;

    void recurse(double a, double b, int depth) {
        Interval x(a, b);
        IntervalEval ev = eval_interval_ext(e, x);
        if (ev.undefined_everywhere) {
            cells.push_back({CellKind::Gap, a, b, {}});
            return;
        }
        bool resolved = ev.fully_defined && !ev.saturated && ev.box.finite() &&
                        ev.box.width() <= tol;
        if (resolved) {
            cells.push_back({CellKind::Polyline, a, b, ev.box});
            return;
        }
        if (depth >= max_depth) {
            if (!ev.fully_defined) {
                cells.push_back({CellKind::Gap, a, b, {}});
            } else if (ev.saturated || !ev.box.finite()) {
                cells.push_back({CellKind::Box, a, b, ev.box});
            } else {
                // unresolved but tame: plotted as a polyline sample
                cells.push_back({CellKind::Polyline, a, b, ev.box});
            }
            return;
        }
        double mid = 0.5 * (a + b);
        if (!(mid > a && mid < b)) {
            cells.push_back({CellKind::Polyline, a, b, ev.box});
            return;
        }
        recurse(a, mid, depth + 1);
        recurse(mid, b, depth + 1);
    }
};

} // namespace

PlotData adaptive_plot(const ExprPtr& e, const Interval& domain, const Interval& y_clip,
                       double tol, int max_depth) {
    if (!(tol > 0.0)) throw Error(ErrorKind::BadArgument, "plot tolerance must be positive");
    if (!domain.finite() || domain.lo >= domain.hi)
        throw Error(ErrorKind::BadArgument, "plot domain must be a finite interval");
    Plotter plotter{e, tol, max_depth, {}};
    plotter.recurse(domain.lo, domain.hi, 0);

    PlotData out;
    out.domain = domain;
    out.y_clip = y_clip;
    out.tol = tol;
    out.max_depth = max_depth;

    std::vector<std::pair<double, double>>* current = nullptr;
    auto break_polyline = [&] { current = nullptr; };
    for (const Cell& cell : plotter.cells) {
        switch (cell.kind) {
            case CellKind::Gap: {
                if (!out.gaps.empty() && out.gaps.back().second == cell.x0)
                    out.gaps.back().second = cell.x1;
                else
                    out.gaps.emplace_back(cell.x0, cell.x1);
                break_polyline();
                break;
            }
            case CellKind::Box: {
                double lo = std::max(cell.range.lo, y_clip.lo);
                double hi = std::min(cell.range.hi, y_clip.hi);
                if (lo > hi) {
                    // confined outside the window; keep the tiling honest
                    lo = hi = cell.range.hi < y_clip.lo ? y_clip.lo : y_clip.hi;
                }
                out.boxes.push_back({cell.x0, cell.x1, lo, hi});
                break_polyline();
                break;
            }
            case CellKind::Polyline: {
                auto sample = [&](double x) -> std::optional<double> {
                    auto v = eval_point(e, x);
                    if (v && std::isfinite(*v)) return v;
                    return std::nullopt;
                };
                auto v0 = sample(cell.x0);
                auto v1 = sample(cell.x1);
                if (!current) {
                    out.polylines.emplace_back();
                    current = &out.polylines.back();
                    if (v0) current->emplace_back(cell.x0, *v0);
                }
                if (v1)
                    current->emplace_back(cell.x1, *v1);
                else
                    break_polyline();
                break;
            }
        }
    }
    // drop degenerate polylines
    std::erase_if(out.polylines, [](const auto& line) { return line.size() < 2; });
    return out;
}

} // namespace geolab::analysis
