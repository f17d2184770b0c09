#include "geolab/report/json_out.hpp"

namespace geolab::report {

namespace {

using construct::ObjectKind;
using construct::Status;

const char* status_str(Status s) {
    switch (s) {
        case Status::Ok: return "ok";
        case Status::Failed: return "error";
        case Status::Poisoned: return "poisoned";
    }
    return "?";
}

template <class S>
double as_number(const S& v) {
    if constexpr (std::is_same_v<S, ExactScalar>)
        return v.to_double();
    else
        return v;
}

template <class S>
Json value_json(const construct::ObjectValue<S>& value) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, geom::Point<S>>) {
                return Json::array({as_number(v.x), as_number(v.y)});
            } else if constexpr (std::is_same_v<T, geom::Circle<S>>) {
                return Json{{"center", Json::array({as_number(v.center.x), as_number(v.center.y)})},
                            {"radius_sq", as_number(v.radius_sq)}};
            } else if constexpr (std::is_same_v<T, construct::SegmentV<S>>) {
                return as_number(v.length);
            } else if constexpr (std::is_same_v<T, construct::PolygonV<S>>) {
                return as_number(v.area);
            } else {
                return as_number(v);
            }
        },
        value);
}

Json exact_value_json(const construct::ObjectValue<ExactScalar>& value) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, geom::Point<ExactScalar>>) {
                return Json::array({v.x.to_string(), v.y.to_string()});
            } else if constexpr (std::is_same_v<T, geom::Circle<ExactScalar>>) {
                return Json{{"center", Json::array({v.center.x.to_string(),
                                                    v.center.y.to_string()})},
                            {"radius_sq", v.radius_sq.to_string()}};
            } else if constexpr (std::is_same_v<T, construct::SegmentV<ExactScalar>>) {
                return v.length.to_string();
            } else if constexpr (std::is_same_v<T, construct::PolygonV<ExactScalar>>) {
                return v.area.to_string();
            } else {
                return v.to_string();
            }
        },
        value);
}

template <class S>
Json typed_objects(const construct::TypedTrace<S>& t, bool with_exact) {
    Json objects = Json::array();
    for (const auto& o : t.objects) {
        Json obj;
        obj["name"] = o.name;
        obj["kind"] = construct::object_kind_name(o.kind);
        obj["free"] = o.free_object;
        std::string status = status_str(o.status);
        if (o.status == Status::Failed) status += ":" + o.detail;
        if (o.status == Status::Poisoned) status += ":" + o.detail;
        obj["status"] = status;
        obj["value"] = o.ok() ? value_json<S>(o.value) : Json(nullptr);
        if constexpr (std::is_same_v<S, ExactScalar>) {
            if (with_exact && o.ok()) obj["exact_value"] = exact_value_json(o.value);
        }
        objects.push_back(std::move(obj));
    }
    return objects;
}

} // namespace

Json trace_json(const construct::EvalTrace& trace) {
    Json out;
    out["schema"] = "trace/1";
    out["mode"] = trace.mode.name();
    if (trace.mode.kind == ScalarModeKind::DisplayRounded)
        out["decimals"] = trace.mode.decimals;
    out["objects"] = std::visit(
        [&](const auto& t) { return typed_objects(t, trace.mode.is_exact()); }, trace.typed);
    return out;
}

Json deviation_json(const construct::DeviationReport& report) {
    Json out;
    out["schema"] = "trace/1";
    out["mode"] = "deviation";
    out["decimals"] = report.decimals;
    Json objects = Json::array();
    // group rows by object, preserving order
    for (std::size_t i = 0; i < report.rows.size();) {
        const std::string& name = report.rows[i].object;
        Json obj;
        obj["name"] = name;
        obj["kind"] = "value";
        obj["status"] = "ok";
        Json value, exact;
        double max_dev = 0.0;
        std::size_t j = i;
        for (; j < report.rows.size() && report.rows[j].object == name; ++j) {
            const auto& row = report.rows[j];
            value[row.field] = row.display.to_double();
            exact[row.field] = row.exact_form;
            max_dev = std::max(max_dev, row.deviation);
        }
        obj["value"] = value;
        obj["exact_value"] = exact;
        obj["deviation"] = max_dev;
        objects.push_back(std::move(obj));
        i = j;
    }
    out["objects"] = std::move(objects);
    out["max_deviation"] = report.max_deviation;
    return out;
}

Json verdict_json(const theorems::Verdict& verdict) {
    Json out;
    out["schema"] = "verdict/1";
    out["outcome"] = verdict.outcome_name();
    out["tolerance"] = verdict.tolerance;
    out["max_residual"] = verdict.max_residual;
    if (!verdict.reason.empty()) out["reason"] = verdict.reason;
    Json evidence;
    for (const auto& [k, v] : verdict.evidence) evidence[k] = v;
    out["evidence"] = std::move(evidence);
    return out;
}

Json plot_json(const analysis::PlotData& plot) {
    Json out;
    out["schema"] = "plot/1";
    out["domain"] = Json::array({plot.domain.lo, plot.domain.hi});
    out["y_clip"] = Json::array({plot.y_clip.lo, plot.y_clip.hi});
    out["tol"] = plot.tol;
    out["max_depth"] = plot.max_depth;
    Json lines = Json::array();
    for (const auto& line : plot.polylines) {
        Json pts = Json::array();
        for (const auto& [x, y] : line) pts.push_back(Json::array({x, y}));
        lines.push_back(std::move(pts));
    }
    out["polylines"] = std::move(lines);
    Json gaps = Json::array();
    for (const auto& [a, b] : plot.gaps) gaps.push_back(Json::array({a, b}));
    out["gaps"] = std::move(gaps);
    Json boxes = Json::array();
    for (const auto& b : plot.boxes) boxes.push_back(Json::array({b.x0, b.x1, b.y0, b.y1}));
    out["boxes"] = std::move(boxes);
    return out;
}

Json sweep_json(const construct::SweepReport& report) {
    Json out;
    out["schema"] = "sweep/1";
    out["target"] = report.target;
    out["passed"] = report.passed;
    out["steps"] = Json::array();
    for (const auto& s : report.steps) {
        Json step;
        step["index"] = s.index;
        step["param"] = rat_to_string(s.param);
        step["at"] = Json::array({rat_to_string(s.x), rat_to_string(s.y)});
        Json checks;
        for (const auto& [name, result] : s.checks) {
            Json c;
            c["pass"] = result.pass;
            if (!result.detail.empty()) c["detail"] = result.detail;
            checks[name] = std::move(c);
        }
        step["checks"] = std::move(checks);
        out["steps"].push_back(std::move(step));
    }
    return out;
}

Json limit_json(const analysis::LimitVerdict& verdict) {
    Json out;
    out["schema"] = "verdict/1";
    const char* kind = nullptr;
    switch (verdict.kind) {
        case analysis::LimitVerdict::Kind::Certified: kind = "Certified"; break;
        case analysis::LimitVerdict::Kind::NoLimitCertified: kind = "NoLimitCertified"; break;
        case analysis::LimitVerdict::Kind::NumericEstimate: kind = "NumericEstimate"; break;
        case analysis::LimitVerdict::Kind::Undefined: kind = "Undefined"; break;
        case analysis::LimitVerdict::Kind::Inconclusive: kind = "Inconclusive"; break;
    }
    out["outcome"] = kind;
    if (verdict.kind == analysis::LimitVerdict::Kind::Certified ||
        verdict.kind == analysis::LimitVerdict::Kind::NumericEstimate) {
        out["value"] = verdict.value;
        if (verdict.exact_value) out["exact_value"] = rat_to_string(*verdict.exact_value);
    }
    if (!verdict.headline.empty()) out["rule"] = verdict.headline;
    if (!verdict.reason.empty()) out["reason"] = verdict.reason;
    Json cert = Json::array();
    for (const auto& line : verdict.certificate) cert.push_back(line);
    out["certificate"] = std::move(cert);
    if (!verdict.probes.empty()) out["probes"] = verdict.probes;
    return out;
}

} // namespace geolab::report
