#pragma once

namespace geolab {

// The three evaluation pipelines the kernel runs under. DisplayRounded(k)
// snaps free-object inputs and reported values to k decimals
// (half-away-from-zero) around a binary64 computation — the model of the
// display behavior the deviation reports quantify.
enum class ScalarModeKind { Exact, Float, DisplayRounded };

struct ScalarMode {
    ScalarModeKind kind = ScalarModeKind::Exact;
    unsigned decimals = 2;

    static ScalarMode exact() { return {ScalarModeKind::Exact, 2}; }
    static ScalarMode floating() { return {ScalarModeKind::Float, 2}; }
    static ScalarMode display(unsigned k = 2) { return {ScalarModeKind::DisplayRounded, k}; }

    bool is_exact() const { return kind == ScalarModeKind::Exact; }
    const char* name() const {
        switch (kind) {
            case ScalarModeKind::Exact: return "exact";
            case ScalarModeKind::Float: return "float";
            case ScalarModeKind::DisplayRounded: return "display";
        }
        return "?";
    }
};

} // namespace geolab
