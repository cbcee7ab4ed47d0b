#pragma once

#include <optional>
#include <vector>

#include "fracrd/frac_operator.hpp"

namespace fracrd {

/// Nodal values of all species at one time; row i holds species i.
struct SystemState {
    double t = 0.0;
    Matrix U;  // m x n

    int species() const { return static_cast<int>(U.rows()); }
    int nodes() const { return static_cast<int>(U.cols()); }
};

enum class RunStatus { completed, blew_up, fp_failed };

struct BlowupInfo {
    double time = 0.0;
    int species = -1;
    double value = 0.0;
};

/// Per-step monitored series. All series cover every computed step, including
/// the ones a strided Trajectory does not keep. times has one more entry than
/// fp_iters (the initial state carries no iteration count).
struct RunReport {
    std::vector<double> times;
    std::vector<Vector> linf_norms;   // per entry: length-m vector
    std::vector<Vector> min_values;
    std::vector<Vector> lp_norms;     // empty unless lp_p > 0
    double lp_p = 0.0;
    std::vector<double> weighted_mass;  // empty unless the system carries a
    std::vector<int> fp_iters;
    std::vector<double> contraction_ratios;
    std::optional<BlowupInfo> blowup;
    RunStatus status = RunStatus::completed;

    int steps_recorded() const { return static_cast<int>(fp_iters.size()); }
};

/// Time series of states (possibly strided) with its report. Immutable once
/// returned; safe to share across threads.
struct Trajectory {
    std::vector<SystemState> states;
    RunReport report;

    const SystemState& initial() const { return states.front(); }
    const SystemState& final_state() const { return states.back(); }
};

}  // namespace fracrd
