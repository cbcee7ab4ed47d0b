#pragma once

#include <string>
#include <vector>

#include "fracrd/reaction.hpp"
#include "fracrd/stepper.hpp"

namespace fracrd {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat key = value configuration with [section] headers. Unknown sections or
/// keys are rejected, every numeric range is validated before any allocation.
struct RunConfig {
    // [system]
    std::string preset = "s_exp";  // chemistry | s_exp | manufactured | triangular_demo
    double s = 0.75;
    int N = 1;
    double d1 = 1.0, d2 = 2.0, d3 = 1.0;
    double alpha1 = 1.0, alpha2 = 1.0, alpha3 = 1.0;
    double beta = 3.0;
    int species = 3;  // triangular_demo only

    // [domain]
    double a = -1.0, b = 1.0;
    int n = 256;

    // [time]
    double T = 100.0;
    double k = 1e-2;

    // [stepper]
    StepperConfig stepper;

    // [initial]
    std::string initial_profile = "getoor";  // getoor | constant | bump
    double initial_value = 1.0;              // constant profile level
    std::vector<double> initial_scales;      // per-species multipliers

    // [output]
    std::string out_dir = "out";
    int stride = 100;
    double lp_p = 0.0;
    int threads = 0;  // 0: machine parallelism

    // [converge]
    std::vector<double> h_list;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Instantiate the preset named by the config.
ReactionSystem make_system(const RunConfig& cfg);

/// One operator per species on the given mesh (diffusions per preset layout).
std::vector<FracOperator> make_operators(const RunConfig& cfg, const Mesh1D& mesh);

/// Nodal initial data, m x n, from the configured profile and scales.
Matrix make_initial_data(const RunConfig& cfg, const ReactionSystem& sys,
                         const Mesh1D& mesh);

int resolved_threads(const RunConfig& cfg);

}  // namespace fracrd
