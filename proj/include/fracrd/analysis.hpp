#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracrd/stepper.hpp"

namespace fracrd {

/// L2(a, b) distance between the P1 function with the given nodal values
/// (zero at the boundary) and a scalar function, element-level 3-point Gauss
/// against the true function rather than its interpolant.
double l2_error(const Vector& field, const Mesh1D& mesh,
                const std::function<double(double)>& exact);

struct RateFit {
    std::vector<double> h_values;
    std::vector<double> errors;
    double slope = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares of log(error) against log(h).
RateFit fit_rate(const std::vector<double>& h_values,
                 const std::vector<double>& errors);

struct ConvergenceConfig {
    double s = 0.75;
    int N = 1;
    double d1 = 1.0, d2 = 2.0, beta = 3.0;
    double T = 1.0;
    double k = 1e-3;  // held fixed across the ladder so the O(k^2) part stays subdominant
    StepperConfig stepper;
    int threads = 1;
};

/// Manufactured-solution study: solve to T on each mesh of the ladder, sum the
/// final-time L2 errors over species, fit the log-log slope. h values must be
/// representable as (b - a)/(n + 1) with integer n >= 1 on (-1, 1).
RateFit convergence_study(const ConvergenceConfig& cfg,
                          const std::vector<double>& h_list);

struct ComparisonReport {
    bool forcing_zero = false;
    double w0_norm = 0.0;
    double sup_w = 0.0;
    double inf_w = 0.0;
    /// Excess of sup w over ||w0||_inf (1 + 1e-8); the comparison bound is
    /// one-sided for h <= 0.
    double upper_excess = 0.0;
    /// Excess of -inf w over the same bound; meaningful only when h == 0
    /// (then -w is also a solution with nonpositive forcing).
    double lower_excess = 0.0;

    bool pass(double budget) const {
        return upper_excess <= budget && (!forcing_zero || lower_excess <= budget);
    }
};

/// Solve the single linear equation with nonpositive forcing and measure the
/// violation of the discrete comparison bound. forcing_at_node may be null
/// (h == 0); otherwise it must return nonpositive nodal values.
ComparisonReport check_comparison(const FracOperator& op, const TimeGrid& tgrid,
                                  const StepperConfig& cfg, const Vector& w0,
                                  const std::function<Vector(int)>& forcing_at_node);

/// ||u_2||_{L^p(Q_T)} / (1 + ||u_1||_{L^p(Q_T)}) with lumped-mass nodal norms
/// in space and the trapezoid rule in time. Requires a 2-species trajectory
/// recorded with lp_p == p.
double duality_ratio(const Trajectory& traj, double p);

}  // namespace fracrd
