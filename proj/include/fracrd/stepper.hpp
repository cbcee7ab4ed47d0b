#pragma once

#include <Eigen/Cholesky>
#include <functional>
#include <memory>
#include <vector>

#include "fracrd/reaction.hpp"
#include "fracrd/trajectory.hpp"

namespace fracrd {

struct TimeGrid {
    double T = 1.0;
    double k = 1e-2;
    int steps = 0;

    TimeGrid(double final_time, double step);
    double time(int j) const { return static_cast<double>(j) * k; }
};

struct StepperConfig {
    double fp_tol = 1e-6;
    int fp_max_iters = 200;
    double blowup_threshold = 1e8;
    double theta = 0.5;  // trapezoidal only

    void validate() const;
};

struct SolveOptions {
    int stride = 1;      // state storage stride; report always covers all steps
    double lp_p = 0.0;   // monitor the lumped L^p norm when > 0
    int threads = 1;     // species solves run concurrently when > 1
};

using Monitor = std::function<void(const SystemState&, const RunReport&)>;

/// One Crank-Nicolson step with a Picard iteration on the nonlinearity.
/// The constant-in-time matrices M + (k d_i / 2) A_i are factored once at
/// construction and reused for every step and sweep.
class CrankNicolsonStepper {
  public:
    CrankNicolsonStepper(std::vector<const FracOperator*> ops,
                         const ReactionSystem& sys, double k,
                         const StepperConfig& cfg, int threads = 1);

    struct Outcome {
        RunStatus status = RunStatus::completed;
        int fp_iters = 0;
        double contraction = 0.0;  // max observed ratio of successive increments
        BlowupInfo blowup;         // meaningful when status == blew_up
    };

    /// Advance state by one step in place. On blow-up or fixed-point failure
    /// the state keeps the offending iterate for inspection.
    Outcome step(SystemState& state) const;

    double k() const { return k_; }
    int species() const { return m_; }

  private:
    std::vector<const FracOperator*> ops_;
    const ReactionSystem& sys_;
    double k_;
    StepperConfig cfg_;
    int m_;
    int n_;
    int threads_;
    std::vector<std::shared_ptr<Eigen::LLT<Matrix>>> solvers_;  // shared when d_i repeat
    std::vector<const Matrix*> rhs_mats_;
    std::vector<std::shared_ptr<Matrix>> rhs_storage_;

    Matrix eval_nodal_reaction(const Matrix& U) const;
    Matrix eval_forcing(double t) const;
};

/// Forward solve of the coupled system from u0 (m x n) to T (or until a
/// blow-up / non-convergence signal; the partial trajectory is returned).
Trajectory solve_forward(const Matrix& u0,
                         const std::vector<const FracOperator*>& ops,
                         const ReactionSystem& sys, const TimeGrid& tgrid,
                         const StepperConfig& cfg, const SolveOptions& opts = {},
                         const std::vector<Monitor>& monitors = {});

/// Linear single-species solve d/dt w + d A w = forcing with CN; forcing gives
/// nodal values at a time node (may be null for the homogeneous problem).
Trajectory solve_linear_forced(const FracOperator& op, double d, const Vector& w0,
                               const std::function<Vector(int)>& forcing_at_node,
                               const TimeGrid& tgrid, const StepperConfig& cfg,
                               int stride = 1);

/// Backward dual problem -dZ/dt + d A Z = phi, Z(T) = 0, solved through the
/// time reversal tau = T - t; bit-identical to the underlying forward solve up
/// to index reversal. phi holds nodal values at the steps+1 time nodes.
Trajectory solve_dual(const std::vector<Vector>& phi, double d,
                      const FracOperator& op, const TimeGrid& tgrid,
                      const StepperConfig& cfg, int stride = 1);

}  // namespace fracrd
