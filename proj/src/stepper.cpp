#include "fracrd/stepper.hpp"

#include <cmath>
#include <thread>

namespace fracrd {

TimeGrid::TimeGrid(double final_time, double step) : T(final_time), k(step) {
    if (!(T > 0.0) || !(k > 0.0))
        throw std::invalid_argument("TimeGrid: T and k must be > 0");
    steps = static_cast<int>(std::llround(T / k));
    if (steps < 1 || std::abs(static_cast<double>(steps) * k - T) > 1e-12 * T)
        throw std::invalid_argument("TimeGrid: T must be an integer multiple of k");
}

void StepperConfig::validate() const {
    if (!(fp_tol > 0.0)) throw std::invalid_argument("StepperConfig: fp_tol > 0");
    if (fp_max_iters < 1)
        throw std::invalid_argument("StepperConfig: fp_max_iters >= 1");
    if (theta != 0.5)
        throw std::invalid_argument("StepperConfig: only theta = 1/2 supported");
    if (!(blowup_threshold > 0.0))
        throw std::invalid_argument("StepperConfig: blowup_threshold > 0");
}

namespace {

// First non-finite or over-threshold entry, if any.
bool scan_blowup(const Matrix& U, double threshold, double t, BlowupInfo* info) {
    for (int i = 0; i < U.rows(); ++i) {
        for (int j = 0; j < U.cols(); ++j) {
            const double v = U(i, j);
            if (!std::isfinite(v) || std::abs(v) > threshold) {
                info->time = t;
                info->species = i;
                info->value = v;
                return true;
            }
        }
    }
    return false;
}

void record_state(RunReport& rep, const SystemState& st, const ReactionSystem* sys,
                  const Vector& lumped) {
    const int m = st.species();
    rep.times.push_back(st.t);
    Vector linf(m), mn(m);
    for (int i = 0; i < m; ++i) {
        linf[i] = st.U.row(i).cwiseAbs().maxCoeff();
        mn[i] = st.U.row(i).minCoeff();
    }
    rep.linf_norms.push_back(linf);
    rep.min_values.push_back(mn);
    if (rep.lp_p > 0.0) {
        Vector lp(m);
        for (int i = 0; i < m; ++i) {
            double acc = 0.0;
            for (int j = 0; j < st.nodes(); ++j)
                acc += lumped[j] * std::pow(std::abs(st.U(i, j)), rep.lp_p);
            lp[i] = std::pow(acc, 1.0 / rep.lp_p);
        }
        rep.lp_norms.push_back(lp);
    }
    if (sys && sys->mass_vector) {
        const Vector& a = *sys->mass_vector;
        double mass = 0.0;
        for (int i = 0; i < m; ++i) mass += a[i] * lumped.dot(st.U.row(i).transpose());
        rep.weighted_mass.push_back(mass);
    }
}

}  // namespace

CrankNicolsonStepper::CrankNicolsonStepper(std::vector<const FracOperator*> ops,
                                           const ReactionSystem& sys, double k,
                                           const StepperConfig& cfg, int threads)
    : ops_(std::move(ops)),
      sys_(sys),
      k_(k),
      cfg_(cfg),
      m_(static_cast<int>(ops_.size())),
      n_(0),
      threads_(threads) {
    cfg_.validate();
    if (m_ != sys_.m)
        throw std::invalid_argument("stepper: operator count != species count");
    if (m_ < 1) throw std::invalid_argument("stepper: no operators");
    n_ = ops_[0]->mesh.n;
    for (const auto* op : ops_) {
        if (op->mesh.n != n_ || op->mesh.a != ops_[0]->mesh.a ||
            op->mesh.b != ops_[0]->mesh.b)
            throw std::invalid_argument("stepper: operators must share one mesh");
    }
    solvers_.resize(static_cast<std::size_t>(m_));
    rhs_mats_.resize(static_cast<std::size_t>(m_));
    const Matrix mass = ops_[0]->M.dense();
    for (int i = 0; i < m_; ++i) {
        int twin = -1;
        for (int j = 0; j < i; ++j) {
            if (ops_[j] == ops_[i] && ops_[j]->d == ops_[i]->d) {
                twin = j;
                break;
            }
        }
        if (twin >= 0) {
            solvers_[static_cast<std::size_t>(i)] = solvers_[static_cast<std::size_t>(twin)];
            rhs_mats_[static_cast<std::size_t>(i)] = rhs_mats_[static_cast<std::size_t>(twin)];
            continue;
        }
        const double kd = 0.5 * k_ * ops_[i]->d;
        Matrix lhs = mass + kd * ops_[i]->A;
        solvers_[static_cast<std::size_t>(i)] =
            std::make_shared<Eigen::LLT<Matrix>>(lhs);
        if (solvers_[static_cast<std::size_t>(i)]->info() != Eigen::Success)
            throw std::runtime_error("stepper: Cholesky factorization failed");
        rhs_storage_.push_back(std::make_shared<Matrix>(mass - kd * ops_[i]->A));
        rhs_mats_[static_cast<std::size_t>(i)] = rhs_storage_.back().get();
    }
}

Matrix CrankNicolsonStepper::eval_nodal_reaction(const Matrix& U) const {
    Matrix F(m_, n_);
    Vector r(m_);
    for (int j = 0; j < n_; ++j) {
        r = U.col(j);
        F.col(j) = sys_.eval(r);
    }
    return F;
}

Matrix CrankNicolsonStepper::eval_forcing(double t) const {
    Matrix G = Matrix::Zero(m_, n_);
    if (!sys_.forcing) return G;
    const auto& nodes = ops_[0]->mesh.nodes;
    for (int j = 0; j < n_; ++j)
        G.col(j) = sys_.forcing(t, nodes[static_cast<std::size_t>(j)]);
    return G;
}

CrankNicolsonStepper::Outcome CrankNicolsonStepper::step(SystemState& state) const {
    Outcome out;
    const double t0 = state.t;
    const double t1 = t0 + k_;
    const Matrix F0 = eval_nodal_reaction(state.U);
    Matrix base(m_, n_);
    {
        // trapezoidal forcing: k (G(t0) + G(t1)) / 2 enters through the mass matrix
        Matrix G = eval_forcing(t0) + eval_forcing(t1);
        for (int i = 0; i < m_; ++i) {
            Vector g = 0.5 * k_ *
                       ops_[i]->M.apply((F0.row(i) + G.row(i)).transpose());
            base.row(i) =
                ((*rhs_mats_[static_cast<std::size_t>(i)]) * state.U.row(i).transpose() + g)
                    .transpose();
        }
    }

    Matrix iterate = state.U;
    Matrix next(m_, n_);
    double prev_inc = -1.0;
    const auto solve_species = [&](int i, const Matrix& F) {
        Vector rhs = base.row(i).transpose() +
                     0.5 * k_ * ops_[i]->M.apply(F.row(i).transpose());
        next.row(i) =
            solvers_[static_cast<std::size_t>(i)]->solve(rhs).transpose();
    };

    for (int l = 1; l <= cfg_.fp_max_iters; ++l) {
        const Matrix F = eval_nodal_reaction(iterate);
        if (threads_ > 1 && m_ > 1) {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(m_));
            for (int i = 0; i < m_; ++i)
                pool.emplace_back([&, i] { solve_species(i, F); });
            for (auto& th : pool) th.join();
        } else {
            for (int i = 0; i < m_; ++i) solve_species(i, F);
        }
        out.fp_iters = l;
        if (scan_blowup(next, cfg_.blowup_threshold, t1, &out.blowup)) {
            state.t = t1;
            state.U = next;
            out.status = RunStatus::blew_up;
            return out;
        }
        const double inc = (next - iterate).cwiseAbs().maxCoeff();
        if (prev_inc > 0.0)
            out.contraction = std::max(out.contraction, inc / prev_inc);
        iterate.swap(next);
        if (inc <= cfg_.fp_tol) {
            state.t = t1;
            state.U = iterate;
            return out;
        }
        prev_inc = inc;
    }
    state.t = t1;
    state.U = iterate;  // non-convergence carries the last iterate
    out.status = RunStatus::fp_failed;
    return out;
}

Trajectory solve_forward(const Matrix& u0,
                         const std::vector<const FracOperator*>& ops,
                         const ReactionSystem& sys, const TimeGrid& tgrid,
                         const StepperConfig& cfg, const SolveOptions& opts,
                         const std::vector<Monitor>& monitors) {
    if (!u0.allFinite()) throw std::invalid_argument("solve_forward: u0 not finite");
    CrankNicolsonStepper stepper(ops, sys, tgrid.k, cfg, opts.threads);
    const int stride = std::max(1, opts.stride);

    Trajectory traj;
    traj.report.lp_p = opts.lp_p;
    const Vector lumped = ops[0]->M.lumped();

    SystemState state{0.0, u0};
    record_state(traj.report, state, &sys, lumped);
    traj.states.push_back(state);
    for (const auto& mon : monitors) mon(state, traj.report);

    for (int j = 1; j <= tgrid.steps; ++j) {
        const auto outcome = stepper.step(state);
        traj.report.fp_iters.push_back(outcome.fp_iters);
        traj.report.contraction_ratios.push_back(outcome.contraction);
        record_state(traj.report, state, &sys, lumped);
        if (outcome.status != RunStatus::completed) {
            traj.report.status = outcome.status;
            if (outcome.status == RunStatus::blew_up)
                traj.report.blowup = outcome.blowup;
            traj.states.push_back(state);
            return traj;
        }
        if (j % stride == 0 || j == tgrid.steps) traj.states.push_back(state);
        for (const auto& mon : monitors) mon(state, traj.report);
    }
    traj.report.status = RunStatus::completed;
    return traj;
}

Trajectory solve_linear_forced(const FracOperator& op, double d, const Vector& w0,
                               const std::function<Vector(int)>& forcing_at_node,
                               const TimeGrid& tgrid, const StepperConfig& cfg,
                               int stride) {
    cfg.validate();
    const int n = op.mesh.n;
    if (w0.size() != n)
        throw std::invalid_argument("solve_linear_forced: w0 size mismatch");
    const double kd = 0.5 * tgrid.k * d;
    const Matrix mass = op.M.dense();
    Eigen::LLT<Matrix> solver(mass + kd * op.A);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("solve_linear_forced: factorization failed");
    const Matrix rhs_mat = mass - kd * op.A;

    Trajectory traj;
    const Vector lumped = op.M.lumped();
    SystemState state{0.0, w0.transpose()};
    record_state(traj.report, state, nullptr, lumped);
    traj.states.push_back(state);

    Vector w = w0;
    Vector g_prev =
        forcing_at_node ? forcing_at_node(0) : Vector::Zero(n);
    stride = std::max(1, stride);
    for (int j = 1; j <= tgrid.steps; ++j) {
        Vector g_next = forcing_at_node ? forcing_at_node(j) : Vector::Zero(n);
        Vector rhs = rhs_mat * w + 0.5 * tgrid.k * op.M.apply(g_prev + g_next);
        w = solver.solve(rhs);
        g_prev.swap(g_next);
        state.t = tgrid.time(j);
        state.U = w.transpose();
        traj.report.fp_iters.push_back(1);
        traj.report.contraction_ratios.push_back(0.0);
        record_state(traj.report, state, nullptr, lumped);
        BlowupInfo info;
        if (scan_blowup(state.U, cfg.blowup_threshold, state.t, &info)) {
            traj.report.status = RunStatus::blew_up;
            traj.report.blowup = info;
            traj.states.push_back(state);
            return traj;
        }
        if (j % stride == 0 || j == tgrid.steps) traj.states.push_back(state);
    }
    traj.report.status = RunStatus::completed;
    return traj;
}

Trajectory solve_dual(const std::vector<Vector>& phi, double d,
                      const FracOperator& op, const TimeGrid& tgrid,
                      const StepperConfig& cfg, int stride) {
    if (static_cast<int>(phi.size()) != tgrid.steps + 1)
        throw std::invalid_argument("solve_dual: phi must cover steps + 1 nodes");
    const int steps = tgrid.steps;
    auto reversed = [&](int j) { return phi[static_cast<std::size_t>(steps - j)]; };
    Trajectory fwd = solve_linear_forced(op, d, Vector::Zero(op.mesh.n), reversed,
                                         tgrid, cfg, /*stride=*/1);
    // Read the forward solve backward: Z(t_j) = w(tau_{steps-j}).
    Trajectory dual;
    dual.report = fwd.report;
    std::reverse(dual.report.times.begin(), dual.report.times.end());
    for (auto& t : dual.report.times) t = tgrid.T - t;
    std::reverse(dual.report.linf_norms.begin(), dual.report.linf_norms.end());
    std::reverse(dual.report.min_values.begin(), dual.report.min_values.end());
    std::reverse(dual.report.lp_norms.begin(), dual.report.lp_norms.end());

    stride = std::max(1, stride);
    const int total = static_cast<int>(fwd.states.size());
    for (int j = total - 1; j >= 0; --j) {
        const auto& w = fwd.states[static_cast<std::size_t>(j)];
        SystemState z{tgrid.T - w.t, w.U};
        const int idx = total - 1 - j;
        if (idx % stride == 0 || j == 0) dual.states.push_back(z);
    }
    return dual;
}

}  // namespace fracrd
