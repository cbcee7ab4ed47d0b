#include "fracrd/analysis.hpp"

#include <cmath>

#include "fracrd/quadrature.hpp"
#include "fracrd/special.hpp"

namespace fracrd {

double l2_error(const Vector& field, const Mesh1D& mesh,
                const std::function<double(double)>& exact) {
    if (field.size() != mesh.n)
        throw std::invalid_argument("l2_error: field size mismatch");
    const auto gl = gauss_legendre(3);
    double acc = 0.0;
    for (int e = 0; e < mesh.element_count(); ++e) {
        const double x0 = mesh.element_left(e);
        const double x1 = x0 + mesh.h;
        const double v0 = e == 0 ? 0.0 : field[e - 1];
        const double v1 = e == mesh.n ? 0.0 : field[e];
        const double mid = 0.5 * (x0 + x1), half = 0.5 * mesh.h;
        for (const auto& q : gl) {
            const double x = mid + half * q.x;
            const double uh = v0 + (v1 - v0) * (x - x0) / mesh.h;
            const double diff = uh - exact(x);
            acc += q.w * half * diff * diff;
        }
    }
    return std::sqrt(acc);
}

RateFit fit_rate(const std::vector<double>& h_values,
                 const std::vector<double>& errors) {
    if (h_values.size() != errors.size() || h_values.size() < 2)
        throw std::invalid_argument("fit_rate: need matching lists, >= 2 points");
    for (double e : errors)
        if (!(e > 0.0)) throw std::domain_error("fit_rate: errors must be > 0");
    const std::size_t n = h_values.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(h_values[i]);
        const double y = std::log(errors[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
    }
    const double nn = static_cast<double>(n);
    const double cov = sxy - sx * sy / nn;
    const double varx = sxx - sx * sx / nn;
    const double vary = syy - sy * sy / nn;
    RateFit fit;
    fit.h_values = h_values;
    fit.errors = errors;
    fit.slope = cov / varx;
    fit.r_squared = vary > 0.0 ? (cov * cov) / (varx * vary) : 1.0;
    return fit;
}

RateFit convergence_study(const ConvergenceConfig& cfg,
                          const std::vector<double>& h_list) {
    if (h_list.size() < 3)
        throw std::invalid_argument("convergence_study: need >= 3 mesh sizes");
    std::vector<double> errors;
    errors.reserve(h_list.size());
    const TimeGrid tgrid(cfg.T, cfg.k);
    for (double h : h_list) {
        const double ratio = 2.0 / h;
        const int n = static_cast<int>(std::llround(ratio)) - 1;
        if (n < 1 || std::abs(ratio - std::round(ratio)) > 1e-9)
            throw std::invalid_argument(
                "convergence_study: h must divide the unit interval evenly");
        Mesh1D mesh(-1.0, 1.0, n);
        FracOperator op1(mesh, cfg.s, cfg.d1);
        FracOperator op2(mesh, cfg.s, cfg.d2);
        ReactionSystem sys = manufactured(cfg.s, cfg.N, cfg.d1, cfg.d2, cfg.beta);
        Matrix u0(2, n);
        for (int j = 0; j < n; ++j) {
            const auto [u, v] = manufactured_exact(0.0, mesh.nodes[static_cast<std::size_t>(j)], cfg.s);
            u0(0, j) = u;
            u0(1, j) = v;
        }
        SolveOptions opts;
        opts.stride = tgrid.steps;  // keep endpoints only
        opts.threads = cfg.threads;
        Trajectory traj =
            solve_forward(u0, {&op1, &op2}, sys, tgrid, cfg.stepper, opts);
        if (traj.report.status != RunStatus::completed)
            throw std::runtime_error("convergence_study: run did not complete");
        const auto& fin = traj.final_state();
        const double eu = l2_error(fin.U.row(0).transpose(), mesh, [&](double x) {
            return manufactured_exact(cfg.T, x, cfg.s).first;
        });
        const double ev = l2_error(fin.U.row(1).transpose(), mesh, [&](double x) {
            return manufactured_exact(cfg.T, x, cfg.s).second;
        });
        errors.push_back(eu + ev);
    }
    return fit_rate(h_list, errors);
}

ComparisonReport check_comparison(const FracOperator& op, const TimeGrid& tgrid,
                                  const StepperConfig& cfg, const Vector& w0,
                                  const std::function<Vector(int)>& forcing_at_node) {
    ComparisonReport rep;
    rep.forcing_zero = !forcing_at_node;
    if (forcing_at_node) {
        for (int j = 0; j <= tgrid.steps; ++j) {
            const Vector g = forcing_at_node(j);
            if (g.maxCoeff() > 0.0)
                throw std::invalid_argument(
                    "check_comparison: forcing must be nonpositive");
        }
    }
    rep.w0_norm = w0.size() > 0 ? w0.cwiseAbs().maxCoeff() : 0.0;
    Trajectory traj = solve_linear_forced(op, op.d, w0, forcing_at_node, tgrid,
                                          cfg, /*stride=*/1);
    rep.sup_w = -std::numeric_limits<double>::infinity();
    rep.inf_w = std::numeric_limits<double>::infinity();
    for (const auto& st : traj.states) {
        rep.sup_w = std::max(rep.sup_w, st.U.maxCoeff());
        rep.inf_w = std::min(rep.inf_w, st.U.minCoeff());
    }
    const double bound = rep.w0_norm * (1.0 + 1e-8);
    rep.upper_excess = std::max(0.0, rep.sup_w - bound);
    rep.lower_excess = std::max(0.0, -rep.inf_w - bound);
    return rep;
}

double duality_ratio(const Trajectory& traj, double p) {
    if (!(p > 1.0)) throw std::domain_error("duality_ratio: requires p > 1");
    const auto& rep = traj.report;
    if (rep.lp_p != p || rep.lp_norms.empty())
        throw std::invalid_argument(
            "duality_ratio: trajectory must be recorded with lp_p == p");
    if (rep.lp_norms.front().size() != 2)
        throw std::invalid_argument("duality_ratio: need a 2-species trajectory");
    std::vector<double> pu, pv;
    const std::vector<double>& times = rep.times;
    for (const auto& lp : rep.lp_norms) {
        pu.push_back(std::pow(lp[0], p));
        pv.push_back(std::pow(lp[1], p));
    }
    auto trapz = [&](const std::vector<double>& f) {
        double acc = 0.0;
        for (std::size_t j = 1; j < times.size(); ++j)
            acc += 0.5 * (times[j] - times[j - 1]) * (f[j] + f[j - 1]);
        return acc;
    };
    const double nu = std::pow(trapz(pu), 1.0 / p);
    const double nv = std::pow(trapz(pv), 1.0 / p);
    return nv / (1.0 + nu);
}

}  // namespace fracrd
