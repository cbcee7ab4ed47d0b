// Acceptance suite: one line per criterion, exit code = number of failures.
#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "fracrd/analysis.hpp"
#include "fracrd/oracle.hpp"
#include "fracrd/reaction.hpp"
#include "fracrd/special.hpp"
#include "fracrd/stepper.hpp"
#include "fracrd/verify.hpp"

using namespace fracrd;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("CRITERION %d [%s]: %s — %s (%.1f s)\n", idx, name.c_str(),
                pass ? "PASS" : "FAIL", detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

Vector interp_getoor(const Mesh1D& mesh, double s, double scale = 1.0) {
    Vector v(mesh.n);
    for (int i = 0; i < mesh.n; ++i)
        v[i] = scale * getoor_profile(mesh.nodes[static_cast<std::size_t>(i)], s);
    return v;
}

Matrix scaled_initial(const Mesh1D& mesh, double s, const std::vector<double>& sc) {
    Matrix u0(static_cast<int>(sc.size()), mesh.n);
    for (std::size_t i = 0; i < sc.size(); ++i)
        u0.row(static_cast<int>(i)) = interp_getoor(mesh, s, sc[i]).transpose();
    return u0;
}

double getoor_ratio(int n, double s) {
    Mesh1D mesh(-1.0, 1.0, n);
    Matrix A = assemble_stiffness(mesh, s);
    MassMatrix M = assemble_mass(mesh);
    const Vector target = getoor_constant(1, s) * M.lumped();
    return (A * interp_getoor(mesh, s) - target).norm() / target.norm();
}

// 1. Getoor identity: relative residual <= 5% at n = 512, decreasing 64 -> 512.
void criterion_1() {
    Timer t;
    bool pass = true;
    std::string detail;
    for (double s : {0.25, 0.5, 0.75}) {
        std::vector<double> r;
        for (int n : {64, 128, 256, 512}) r.push_back(getoor_ratio(n, s));
        bool dec = true;
        for (std::size_t i = 1; i < r.size(); ++i)
            if (!(r[i] < r[i - 1])) dec = false;
        const bool ok = dec && r.back() <= 0.05;
        pass = pass && ok;
        char buf[128];
        std::snprintf(buf, sizeof(buf), "s=%.2f: %.4f %.4f %.4f %.4f%s; ", s,
                      r[0], r[1], r[2], r[3], ok ? "" : " <-");
        detail += buf;
    }
    report(1, "getoor_identity", pass, detail, t.seconds());
}

// 2. Convergence orders on the manufactured problem.
void criterion_2(int threads) {
    Timer t;
    const std::vector<double> ladder = {1.0 / 64, 1.0 / 128, 1.0 / 256, 1.0 / 512};
    auto run = [&](double s, double d1, double d2, double beta) {
        ConvergenceConfig cc;
        cc.s = s;
        cc.d1 = d1;
        cc.d2 = d2;
        cc.beta = beta;
        cc.T = 1.0;
        cc.k = 1e-3;  // 1e-3 * T
        cc.threads = threads;
        return convergence_study(cc, ladder);
    };
    const RateFit f025 = run(0.25, 1.0, 3.0, 2.0);
    const RateFit f075 = run(0.75, 1.0, 2.0, 3.0);
    const bool ok025 = std::abs(f025.slope - 0.75) <= 0.15;
    const bool ok075 = std::abs(f075.slope - 1.0) <= 0.15;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "slope(s=0.25) = %.3f (want 0.75±0.15), "
                  "slope(s=0.75) = %.3f (want 1.0±0.15)",
                  f025.slope, f075.slope);
    report(2, "convergence_orders", ok025 && ok075, buf, t.seconds());
    // boundary case, consistency only (possible logarithmic pollution)
    Timer t2;
    const RateFit f05 = run(0.5, 2.0, 1.0, 3.0);
    std::printf("  consistency (not gated): slope(s=0.5) = %.3f (expect ~1.0±0.2) (%.1f s)\n",
                f05.slope, t2.seconds());
}

// 3. Fixed-point behavior on every shipped preset with default data, k = 1e-2.
void criterion_3() {
    Timer t;
    bool pass = true;
    std::string detail;
    struct Case {
        std::string name;
        ReactionSystem sys;
        double s;
        std::vector<double> ds;
        double T;
    };
    std::vector<Case> cases;
    cases.push_back({"chemistry", chemistry(ChemParams{}), 0.5, {1, 1, 1}, 5.0});
    cases.push_back({"s_exp", s_exp(ExpParams{3, 1, 2}), 0.75, {1, 2}, 5.0});
    cases.push_back({"manufactured", manufactured(0.75, 1, 1, 2, 3), 0.75, {1, 2}, 2.0});
    cases.push_back({"triangular_demo", triangular_demo(4), 0.6, {1, 2, 3, 1}, 5.0});
    for (auto& c : cases) {
        Mesh1D mesh(-1.0, 1.0, 128);
        std::vector<FracOperator> ops;
        for (double d : c.ds) ops.emplace_back(mesh, c.s, d);
        std::vector<const FracOperator*> optr;
        for (auto& op : ops) optr.push_back(&op);
        Matrix u0 = scaled_initial(mesh, c.s, c.sys.default_scales);
        Trajectory traj = solve_forward(u0, optr, c.sys, TimeGrid(c.T, 1e-2),
                                        StepperConfig{});
        int worst_it = 0;
        double worst_c = 0.0;
        for (int it : traj.report.fp_iters) worst_it = std::max(worst_it, it);
        for (double cr : traj.report.contraction_ratios)
            worst_c = std::max(worst_c, cr);
        const bool ok = traj.report.status == RunStatus::completed &&
                        worst_it <= 50 && worst_c < 1.0;
        pass = pass && ok;
        detail += c.name + ": iters<=" + std::to_string(worst_it) + " contr=" +
                  std::to_string(worst_c).substr(0, 6) + (ok ? "; " : " <-; ");
    }
    report(3, "fixed_point_behavior", pass, detail, t.seconds());
}

// 4. Comparison principle at n = 256, k = 1e-3.
void criterion_4() {
    Timer t;
    Mesh1D mesh(-1.0, 1.0, 256);
    FracOperator op(mesh, 0.5, 1.0);
    TimeGrid tg(1.0, 1e-3);
    StepperConfig cfg;
    const auto a =
        check_comparison(op, tg, cfg, interp_getoor(mesh, 0.5), nullptr);
    const auto b = check_comparison(op, tg, cfg, Vector::Zero(mesh.n), [&](int) {
        return Vector::Constant(mesh.n, -1.0);
    });
    const auto c =
        check_comparison(op, tg, cfg, Vector::Ones(mesh.n), nullptr);
    const bool ok = a.pass(1e-3 * a.w0_norm) && b.pass(1e-3) &&
                    c.pass(1e-3 * c.w0_norm);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "excess(a) = %.2e, sup(b) = %.2e, excess(c) = %.2e",
                  std::max(a.upper_excess, a.lower_excess), b.sup_w,
                  std::max(c.upper_excess, c.lower_excess));
    report(4, "comparison_principle", ok, buf, t.seconds());
}

// 5. Weighted-mass monotonicity for chemistry and s_exp over T = 10.
void criterion_5() {
    Timer t;
    bool pass = true;
    std::string detail;
    auto check = [&](const std::string& name, const ReactionSystem& sys, double s,
                     const std::vector<double>& ds) {
        Mesh1D mesh(-1.0, 1.0, 128);
        std::vector<FracOperator> ops;
        for (double d : ds) ops.emplace_back(mesh, s, d);
        std::vector<const FracOperator*> optr;
        for (auto& op : ops) optr.push_back(&op);
        Matrix u0 = scaled_initial(mesh, s, sys.default_scales);
        const double k = 1e-2;
        Trajectory traj =
            solve_forward(u0, optr, sys, TimeGrid(10.0, k), StepperConfig{});
        const Vector& a = *sys.mass_vector;
        const double tol = k * 1e-6 * sys.m * (1.0 + a.lpNorm<1>());
        double worst = -1e300;
        const auto& mass = traj.report.weighted_mass;
        for (std::size_t j = 1; j < mass.size(); ++j)
            worst = std::max(worst, mass[j] - mass[j - 1]);
        const bool ok = traj.report.status == RunStatus::completed && worst <= tol;
        pass = pass && ok;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s: max step increase %.2e (tol %.2e)%s; ",
                      name.c_str(), worst, tol, ok ? "" : " <-");
        detail += buf;
    };
    check("chemistry", chemistry(ChemParams{}), 0.5, {1, 1, 1});
    check("s_exp", s_exp(ExpParams{3, 1, 2}), 0.75, {1, 2});
    report(5, "mass_control", pass, detail, t.seconds());
}

// 6. Duality-ratio stability for s_exp at p = 3 across n in {128, 256, 512}.
void criterion_6(int threads) {
    Timer t;
    std::vector<double> ratios;
    for (int n : {128, 256, 512}) {
        Mesh1D mesh(-1.0, 1.0, n);
        FracOperator op1(mesh, 0.75, 1.0), op2(mesh, 0.75, 2.0);
        auto sys = s_exp(ExpParams{3, 1, 2});
        Matrix u0 = scaled_initial(mesh, 0.75, sys.default_scales);
        SolveOptions opts;
        opts.lp_p = 3.0;
        opts.threads = threads;
        Trajectory traj = solve_forward(u0, {&op1, &op2}, sys, TimeGrid(5.0, 1e-2),
                                        StepperConfig{}, opts);
        ratios.push_back(duality_ratio(traj, 3.0));
    }
    bool finite = true;
    for (double r : ratios) finite = finite && std::isfinite(r);
    const double lo = *std::min_element(ratios.begin(), ratios.end());
    const double hi = *std::max_element(ratios.begin(), ratios.end());
    const bool ok = finite && hi <= 2.0 * lo;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "ratios = %.5f %.5f %.5f (spread %.3fx)",
                  ratios[0], ratios[1], ratios[2], hi / lo);
    report(6, "duality_estimate", ok, buf, t.seconds());
}

// 7. Long-horizon boundedness and mesh consistency, T = 100, k = 1e-2.
void criterion_7(int threads) {
    Timer t;
    bool pass = true;
    std::string detail;
    for (auto [d1, d2, beta] :
         std::vector<std::array<double, 3>>{{1, 2, 3}, {4, 3, 5}}) {
        double finals[2][2];
        bool blew = false;
        int idx = 0;
        for (int n : {256, 512}) {
            Mesh1D mesh(-1.0, 1.0, n);
            FracOperator op1(mesh, 0.75, d1), op2(mesh, 0.75, d2);
            auto sys = s_exp(ExpParams{beta, d1, d2});
            Matrix u0 = scaled_initial(mesh, 0.75, sys.default_scales);
            SolveOptions opts;
            opts.stride = 10000;
            opts.threads = threads;
            Trajectory traj = solve_forward(u0, {&op1, &op2}, sys,
                                            TimeGrid(100.0, 1e-2), StepperConfig{},
                                            opts);
            blew = blew || traj.report.status != RunStatus::completed;
            finals[idx][0] = traj.report.linf_norms.back()[0];
            finals[idx][1] = traj.report.linf_norms.back()[1];
            ++idx;
        }
        // relative closeness with an absolute floor; the exact solution decays
        // to rounding scale well before T = 100
        auto close = [](double x, double y) {
            return std::abs(x - y) <= 0.05 * std::max(std::abs(x), std::abs(y)) +
                                          1e-12;
        };
        const bool ok = !blew && close(finals[0][0], finals[1][0]) &&
                        close(finals[0][1], finals[1][1]);
        pass = pass && ok;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "(d1,d2,b)=(%g,%g,%g): |U|=%.3e/%.3e |V|=%.3e/%.3e%s; ", d1,
                      d2, beta, finals[0][0], finals[1][0], finals[0][1],
                      finals[1][1], ok ? "" : " <-");
        detail += buf;
    }
    report(7, "long_horizon_boundedness", pass, detail, t.seconds());
}

// 8. Chemistry global-existence experiment suite, T = 10.
void criterion_8() {
    Timer t;
    bool pass = true;
    std::string detail;
    struct Case {
        const char* name;
        ChemParams p;
    };
    const std::vector<Case> cases = {
        {"(i) a=(1,1,3)", {1, 1, 3, 1, 2, 3}},
        {"(ii) a=(2,2,1)", {2, 2, 1, 1, 2, 3}},
        {"(iii) d1=d3", {2, 2, 3, 1, 2, 1}},
        {"(iv) d1=d2!=d3", {1, 2, 2, 2, 2, 1}},
    };
    for (const auto& c : cases) {
        Mesh1D mesh(-1.0, 1.0, 96);
        auto sys = chemistry(c.p);
        std::vector<FracOperator> ops;
        for (double d : {c.p.d1, c.p.d2, c.p.d3}) ops.emplace_back(mesh, 0.5, d);
        std::vector<const FracOperator*> optr;
        for (auto& op : ops) optr.push_back(&op);
        Matrix u0 = scaled_initial(mesh, 0.5, sys.default_scales);
        const double k = 1e-2;
        Trajectory traj =
            solve_forward(u0, optr, sys, TimeGrid(10.0, k), StepperConfig{});
        const Vector& a = *sys.mass_vector;
        const double tol = k * 1e-6 * sys.m * (1.0 + a.lpNorm<1>());
        double worst = -1e300;
        const auto& mass = traj.report.weighted_mass;
        for (std::size_t j = 1; j < mass.size(); ++j)
            worst = std::max(worst, mass[j] - mass[j - 1]);
        const bool ok = traj.report.status == RunStatus::completed &&
                        !traj.report.blowup && worst <= tol;
        pass = pass && ok;
        detail += std::string(c.name) + (ok ? " ok; " : " <-; ");
    }
    report(8, "chemistry_experiment_suite", pass, detail, t.seconds());
}

// 9. Structural/oracle suites plus `fracrd verify` exiting 0.
void criterion_9() {
    Timer t;
    bool pass = true;
    std::string detail;

    {  // PSD + symmetry, 1000 random vectors
        Mesh1D mesh(-1.0, 1.0, 96);
        Matrix A = assemble_stiffness(mesh, 0.6);
        bool sym = true;
        for (int i = 0; i < A.rows() && sym; ++i)
            for (int j = 0; j < i; ++j)
                if (A(i, j) != A(j, i)) {
                    sym = false;
                    break;
                }
        const double amax = A.cwiseAbs().maxCoeff();
        std::mt19937_64 rng(99);
        std::normal_distribution<double> g;
        double worst = 0.0;
        for (int tr = 0; tr < 1000; ++tr) {
            Vector v(mesh.n);
            for (int i = 0; i < mesh.n; ++i) v[i] = g(rng);
            worst = std::min(worst, v.dot(A * v) / (v.squaredNorm() * amax));
        }
        const bool ok = sym && worst >= -1e-12;
        pass = pass && ok;
        detail += std::string("psd+symmetry ") + (ok ? "ok" : "<-") + "; ";
    }
    {  // dual-forward bit equivalence
        Mesh1D mesh(-1.0, 1.0, 64);
        FracOperator op(mesh, 0.6, 1.5);
        TimeGrid tg(1.0, 0.02);
        StepperConfig cfg;
        const Vector load = op.M.lumped();
        std::vector<Vector> phi(static_cast<std::size_t>(tg.steps + 1), load);
        Trajectory dual = solve_dual(phi, op.d, op, tg, cfg, 1);
        Trajectory fwd = solve_linear_forced(op, op.d, Vector::Zero(mesh.n),
                                             [&](int) { return load; }, tg, cfg, 1);
        bool equal = dual.states.size() == fwd.states.size();
        for (std::size_t j = 0; equal && j < dual.states.size(); ++j)
            equal = (dual.states[j].U.array() ==
                     fwd.states[fwd.states.size() - 1 - j].U.array())
                        .all();
        pass = pass && equal;
        detail += std::string("dual-forward ") + (equal ? "ok" : "<-") + "; ";
    }
    {  // matrix-exponential local order
        Mesh1D mesh(-1.0, 1.0, 64);
        FracOperator op(mesh, 0.5, 1.0);
        Matrix Mdense = op.M.dense();
        Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(op.A, Mdense);
        const Vector u0 = interp_getoor(mesh, 0.5);
        auto exact = [&](double tt) {
            Vector c = es.eigenvectors().transpose() * (Mdense * u0);
            for (int i = 0; i < c.size(); ++i)
                c[i] *= std::exp(-op.d * es.eigenvalues()[i] * tt);
            return Vector(es.eigenvectors() * c);
        };
        auto err1 = [&](double k) {
            Trajectory tr = solve_linear_forced(op, op.d, u0, nullptr,
                                                TimeGrid(k, k), StepperConfig{});
            return (tr.final_state().U.row(0).transpose() - exact(k))
                .cwiseAbs()
                .maxCoeff();
        };
        const double ratio = err1(0.05) / err1(0.025);
        const bool ok = ratio >= 8.0 * 0.7 && ratio <= 8.0 * 1.3;
        pass = pass && ok;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "matexp ratio %.2f %s; ", ratio,
                      ok ? "ok" : "<-");
        detail += buf;
    }
    {  // structural checkers on all presets
        bool ok = check_quasi_positivity(chemistry(ChemParams{}), 20000, 10).pass &&
                  check_mass(chemistry(ChemParams{}), 20000, 10).pass &&
                  check_triangular(chemistry(ChemParams{}), 20000, 10).pass &&
                  check_quasi_positivity(s_exp(ExpParams{}), 20000, 10).pass &&
                  check_mass(s_exp(ExpParams{}), 20000, 10).pass &&
                  check_quasi_positivity(manufactured(0.75, 1, 1, 2, 3), 20000, 10).pass &&
                  check_quasi_positivity(triangular_demo(4), 20000, 10).pass &&
                  check_mass(triangular_demo(4), 20000, 10).pass &&
                  check_triangular(triangular_demo(4), 20000, 10).pass;
        pass = pass && ok;
        detail += std::string("preset checkers ") + (ok ? "ok" : "<-") + "; ";
    }
    {  // the CLI verify bundle
        const std::string cmd = std::string(FRACRD_BIN) + " verify >/dev/null 2>&1";
        const int rc = WEXITSTATUS(std::system(cmd.c_str()));
        pass = pass && rc == 0;
        detail += "fracrd verify exit " + std::to_string(rc) + (rc == 0 ? "" : " <-");
    }
    report(9, "structural_oracle_suites", pass, detail, t.seconds());
}

}  // namespace

int main(int argc, char** argv) {
    int threads = 2;
    if (argc > 1) threads = std::max(1, std::atoi(argv[1]));
    criterion_1();
    criterion_2(threads);
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6(threads);
    criterion_7(threads);
    criterion_8();
    criterion_9();
    std::printf("%d of 9 criteria failed\n", g_failures);
    return g_failures;
}
