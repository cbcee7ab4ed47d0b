#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "fracrd/analysis.hpp"
#include "fracrd/artifacts.hpp"
#include "fracrd/run_config.hpp"
#include "fracrd/verify.hpp"

namespace fs = std::filesystem;
using namespace fracrd;

namespace {

int cmd_run(const std::string& cfg_path) {
    RunConfig cfg;
    try {
        cfg = load_config(cfg_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    try {
        Mesh1D mesh(cfg.a, cfg.b, cfg.n);
        ReactionSystem sys = make_system(cfg);
        std::vector<FracOperator> ops = make_operators(cfg, mesh);
        std::vector<const FracOperator*> op_ptrs;
        for (const auto& op : ops) op_ptrs.push_back(&op);
        Matrix u0 = make_initial_data(cfg, sys, mesh);
        TimeGrid tgrid(cfg.T, cfg.k);
        SolveOptions opts;
        opts.stride = cfg.stride;
        opts.lp_p = cfg.lp_p;
        opts.threads = resolved_threads(cfg);

        std::cout << "fracrd run: preset " << sys.name << ", s = " << cfg.s
                  << ", n = " << cfg.n << ", T = " << cfg.T << ", k = " << cfg.k
                  << ", threads = " << opts.threads << "\n";
        Trajectory traj = solve_forward(u0, op_ptrs, sys, tgrid, cfg.stepper, opts);

        int code = 0;
        if (traj.report.status == RunStatus::blew_up) code = 2;
        if (traj.report.status == RunStatus::fp_failed) code = 3;

        fs::create_directories(cfg.out_dir);
        const fs::path dir(cfg.out_dir);
        write_timeseries_csv((dir / "timeseries.csv").string(), traj.report);
        for (const auto& st : traj.states) {
            char name[64];
            std::snprintf(name, sizeof(name), "snapshot_%.6f.csv", st.t);
            write_snapshot_csv((dir / name).string(), mesh, st);
        }
        write_report_txt((dir / "report.txt").string(), traj.report, code, sys.name);

        std::vector<PlotSeries> norm_series;
        for (int i = 0; i < sys.m; ++i) {
            PlotSeries s;
            s.label = "linf u_" + std::to_string(i + 1);
            s.x = traj.report.times;
            for (const auto& v : traj.report.linf_norms) s.y.push_back(v[i]);
            norm_series.push_back(std::move(s));
        }
        svg_line_plot((dir / "norms.svg").string(), norm_series,
                      "sup norms vs time");
        if (!traj.report.weighted_mass.empty()) {
            PlotSeries s;
            s.label = "weighted mass";
            s.x = traj.report.times;
            s.y = traj.report.weighted_mass;
            svg_line_plot((dir / "mass.svg").string(), {s},
                          "weighted mass vs time");
        }

        if (code == 2)
            std::cout << "blow-up at t = " << traj.report.blowup->time
                      << " (species " << traj.report.blowup->species + 1 << ")\n";
        else if (code == 3)
            std::cout << "fixed-point iteration failed to converge\n";
        else
            std::cout << "completed " << traj.report.steps_recorded()
                      << " steps\n";
        std::cout << "artifacts in " << cfg.out_dir << "\n";
        return code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_converge(const std::string& cfg_path) {
    RunConfig cfg;
    try {
        cfg = load_config(cfg_path);
        if (cfg.h_list.size() < 3)
            throw ConfigError("converge: need >= 3 mesh sizes in h_list");
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    try {
        ConvergenceConfig cc;
        cc.s = cfg.s;
        cc.N = cfg.N;
        cc.d1 = cfg.d1;
        cc.d2 = cfg.d2;
        cc.beta = cfg.beta;
        cc.T = cfg.T;
        cc.k = cfg.k;
        cc.stepper = cfg.stepper;
        cc.threads = resolved_threads(cfg);
        std::cout << "fracrd converge: s = " << cc.s << ", T = " << cc.T
                  << ", k = " << cc.k << ", " << cfg.h_list.size()
                  << " mesh sizes\n";
        RateFit fit = convergence_study(cc, cfg.h_list);
        fs::create_directories(cfg.out_dir);
        const fs::path dir(cfg.out_dir);
        write_convergence_csv((dir / "convergence.csv").string(), fit.h_values,
                              fit.errors, fit.slope, fit.r_squared);
        PlotSeries s;
        s.label = "L2 error";
        s.x = fit.h_values;
        s.y = fit.errors;
        svg_line_plot((dir / "convergence.svg").string(), {s},
                      "final-time L2 error vs h (log-log)", true, true);
        std::cout << "fitted slope " << fit.slope << " (r^2 = " << fit.r_squared
                  << ")\n";
        std::cout << "artifacts in " << cfg.out_dir << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_verify() {
    const auto results = run_verification();
    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    for (const auto& r : results)
        std::printf("%-*s  %s  %s\n", static_cast<int>(width), r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str());
    return all_pass(results) ? 0 : 4;
}

int cmd_presets() {
    std::cout
        << "chemistry        three-species reversible reaction; parameters "
           "alpha1..alpha3 (>= 1), d1..d3\n"
        << "s_exp            two-species exponential system; parameters beta "
           "(> 0), d1, d2\n"
        << "manufactured     s_exp with forcing making (rho e^-t, rho e^-t / 2) "
           "exact; parameters s, N, d1, d2, beta; domain (-1, 1)\n"
        << "triangular_demo  m-species chain with triangular structure; "
           "parameters species (>= 2), d1..d3 cycled\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional reaction-diffusion batch simulator"};
    app.require_subcommand(1);

    std::string run_cfg, conv_cfg;
    auto* run = app.add_subcommand("run", "run one simulation from a config file");
    run->add_option("config", run_cfg, "key = value config file")->required();
    auto* conv = app.add_subcommand("converge", "manufactured-solution rate study");
    conv->add_option("config", conv_cfg, "key = value config file")->required();
    auto* ver = app.add_subcommand("verify", "run the verification property suite");
    auto* pre = app.add_subcommand("presets", "list shipped reaction presets");

    CLI11_PARSE(app, argc, argv);
    if (run->parsed()) return cmd_run(run_cfg);
    if (conv->parsed()) return cmd_converge(conv_cfg);
    if (ver->parsed()) return cmd_verify();
    if (pre->parsed()) return cmd_presets();
    return 1;
}
