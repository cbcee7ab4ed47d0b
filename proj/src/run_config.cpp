#include "fracrd/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "fracrd/special.hpp"

namespace fracrd {

namespace {

std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return "";
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
}

double parse_number(const std::string& v, const std::string& key) {
    // accept plain decimals and p/q fractions (mesh sizes are often 1/64)
    const auto slash = v.find('/');
    try {
        std::size_t used = 0;
        if (slash != std::string::npos) {
            const double num = std::stod(v.substr(0, slash), &used);
            if (used != slash) throw std::invalid_argument(v);
            const double den = std::stod(v.substr(slash + 1), &used);
            if (used != v.size() - slash - 1 || den == 0.0)
                throw std::invalid_argument(v);
            return num / den;
        }
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value '" + v + "' for key " + key);
    }
}

int parse_int(const std::string& v, const std::string& key) {
    const double x = parse_number(v, key);
    if (x != std::floor(x))
        throw ConfigError("config: key " + key + " expects an integer");
    return static_cast<int>(x);
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_number(item, key));
    }
    return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section at line " +
                                  std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section != "system" && section != "domain" && section != "time" &&
                section != "stepper" && section != "initial" &&
                section != "output" && section != "converge")
                throw ConfigError("config: unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " +
                              std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (qual == "system.preset") cfg.preset = value;
        else if (qual == "system.s") cfg.s = parse_number(value, qual);
        else if (qual == "system.N") cfg.N = parse_int(value, qual);
        else if (qual == "system.d1") cfg.d1 = parse_number(value, qual);
        else if (qual == "system.d2") cfg.d2 = parse_number(value, qual);
        else if (qual == "system.d3") cfg.d3 = parse_number(value, qual);
        else if (qual == "system.alpha1") cfg.alpha1 = parse_number(value, qual);
        else if (qual == "system.alpha2") cfg.alpha2 = parse_number(value, qual);
        else if (qual == "system.alpha3") cfg.alpha3 = parse_number(value, qual);
        else if (qual == "system.beta") cfg.beta = parse_number(value, qual);
        else if (qual == "system.species") cfg.species = parse_int(value, qual);
        else if (qual == "domain.a") cfg.a = parse_number(value, qual);
        else if (qual == "domain.b") cfg.b = parse_number(value, qual);
        else if (qual == "domain.n") cfg.n = parse_int(value, qual);
        else if (qual == "time.T") cfg.T = parse_number(value, qual);
        else if (qual == "time.k") cfg.k = parse_number(value, qual);
        else if (qual == "stepper.fp_tol") cfg.stepper.fp_tol = parse_number(value, qual);
        else if (qual == "stepper.fp_max_iters") cfg.stepper.fp_max_iters = parse_int(value, qual);
        else if (qual == "stepper.blowup_threshold") cfg.stepper.blowup_threshold = parse_number(value, qual);
        else if (qual == "initial.profile") {
            std::istringstream ps(value);
            std::string name;
            ps >> name;
            cfg.initial_profile = name;
            double level;
            if (ps >> level) cfg.initial_value = level;
        }
        else if (qual == "initial.scale") cfg.initial_scales = parse_list(value, qual);
        else if (qual == "output.dir") cfg.out_dir = value;
        else if (qual == "output.stride") cfg.stride = parse_int(value, qual);
        else if (qual == "output.lp_p") cfg.lp_p = parse_number(value, qual);
        else if (qual == "output.threads") cfg.threads = parse_int(value, qual);
        else if (qual == "converge.h_list") cfg.h_list = parse_list(value, qual);
        else if (qual == "converge.T") cfg.T = parse_number(value, qual);
        else if (qual == "converge.k") cfg.k = parse_number(value, qual);
        else
            throw ConfigError("config: unknown key '" + key + "' in section [" +
                              section + "]");
    }

    // range validation before any allocation
    if (cfg.preset != "chemistry" && cfg.preset != "s_exp" &&
        cfg.preset != "manufactured" && cfg.preset != "triangular_demo")
        throw ConfigError("config: unknown preset '" + cfg.preset + "'");
    if (!(cfg.s > 0.0 && cfg.s < 1.0)) throw ConfigError("config: s must be in (0,1)");
    if (cfg.N < 1) throw ConfigError("config: N must be >= 1");
    if (cfg.d1 <= 0 || cfg.d2 <= 0 || cfg.d3 <= 0)
        throw ConfigError("config: diffusion coefficients must be > 0");
    if (cfg.alpha1 < 1 || cfg.alpha2 < 1 || cfg.alpha3 < 1)
        throw ConfigError("config: alpha exponents must be >= 1");
    if (cfg.beta <= 0) throw ConfigError("config: beta must be > 0");
    if (cfg.species < 2) throw ConfigError("config: species must be >= 2");
    if (!(cfg.a < cfg.b)) throw ConfigError("config: domain requires a < b");
    if (cfg.n < 1 || cfg.n > 4096)
        throw ConfigError("config: n must lie in [1, 4096]");
    if (!(cfg.T > 0) || !(cfg.k > 0)) throw ConfigError("config: T, k must be > 0");
    if (!(cfg.stepper.fp_tol > 0)) throw ConfigError("config: fp_tol must be > 0");
    if (cfg.stepper.fp_max_iters < 1)
        throw ConfigError("config: fp_max_iters must be >= 1");
    if (!(cfg.stepper.blowup_threshold > 0))
        throw ConfigError("config: blowup_threshold must be > 0");
    if (cfg.initial_profile != "getoor" && cfg.initial_profile != "constant" &&
        cfg.initial_profile != "bump")
        throw ConfigError("config: unknown initial profile '" +
                          cfg.initial_profile + "'");
    if (cfg.stride < 1) throw ConfigError("config: stride must be >= 1");
    if (cfg.lp_p < 0) throw ConfigError("config: lp_p must be >= 0");
    if (cfg.threads < 0) throw ConfigError("config: threads must be >= 0");
    for (double sc : cfg.initial_scales)
        if (sc < 0) throw ConfigError("config: initial scales must be >= 0");
    for (double h : cfg.h_list)
        if (!(h > 0)) throw ConfigError("config: h_list entries must be > 0");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

ReactionSystem make_system(const RunConfig& cfg) {
    if (cfg.preset == "chemistry")
        return chemistry(ChemParams{cfg.alpha1, cfg.alpha2, cfg.alpha3, cfg.d1,
                                    cfg.d2, cfg.d3});
    if (cfg.preset == "s_exp") return s_exp(ExpParams{cfg.beta, cfg.d1, cfg.d2});
    if (cfg.preset == "manufactured") {
        if (cfg.a != -1.0 || cfg.b != 1.0)
            throw ConfigError(
                "config: the manufactured preset requires the domain (-1, 1)");
        return manufactured(cfg.s, cfg.N, cfg.d1, cfg.d2, cfg.beta);
    }
    return triangular_demo(cfg.species);
}

std::vector<FracOperator> make_operators(const RunConfig& cfg, const Mesh1D& mesh) {
    std::vector<double> ds;
    if (cfg.preset == "chemistry") ds = {cfg.d1, cfg.d2, cfg.d3};
    else if (cfg.preset == "s_exp" || cfg.preset == "manufactured")
        ds = {cfg.d1, cfg.d2};
    else {
        const double cycle[3] = {cfg.d1, cfg.d2, cfg.d3};
        for (int i = 0; i < cfg.species; ++i) ds.push_back(cycle[i % 3]);
    }
    std::vector<FracOperator> ops;
    ops.reserve(ds.size());
    for (double d : ds) ops.emplace_back(mesh, cfg.s, d);
    return ops;
}

Matrix make_initial_data(const RunConfig& cfg, const ReactionSystem& sys,
                         const Mesh1D& mesh) {
    std::vector<double> scales = cfg.initial_scales;
    if (scales.empty()) scales = sys.default_scales;
    if (static_cast<int>(scales.size()) != sys.m)
        throw ConfigError("config: initial scale list must have one entry per species");
    Matrix u0(sys.m, mesh.n);
    for (int j = 0; j < mesh.n; ++j) {
        const double x = mesh.nodes[static_cast<std::size_t>(j)];
        const double xi = (2.0 * x - (mesh.a + mesh.b)) / mesh.length();
        double base = 0.0;
        if (cfg.initial_profile == "getoor") base = getoor_profile(xi, cfg.s);
        else if (cfg.initial_profile == "constant") base = cfg.initial_value;
        else {
            const double r = 1.0 - xi * xi;
            base = r > 0.0 ? std::exp(1.0 - 1.0 / r) : 0.0;
        }
        for (int i = 0; i < sys.m; ++i)
            u0(i, j) = scales[static_cast<std::size_t>(i)] * base;
    }
    return u0;
}

int resolved_threads(const RunConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace fracrd
