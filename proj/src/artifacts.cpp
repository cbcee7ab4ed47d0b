#include "fracrd/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fracrd {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

}  // namespace

void write_timeseries_csv(const std::string& path, const RunReport& report) {
    auto out = open_or_throw(path);
    const int m = report.linf_norms.empty()
                      ? 0
                      : static_cast<int>(report.linf_norms.front().size());
    out << "time";
    for (int i = 1; i <= m; ++i) out << ",linf_" << i;
    if (report.lp_p > 0.0)
        for (int i = 1; i <= m; ++i) out << ",lp_" << i;
    if (!report.weighted_mass.empty()) out << ",weighted_mass";
    for (int i = 1; i <= m; ++i) out << ",min_" << i;
    out << ",fp_iters,contraction_ratio\n";
    for (std::size_t j = 0; j < report.times.size(); ++j) {
        out << format_double(report.times[j]);
        for (int i = 0; i < m; ++i) out << ',' << format_double(report.linf_norms[j][i]);
        if (report.lp_p > 0.0)
            for (int i = 0; i < m; ++i) out << ',' << format_double(report.lp_norms[j][i]);
        if (!report.weighted_mass.empty())
            out << ',' << format_double(report.weighted_mass[j]);
        for (int i = 0; i < m; ++i) out << ',' << format_double(report.min_values[j][i]);
        if (j == 0)
            out << ",0,0\n";  // the initial state carries no iteration data
        else
            out << ',' << report.fp_iters[j - 1] << ','
                << format_double(report.contraction_ratios[j - 1]) << '\n';
    }
}

void write_snapshot_csv(const std::string& path, const Mesh1D& mesh,
                        const SystemState& state) {
    auto out = open_or_throw(path);
    out << "x";
    for (int i = 1; i <= state.species(); ++i) out << ",u_" << i;
    out << '\n';
    for (int j = 0; j < mesh.n; ++j) {
        out << format_double(mesh.nodes[static_cast<std::size_t>(j)]);
        for (int i = 0; i < state.species(); ++i)
            out << ',' << format_double(state.U(i, j));
        out << '\n';
    }
}

void write_report_txt(const std::string& path, const RunReport& report,
                      int exit_code, const std::string& preset) {
    auto out = open_or_throw(path);
    const char* status = report.status == RunStatus::completed ? "completed"
                         : report.status == RunStatus::blew_up ? "blew_up"
                                                               : "fp_failed";
    out << "preset = " << preset << '\n';
    out << "status = " << status << '\n';
    out << "exit_code = " << exit_code << '\n';
    out << "steps_computed = " << report.steps_recorded() << '\n';
    if (!report.times.empty())
        out << "final_time = " << format_double(report.times.back()) << '\n';
    if (!report.linf_norms.empty()) {
        const auto& fin = report.linf_norms.back();
        for (int i = 0; i < fin.size(); ++i)
            out << "final_linf_" << (i + 1) << " = " << format_double(fin[i]) << '\n';
        const auto& mn = report.min_values.back();
        for (int i = 0; i < mn.size(); ++i)
            out << "final_min_" << (i + 1) << " = " << format_double(mn[i]) << '\n';
    }
    if (!report.weighted_mass.empty()) {
        out << "initial_weighted_mass = " << format_double(report.weighted_mass.front()) << '\n';
        out << "final_weighted_mass = " << format_double(report.weighted_mass.back()) << '\n';
    }
    int max_iters = 0;
    double max_contraction = 0.0;
    for (int it : report.fp_iters) max_iters = std::max(max_iters, it);
    for (double c : report.contraction_ratios)
        max_contraction = std::max(max_contraction, c);
    out << "max_fp_iters = " << max_iters << '\n';
    out << "max_contraction_ratio = " << format_double(max_contraction) << '\n';
    if (report.blowup) {
        out << "blowup_time = " << format_double(report.blowup->time) << '\n';
        out << "blowup_species = " << (report.blowup->species + 1) << '\n';
        out << "blowup_value = " << format_double(report.blowup->value) << '\n';
    }
}

void write_convergence_csv(const std::string& path,
                           const std::vector<double>& h_values,
                           const std::vector<double>& errors, double slope,
                           double r_squared) {
    auto out = open_or_throw(path);
    out << "h,error\n";
    for (std::size_t i = 0; i < h_values.size(); ++i)
        out << format_double(h_values[i]) << ',' << format_double(errors[i]) << '\n';
    out << "# slope = " << format_double(slope)
        << ", r_squared = " << format_double(r_squared) << '\n';
}

namespace {

struct Extent {
    double lo = 0.0, hi = 1.0;
};

Extent extent_of(const std::vector<PlotSeries>& series, bool use_y, bool log_scale) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : series) {
        const auto& v = use_y ? s.y : s.x;
        for (double val : v) {
            if (log_scale && !(val > 0.0)) continue;
            const double t = log_scale ? std::log10(val) : val;
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
    }
    if (!(lo < hi)) {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        } else {
            lo -= 0.5;
            hi += 0.5;
        }
    }
    return {lo, hi};
}

}  // namespace

void svg_line_plot(const std::string& path, const std::vector<PlotSeries>& series,
                   const std::string& title, bool log_x, bool log_y) {
    const int W = 760, H = 480;
    const int ml = 70, mr = 20, mt = 40, mb = 50;
    const Extent ex = extent_of(series, false, log_x);
    const Extent ey = extent_of(series, true, log_y);
    auto px = [&](double v) {
        const double t = log_x ? std::log10(v) : v;
        return ml + (t - ex.lo) / (ex.hi - ex.lo) * (W - ml - mr);
    };
    auto py = [&](double v) {
        const double t = log_y ? std::log10(v) : v;
        return H - mb - (t - ey.lo) / (ey.hi - ey.lo) * (H - mt - mb);
    };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
    auto out = open_or_throw(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">"
        << title << "</text>\n";
    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
        << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
        << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 5; ++t) {
        const double fx = ex.lo + (ex.hi - ex.lo) * t / 5.0;
        const double fy = ey.lo + (ey.hi - ey.lo) * t / 5.0;
        const double vx = log_x ? std::pow(10.0, fx) : fx;
        const double vy = log_y ? std::pow(10.0, fy) : fy;
        const double xx = ml + (W - ml - mr) * t / 5.0;
        const double yy = H - mb - (H - mt - mb) * t / 5.0;
        char lab[32];
        std::snprintf(lab, sizeof(lab), "%.3g", vx);
        out << "<line x1=\"" << xx << "\" y1=\"" << H - mb << "\" x2=\"" << xx
            << "\" y2=\"" << H - mb + 5 << "\" stroke=\"black\"/>"
            << "<text x=\"" << xx << "\" y=\"" << H - mb + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << lab << "</text>\n";
        std::snprintf(lab, sizeof(lab), "%.3g", vy);
        out << "<line x1=\"" << ml - 5 << "\" y1=\"" << yy << "\" x2=\"" << ml
            << "\" y2=\"" << yy << "\" stroke=\"black\"/>"
            << "<text x=\"" << ml - 8 << "\" y=\"" << yy + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << lab << "</text>\n";
    }
    int ci = 0;
    for (const auto& s : series) {
        const char* color = palette[ci % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if ((log_x && !(s.x[i] > 0.0)) || (log_y && !(s.y[i] > 0.0))) continue;
            out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << W - mr - 150 << "\" y=\"" << mt + 16 * (ci + 1)
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color
            << "\">" << s.label << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
}

}  // namespace fracrd
