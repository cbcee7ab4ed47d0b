#pragma once

#include <string>
#include <vector>

#include "fracrd/trajectory.hpp"

namespace fracrd {

/// Columns: time, linf_<i> per species, lp_<i> when recorded, weighted_mass
/// when present, min_<i> per species, fp_iters, contraction_ratio. Comma
/// separated, '.' decimal, LF line endings; byte-stable for identical runs.
void write_timeseries_csv(const std::string& path, const RunReport& report);

/// Columns: x, u_1 .. u_m at the state's time.
void write_snapshot_csv(const std::string& path, const Mesh1D& mesh,
                        const SystemState& state);

/// key = value summary of a finished run.
void write_report_txt(const std::string& path, const RunReport& report,
                      int exit_code, const std::string& preset);

/// Columns: h, error, plus a trailing comment line with the fitted slope.
void write_convergence_csv(const std::string& path,
                           const std::vector<double>& h_values,
                           const std::vector<double>& errors, double slope,
                           double r_squared);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal native SVG 1.1 line plot (polylines, axes, tick labels, legend).
void svg_line_plot(const std::string& path, const std::vector<PlotSeries>& series,
                   const std::string& title, bool log_x = false,
                   bool log_y = false);

std::string format_double(double v);

}  // namespace fracrd
