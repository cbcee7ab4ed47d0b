#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>

namespace fracrd {

struct QuadNode {
    double x;  // abscissa on [-1, 1]
    double w;  // weight
};

/// Gauss-Legendre rules on [-1, 1].
std::span<const QuadNode> gauss_legendre(int order);  // supported: 3, 8, 12

/// Integrate f over [lo, hi] with the given Gauss-Legendre order.
double integrate_gl(const std::function<double(double)>& f, double lo, double hi,
                    int order);

/// Adaptive Gauss-Kronrod (G7, K15) integration of f over [lo, hi].
/// Splits until the local error estimate satisfies the tolerance; throws
/// std::runtime_error if the interval budget is exhausted first.
double integrate_adaptive(const std::function<double(double)>& f, double lo,
                          double hi, double abs_tol, double rel_tol,
                          int max_intervals = 20000);

/// Stable power moment: integral of t^q over [t0, t1], 0 <= t0 < t1, valid for
/// q > -1 when t0 == 0 and all real q otherwise (log form at q == -1).
double power_moment(double q, double t0, double t1);

}  // namespace fracrd
