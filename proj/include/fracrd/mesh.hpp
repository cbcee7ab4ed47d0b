#pragma once

#include <stdexcept>
#include <vector>

namespace fracrd {

/// Uniform partition of the interval (a, b) with n interior nodes.
/// Node i (1-based in formulas, 0-based in storage) sits at a + (i+1)*h,
/// h = (b - a)/(n + 1). The boundary points a and b carry the homogeneous
/// exterior condition and are not degrees of freedom.
struct Mesh1D {
    double a = -1.0;
    double b = 1.0;
    int n = 0;
    double h = 0.0;
    std::vector<double> nodes;

    Mesh1D(double left, double right, int interior_nodes)
        : a(left), b(right), n(interior_nodes) {
        if (!(a < b)) throw std::invalid_argument("Mesh1D: requires a < b");
        if (n < 1) throw std::invalid_argument("Mesh1D: requires n >= 1");
        h = (b - a) / static_cast<double>(n + 1);
        nodes.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            nodes[static_cast<std::size_t>(i)] = a + static_cast<double>(i + 1) * h;
    }

    double length() const { return b - a; }

    /// Left edge of element k, k = 0..n (element k spans [edge(k), edge(k+1)]).
    double element_left(int k) const { return a + static_cast<double>(k) * h; }
    int element_count() const { return n + 1; }
};

}  // namespace fracrd
