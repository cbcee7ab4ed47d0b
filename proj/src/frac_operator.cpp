#include "fracrd/frac_operator.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "fracrd/quadrature.hpp"
#include "fracrd/special.hpp"

namespace fracrd {

Vector MassMatrix::apply(const Vector& v) const {
    Vector r(n_);
    const double dg = diagonal(), off = off_diagonal();
    for (int i = 0; i < n_; ++i) {
        double acc = dg * v[i];
        if (i > 0) acc += off * v[i - 1];
        if (i + 1 < n_) acc += off * v[i + 1];
        r[i] = acc;
    }
    return r;
}

Matrix MassMatrix::dense() const {
    Matrix m = Matrix::Zero(n_, n_);
    for (int i = 0; i < n_; ++i) {
        m(i, i) = diagonal();
        if (i + 1 < n_) m(i, i + 1) = m(i + 1, i) = off_diagonal();
    }
    return m;
}

Vector MassMatrix::lumped() const { return apply(Vector::Ones(n_)); }

MassMatrix assemble_mass(const Mesh1D& mesh) { return MassMatrix(mesh); }

namespace {

void check_s_range(const Mesh1D& mesh, double s) {
    if (!(s > 0.0) || !(s < 1.0))
        throw std::domain_error("assemble_stiffness: s must lie in (0, 1)");
    const double margin = 1e-8;
    const double hs = std::pow(mesh.h, 1.0 - 2.0 * s);
    const double tail_scale = std::pow(mesh.h, -2.0 * s) / (2.0 * s);
    if (s < margin || s > 1.0 - margin || !std::isfinite(hs) ||
        !std::isfinite(tail_scale)) {
        std::ostringstream msg;
        msg << "assemble_stiffness: s = " << s
            << " too close to an endpoint of (0,1); quadrature scales h^{1-2s} = "
            << hs << ", tail = " << tail_scale << " are not representable safely";
        throw AssemblyError(msg.str());
    }
}

// Dimensionless local pair matrix for elements (e_k, e_{k+g}) at unit spacing.
// Row/column order by participating node relative to k:
//   g == 0: {k-1, k}            (2x2)
//   g == 1: {k-1, k, k+1}       (3x3)
//   g >= 2: {k-1, k, k+g-1, k+g} (4x4)
// Entries multiply h^{1-2s} in physical units.
struct LocalPair {
    std::array<std::array<double, 4>, 4> m{};
    int size = 0;
};

LocalPair local_pair_same(double s) {
    // After the Duffy split along the diagonal, the shape-function difference is
    // exactly linear in the radial variable; both radial moments are closed form.
    LocalPair L;
    L.size = 2;
    const double c = 2.0 * (1.0 / (2.0 - 2.0 * s) - 1.0 / (3.0 - 2.0 * s));
    const std::array<double, 2> sig = {-1.0, 1.0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) L.m[i][j] = c * sig[i] * sig[j];
    return L;
}

LocalPair local_pair_adjacent(double s, int order) {
    // Corner singularity at the shared vertex. With u, v the distances to the
    // vertex inside each element, the bases differ by b*u + c*v; on each Duffy
    // triangle the radial factor u^{2-2s} integrates to 1/(3-2s) and the
    // remaining (1+w)^{-1-2s} factor is smooth on [0,1].
    LocalPair L;
    L.size = 3;
    const std::array<double, 3> b = {1.0, -1.0, 0.0};
    const std::array<double, 3> c = {0.0, 1.0, -1.0};
    const double radial = 1.0 / (3.0 - 2.0 * s);
    for (const auto& q : gauss_legendre(order)) {
        const double w = 0.5 * (q.x + 1.0);
        const double wt = 0.5 * q.w;
        const double kern = std::pow(1.0 + w, -1.0 - 2.0 * s);
        std::array<double, 3> d1{}, d2{};
        for (int i = 0; i < 3; ++i) {
            d1[i] = b[i] + c[i] * w;  // triangle u > v
            d2[i] = b[i] * w + c[i];  // triangle v > u
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                L.m[i][j] += wt * kern * (d1[i] * d1[j] + d2[i] * d2[j]);
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) L.m[i][j] *= radial;
    return L;
}

LocalPair local_pair_disjoint(int g, double s, int order) {
    LocalPair L;
    L.size = 4;
    for (const auto& qx : gauss_legendre(order)) {
        const double xi = 0.5 * (qx.x + 1.0);
        const double wx = 0.5 * qx.w;
        for (const auto& qy : gauss_legendre(order)) {
            const double eta = 0.5 * (qy.x + 1.0);
            const double wy = 0.5 * qy.w;
            const double kern =
                std::pow(static_cast<double>(g) + eta - xi, -1.0 - 2.0 * s);
            const std::array<double, 4> d = {1.0 - xi, xi, -(1.0 - eta), -eta};
            const double ww = wx * wy * kern;
            // d[i]*d[j] first so transposed entries accumulate identical doubles
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) L.m[i][j] += ww * (d[i] * d[j]);
        }
    }
    return L;
}

// Node ids (1-based) taking part in the pair (e_k, e_{k+g}), aligned with the
// LocalPair ordering. Ids outside 1..n are boundary vertices (skipped).
void pair_node_ids(int k, int g, std::array<int, 4>& ids, int& count) {
    if (g == 0) {
        ids = {k - 1, k, 0, 0};
        count = 2;
    } else if (g == 1) {
        ids = {k - 1, k, k + 1, 0};
        count = 3;
    } else {
        ids = {k - 1, k, k + g - 1, k + g};
        count = 4;
    }
}

}  // namespace

Matrix exterior_tail_matrix(const Mesh1D& mesh, double s) {
    const int n = mesh.n;
    const double h = mesh.h;
    const double L = mesh.length();
    const double a_ns = normalization_constant(1, s);
    Matrix T = Matrix::Zero(n, n);

    // int over [t0,t1] of (c0 + c1 t + c2 t^2) t^{-2s}, skipping vanishing terms
    const auto weighted_block = [&](double c0, double c1, double c2, double t0,
                                    double t1) {
        double acc = 0.0;
        if (c0 != 0.0) acc += c0 * power_moment(-2.0 * s, t0, t1);
        if (c1 != 0.0) acc += c1 * power_moment(1.0 - 2.0 * s, t0, t1);
        if (c2 != 0.0) acc += c2 * power_moment(2.0 - 2.0 * s, t0, t1);
        return acc;
    };

    for (int k = 1; k <= n + 1; ++k) {
        const double t0 = static_cast<double>(k - 1) * h;
        const double t1 = static_cast<double>(k) * h;
        // basis restricted to the element, in t = x - a: phi = alpha + beta t
        struct Fn {
            int id;
            double alpha, beta;
        };
        std::array<Fn, 2> fns{};
        int nf = 0;
        if (k - 1 >= 1) fns[nf++] = {k - 1, t1 / h, -1.0 / h};
        if (k <= n) fns[nf++] = {k, -t0 / h, 1.0 / h};
        for (int ii = 0; ii < nf; ++ii) {
            for (int jj = 0; jj < nf; ++jj) {
                const Fn &fi = fns[ii], &fj = fns[jj];
                // left tail weight t^{-2s}
                double I = weighted_block(fi.alpha * fj.alpha,
                                          fi.alpha * fj.beta + fj.alpha * fi.beta,
                                          fi.beta * fj.beta, t0, t1);
                // right tail: mirror through r = L - t
                const double ami = fi.alpha + fi.beta * L, bmi = -fi.beta;
                const double amj = fj.alpha + fj.beta * L, bmj = -fj.beta;
                I += weighted_block(ami * amj, ami * bmj + amj * bmi, bmi * bmj,
                                    L - t1, L - t0);
                T(fi.id - 1, fj.id - 1) += a_ns * I / (2.0 * s);
            }
        }
    }
    return T;
}

Matrix assemble_stiffness(const Mesh1D& mesh, double s, int quad_order) {
    check_s_range(mesh, s);
    const int n = mesh.n;
    const double h = mesh.h;
    const double a_ns = normalization_constant(1, s);
    const double hpow = std::pow(h, 1.0 - 2.0 * s);

    Matrix A = Matrix::Zero(n, n);
    std::array<int, 4> ids{};
    int count = 0;
    for (int g = 0; g <= n; ++g) {
        LocalPair L = g == 0   ? local_pair_same(s)
                      : g == 1 ? local_pair_adjacent(s, quad_order)
                               : local_pair_disjoint(g, s, quad_order);
        const double fac = 0.5 * a_ns * hpow * (g == 0 ? 1.0 : 2.0);
        for (int k = 1; k <= n + 1 - g; ++k) {
            pair_node_ids(k, g, ids, count);
            for (int li = 0; li < count; ++li) {
                const int gi = ids[li];
                if (gi < 1 || gi > n) continue;
                for (int lj = 0; lj < count; ++lj) {
                    const int gj = ids[lj];
                    if (gj < 1 || gj > n) continue;
                    A(gi - 1, gj - 1) += fac * L.m[li][lj];
                }
            }
        }
    }
    A += exterior_tail_matrix(mesh, s);
    return A;
}

FracOperator::FracOperator(const Mesh1D& m, double s_in, double d_in,
                           int quad_order)
    : mesh(m), s(s_in), d(d_in), A(), M(m), a_ns(0.0) {
    if (!(d > 0.0))
        throw std::domain_error("FracOperator: diffusion coefficient must be > 0");
    A = assemble_stiffness(mesh, s, quad_order);
    a_ns = normalization_constant(1, s);
}

double FracOperator::hs_seminorm(const Vector& v) const {
    return std::sqrt(2.0 * v.dot(A * v) / a_ns);
}

}  // namespace fracrd
