#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "fracrd/frac_operator.hpp"
#include "fracrd/quadrature.hpp"
#include "fracrd/special.hpp"

using namespace fracrd;

namespace {

Vector interp_getoor(const Mesh1D& mesh, double s) {
    Vector v(mesh.n);
    for (int i = 0; i < mesh.n; ++i)
        v[i] = getoor_profile(mesh.nodes[static_cast<std::size_t>(i)], s);
    return v;
}

double getoor_ratio(const Matrix& A, const Mesh1D& mesh, double s) {
    MassMatrix M = assemble_mass(mesh);
    const Vector target = getoor_constant(1, s) * M.lumped();
    return (A * interp_getoor(mesh, s) - target).norm() / target.norm();
}

double hat(double x, double center, double h) {
    const double t = std::abs(x - center) / h;
    return t < 1.0 ? 1.0 - t : 0.0;
}

// Brute-force bilinear-form entry by adaptive quadrature of the defining
// double integral; shares nothing with the Duffy/gap assembly path.
double brute_entry(const Mesh1D& mesh, double s, int i, int j) {
    const double a = mesh.a, b = mesh.b, h = mesh.h;
    const double xi = mesh.nodes[static_cast<std::size_t>(i - 1)];
    const double xj = mesh.nodes[static_cast<std::size_t>(j - 1)];
    auto inner = [&](double x) {
        const double pix = hat(x, xi, h), pjx = hat(x, xj, h);
        auto f = [&](double y) {
            const double dy = x - y;
            if (dy == 0.0) return 0.0;
            return (pix - hat(y, xi, h)) * (pjx - hat(y, xj, h)) *
                   std::pow(std::abs(dy), -1.0 - 2.0 * s);
        };
        double acc = 0.0;
        std::vector<double> pts = {a, xi - h, xi, xi + h, xj - h, xj, xj + h, x, b};
        std::sort(pts.begin(), pts.end());
        for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
            const double lo = std::max(a, pts[k]), hi = std::min(b, pts[k + 1]);
            if (hi > lo) acc += integrate_adaptive(f, lo, hi, 1e-12, 1e-10);
        }
        return acc;
    };
    std::vector<double> xpts = {a, xi - h, xi, xi + h, xj - h, xj, xj + h, b};
    std::sort(xpts.begin(), xpts.end());
    double I2 = 0.0;
    for (std::size_t k = 0; k + 1 < xpts.size(); ++k) {
        const double lo = std::max(a, xpts[k]), hi = std::min(b, xpts[k + 1]);
        if (hi > lo) I2 += integrate_adaptive(inner, lo, hi, 1e-11, 1e-9);
    }
    // exterior tail via mapped half-infinite integrals, not the closed form
    auto tail_beyond = [&](double x, int side) {
        auto g = [&](double t) {
            const double y = side > 0 ? b + t / (1.0 - t) : a - t / (1.0 - t);
            const double jac = 1.0 / ((1.0 - t) * (1.0 - t));
            return std::pow(std::abs(x - y), -1.0 - 2.0 * s) * jac;
        };
        return integrate_adaptive(g, 0.0, 1.0 - 1e-9, 1e-12, 1e-10);
    };
    auto tfun = [&](double x) {
        return hat(x, xi, h) * hat(x, xj, h) *
               (tail_beyond(x, +1) + tail_beyond(x, -1));
    };
    double T = 0.0;
    const double lo = std::max({a, xi - h, xj - h});
    const double hi = std::min({b, xi + h, xj + h});
    if (hi > lo) {
        std::vector<double> tp = {lo, xi, xj, hi};
        std::sort(tp.begin(), tp.end());
        for (std::size_t k = 0; k + 1 < tp.size(); ++k) {
            const double l2 = std::max(lo, tp[k]), h2 = std::min(hi, tp[k + 1]);
            if (h2 > l2) T += integrate_adaptive(tfun, l2, h2, 1e-12, 1e-10);
        }
    }
    const double ans = normalization_constant(1, s);
    return 0.5 * ans * (I2 + 2.0 * T);
}

}  // namespace

TEST_CASE("mass matrix entries and row sums") {
    Mesh1D m1(0.0, 2.0, 1);  // h = 1
    MassMatrix M1 = assemble_mass(m1);
    CHECK(M1.dense()(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    Mesh1D m3(0.0, 1.0, 3);  // h = 0.25
    Matrix D = assemble_mass(m3).dense();
    CHECK(D(0, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(D(0, 1) == doctest::Approx(1.0 / 24.0).epsilon(1e-15));
    CHECK(D(1, 2) == doctest::Approx(1.0 / 24.0).epsilon(1e-15));
    CHECK(D(0, 2) == 0.0);

    Mesh1D m8(-1.0, 1.0, 8);
    Vector rs = assemble_mass(m8).lumped();
    CHECK(rs[0] == doctest::Approx(5.0 * m8.h / 6.0).epsilon(1e-14));
    CHECK(rs[3] == doctest::Approx(m8.h).epsilon(1e-14));
    // 1^T M 1 is the integral of the squared interpolant of one
    CHECK(rs.sum() ==
          doctest::Approx(m8.length() - 4.0 * m8.h / 3.0).epsilon(1e-14));
}

TEST_CASE("mesh invariants") {
    Mesh1D mesh(-1.0, 1.0, 7);
    CHECK(mesh.h == doctest::Approx(0.25).epsilon(1e-15));
    for (int i = 0; i + 1 < mesh.n; ++i)
        CHECK(mesh.nodes[static_cast<std::size_t>(i)] <
              mesh.nodes[static_cast<std::size_t>(i + 1)]);
    CHECK(std::abs(mesh.h * (mesh.n + 1) - mesh.length()) <= 1e-15);
    CHECK_THROWS_AS(Mesh1D(1.0, -1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(Mesh1D(-1.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("stiffness is symmetric bit-exactly and PSD") {
    for (double s : {0.25, 0.5, 0.75}) {
        Mesh1D mesh(-1.0, 1.0, 40);
        Matrix A = assemble_stiffness(mesh, s);
        for (int i = 0; i < A.rows(); ++i)
            for (int j = 0; j < i; ++j) REQUIRE(A(i, j) == A(j, i));
        const double amax = A.cwiseAbs().maxCoeff();
        std::mt19937_64 rng(7);
        std::normal_distribution<double> g;
        for (int t = 0; t < 1000; ++t) {
            Vector v(mesh.n);
            for (int i = 0; i < mesh.n; ++i) v[i] = g(rng);
            REQUIRE(v.dot(A * v) >= -1e-12 * v.squaredNorm() * amax);
        }
    }
}

TEST_CASE("entries match the brute-force double integral at s = 0.5") {
    Mesh1D mesh(-1.0, 1.0, 16);
    const double s = 0.5;
    Matrix A = assemble_stiffness(mesh, s);
    // frozen 25-digit quadrature of the same entry
    CHECK(A(0, 0) == doctest::Approx(0.8825424006106064).epsilon(1e-9));
    for (auto [i, j] : {std::pair{1, 1}, {1, 2}, {3, 7}, {1, 16}}) {
        const double ref = brute_entry(mesh, s, i, j);
        CHECK(A(i - 1, j - 1) == doctest::Approx(ref).epsilon(1e-6));
    }
}

TEST_CASE("brute-force agreement away from s = 1/2") {
    Mesh1D mesh(-1.0, 1.0, 8);
    for (double s : {0.3, 0.75}) {
        Matrix A = assemble_stiffness(mesh, s);
        for (auto [i, j] : {std::pair{1, 1}, {2, 5}, {1, 8}}) {
            const double ref = brute_entry(mesh, s, i, j);
            CHECK(A(i - 1, j - 1) == doctest::Approx(ref).epsilon(2e-6));
        }
    }
}

TEST_CASE("getoor residual at n = 64, s = 0.5 within 10%") {
    Mesh1D mesh(-1.0, 1.0, 64);
    Matrix A = assemble_stiffness(mesh, 0.5);
    CHECK(getoor_ratio(A, mesh, 0.5) <= 0.10);
}

TEST_CASE("getoor residual decreases with refinement (10% slack per step)") {
    for (double s : {0.25, 0.5}) {
        double prev = -1.0;
        for (int n : {64, 128, 256, 512}) {
            Mesh1D mesh(-1.0, 1.0, n);
            const double r = getoor_ratio(assemble_stiffness(mesh, s), mesh, s);
            if (prev >= 0.0) CHECK(r <= 1.1 * prev);
            prev = r;
        }
    }
}

TEST_CASE("quadrature self-check: order 8 against order 12") {
    Mesh1D mesh(-1.0, 1.0, 24);
    for (double s : {0.25, 0.6, 0.9}) {
        Matrix A8 = assemble_stiffness(mesh, s, 8);
        Matrix A12 = assemble_stiffness(mesh, s, 12);
        const double scale = A8.cwiseAbs().maxCoeff();
        CHECK((A8 - A12).cwiseAbs().maxCoeff() <= 1e-10 * scale);
    }
}

TEST_CASE("uniform-mesh stiffness is Toeplitz up to rounding") {
    Mesh1D mesh(-1.0, 1.0, 32);
    Matrix A = assemble_stiffness(mesh, 0.7);
    const double scale = A.cwiseAbs().maxCoeff();
    for (int i = 1; i < mesh.n; ++i)
        for (int j = 1; j < mesh.n; ++j)
            REQUIRE(std::abs(A(i, j) - A(i - 1, j - 1)) <= 1e-11 * scale);
}

TEST_CASE("energy-norm identity against a direct double integral") {
    Mesh1D mesh(-1.0, 1.0, 4);
    const double s = 0.6;
    FracOperator op(mesh, s, 1.0);
    Vector v(4);
    v << 0.3, -0.7, 1.1, 0.4;
    auto u = [&](double x) {
        double acc = 0.0;
        for (int i = 0; i < 4; ++i)
            acc += v[i] * hat(x, mesh.nodes[static_cast<std::size_t>(i)], mesh.h);
        return acc;
    };
    auto inner = [&](double x) {
        const double ux = u(x);
        auto f = [&](double y) {
            const double dy = x - y;
            if (dy == 0.0) return 0.0;
            const double du = ux - u(y);
            return du * du * std::pow(std::abs(dy), -1.0 - 2.0 * s);
        };
        double acc = 0.0;
        std::vector<double> pts = {x};
        for (int e = 0; e <= mesh.n + 1; ++e) pts.push_back(mesh.element_left(e));
        std::sort(pts.begin(), pts.end());
        for (std::size_t k = 0; k + 1 < pts.size(); ++k)
            if (pts[k + 1] > pts[k])
                acc += integrate_adaptive(f, pts[k], pts[k + 1], 1e-11, 1e-9);
        return acc;
    };
    double I2 = 0.0;
    for (int e = 0; e <= mesh.n; ++e)
        I2 += integrate_adaptive(inner, mesh.element_left(e),
                                 mesh.element_left(e) + mesh.h, 1e-10, 1e-8);
    auto tail = [&](double x) {
        auto g = [&](double t, int side) {
            const double y =
                side > 0 ? mesh.b + t / (1.0 - t) : mesh.a - t / (1.0 - t);
            return std::pow(std::abs(x - y), -1.0 - 2.0 * s) /
                   ((1.0 - t) * (1.0 - t));
        };
        const double ux = u(x);
        return ux * ux *
               (integrate_adaptive([&](double t) { return g(t, +1); }, 0.0,
                                   1.0 - 1e-9, 1e-12, 1e-10) +
                integrate_adaptive([&](double t) { return g(t, -1); }, 0.0,
                                   1.0 - 1e-9, 1e-12, 1e-10));
    };
    double T = 0.0;
    for (int e = 0; e <= mesh.n; ++e)
        T += integrate_adaptive(tail, mesh.element_left(e),
                                mesh.element_left(e) + mesh.h, 1e-11, 1e-9);
    const double direct = I2 + 2.0 * T;
    const double via_matrix = 2.0 * v.dot(op.A * v) / op.a_ns;
    CHECK(via_matrix == doctest::Approx(direct).epsilon(1e-6));
    CHECK(op.hs_seminorm(v) == doctest::Approx(std::sqrt(direct)).epsilon(1e-6));
}

TEST_CASE("extreme s is rejected with a diagnostic") {
    Mesh1D mesh(-1.0, 1.0, 8);
    CHECK_THROWS_AS(assemble_stiffness(mesh, 1e-9), AssemblyError);
    CHECK_THROWS_AS(assemble_stiffness(mesh, 1.0 - 1e-9), AssemblyError);
    CHECK_THROWS_AS(assemble_stiffness(mesh, 0.0), std::domain_error);
    CHECK_THROWS_AS(assemble_stiffness(mesh, 1.0), std::domain_error);
    CHECK_THROWS_AS(FracOperator(mesh, 0.5, -1.0), std::domain_error);
}

TEST_CASE("flipping the tail sign breaks the getoor identity (mutation)") {
    Mesh1D mesh(-1.0, 1.0, 64);
    const double s = 0.5;
    Matrix A = assemble_stiffness(mesh, s);
    Matrix bad = A - 2.0 * exterior_tail_matrix(mesh, s);
    CHECK(getoor_ratio(A, mesh, s) <= 0.10);
    CHECK(getoor_ratio(bad, mesh, s) > 0.10);
}

TEST_CASE("finished operator supports concurrent read-only use") {
    Mesh1D mesh(-1.0, 1.0, 48);
    const FracOperator op(mesh, 0.5, 2.0);
    Vector v = interp_getoor(mesh, 0.5);
    const Vector expected = op.A * v;
    std::vector<Vector> results(4);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back(
            [&, t] { results[static_cast<std::size_t>(t)] = op.A * v; });
    for (auto& th : pool) th.join();
    for (const auto& r : results) CHECK((r.array() == expected.array()).all());
}
