#include "fracrd/reaction.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "fracrd/special.hpp"

namespace fracrd {

namespace {

constexpr double kOverflowExponent = 700.0;  // log(DBL_MAX) ~ 709.8
constexpr double kBlowupSentinel = 1e300;

bool is_integral(double a) { return a == std::floor(a); }

// Powers with the undershoot convention: integer exponents evaluate as
// written, non-integer exponents clamp a (slightly) negative base to zero.
double pow_clamped(double x, double alpha) {
    if (alpha == 1.0) return x;
    if (is_integral(alpha)) return std::pow(x, alpha);
    return std::pow(x > 0.0 ? x : 0.0, alpha);
}

double exp_with_sentinel(double u, double w) {
    if (u == 0.0) return 0.0;
    if (w > kOverflowExponent) return u > 0.0 ? kBlowupSentinel : -kBlowupSentinel;
    const double t = u * std::exp(w);
    if (!std::isfinite(t)) return u > 0.0 ? kBlowupSentinel : -kBlowupSentinel;
    return t;
}

std::mt19937_64 seeded_rng() { return std::mt19937_64(0x5eedULL); }

}  // namespace

Vector eval_reaction(const ReactionSystem& sys, const Vector& r) {
    if (r.size() != sys.m)
        throw std::invalid_argument("eval_reaction: species count mismatch");
    if (!r.allFinite())
        throw std::invalid_argument("eval_reaction: non-finite input");
    return sys.eval(r);
}

ReactionSystem chemistry(const ChemParams& p) {
    if (p.alpha1 < 1.0 || p.alpha2 < 1.0 || p.alpha3 < 1.0)
        throw std::invalid_argument("chemistry: exponents must be >= 1");
    if (p.d1 <= 0.0 || p.d2 <= 0.0 || p.d3 <= 0.0)
        throw std::invalid_argument("chemistry: diffusions must be > 0");
    ReactionSystem sys;
    sys.m = 3;
    sys.name = "chemistry";
    const double a1 = p.alpha1, a2 = p.alpha2, a3 = p.alpha3;
    sys.eval = [a1, a2, a3](const Vector& r) {
        const double g =
            pow_clamped(r[2], a3) - pow_clamped(r[0], a1) * pow_clamped(r[1], a2);
        Vector f(3);
        f[0] = a1 * g;
        f[1] = a2 * g;
        f[2] = -(a3 * g);
        return f;
    };
    Vector mv(3);
    mv << a2 * a3, a1 * a3, 2.0 * a1 * a2;
    sys.mass_vector = mv;
    sys.mass_const = 0.0;
    sys.growth = GrowthTag::polynomial;
    sys.poly_degree = std::max(a1 + a2, a3);
    if (a3 == 1.0) {
        // Row 3 cancels g through the conservation identities; rows 1-2 are
        // linear in r3 only because the reverse reaction is first order.
        Matrix q = Matrix::Zero(3, 3);
        q(0, 0) = 1.0;
        q(1, 1) = 1.0;
        q(2, 0) = 1.0;
        q(2, 1) = 1.0;
        q(2, 2) = a1 + a2;
        Vector b(3);
        b << a1, a2, 0.0;
        sys.triangular_q = q;
        sys.triangular_b = b;
    }
    sys.default_scales = {1.0, 1.0, 0.5};
    return sys;
}

ReactionSystem s_exp(const ExpParams& p) {
    if (p.beta <= 0.0) throw std::invalid_argument("s_exp: beta must be > 0");
    if (p.d1 <= 0.0 || p.d2 <= 0.0)
        throw std::invalid_argument("s_exp: diffusions must be > 0");
    ReactionSystem sys;
    sys.m = 2;
    sys.name = "s_exp";
    const double beta = p.beta;
    sys.eval = [beta](const Vector& r) {
        const double t = exp_with_sentinel(r[0], pow_clamped(r[1], beta));
        Vector f(2);
        f[0] = -t;
        f[1] = t;
        return f;
    };
    Vector mv(2);
    mv << 1.0, 1.0;
    sys.mass_vector = mv;
    sys.mass_const = 0.0;
    sys.growth = GrowthTag::exponential;
    sys.default_scales = {1.0, 0.5};
    return sys;
}

ReactionSystem manufactured(double s, int N, double d1, double d2, double beta) {
    ReactionSystem sys = s_exp(ExpParams{beta, d1, d2});
    sys.name = "manufactured";
    const double lam = getoor_constant(N, s);
    sys.forcing = [s, lam, d1, d2, beta](double t, double x) {
        const double rho = getoor_profile(x, s);
        const double et = std::exp(-t);
        const double core =
            rho * std::exp(std::pow(2.0, -beta) * std::exp(-beta * t) *
                           std::pow(rho, beta));
        Vector g(2);
        g[0] = (d1 * lam - rho + core) * et;
        g[1] = (0.5 * d2 * lam - 0.5 * rho - core) * et;
        return g;
    };
    return sys;
}

ReactionSystem triangular_demo(int m) {
    if (m < 2) throw std::invalid_argument("triangular_demo: m must be >= 2");
    ReactionSystem sys;
    sys.m = m;
    sys.name = "triangular_demo";
    sys.eval = [m](const Vector& r) {
        Vector f(m);
        f[0] = -r[0];
        for (int i = 1; i < m; ++i) f[i] = r[i - 1] - r[i];
        return f;
    };
    sys.mass_vector = Vector::Ones(m);
    sys.mass_const = 0.0;
    Matrix q = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= i; ++j) q(i, j) = 1.0;
    sys.triangular_q = q;
    sys.triangular_b = Vector::Zero(m);
    sys.growth = GrowthTag::polynomial;
    sys.poly_degree = 1.0;
    sys.default_scales.assign(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i)
        sys.default_scales[static_cast<std::size_t>(i)] =
            1.0 / static_cast<double>(1 << std::min(i, 30));
    return sys;
}

std::pair<double, double> manufactured_exact(double t, double x, double s) {
    const double v = getoor_profile(x, s) * std::exp(-t);
    return {v, 0.5 * v};
}

std::pair<double, double> manufactured_rhs(double t, double x, double s, int N,
                                           double d1, double d2, double beta) {
    const double lam = getoor_constant(N, s);
    const double rho = getoor_profile(x, s);
    const double et = std::exp(-t);
    const auto [u, v] = manufactured_exact(t, x, s);
    const double reac = u * std::exp(std::pow(v, beta));
    const double core =
        rho *
        std::exp(std::pow(2.0, -beta) * std::exp(-beta * t) * std::pow(rho, beta));
    const double rhs1 = -reac + (d1 * lam - rho + core) * et;
    const double rhs2 = reac + (0.5 * d2 * lam - 0.5 * rho - core) * et;
    return {rhs1, rhs2};
}

CheckReport check_quasi_positivity(const ReactionSystem& sys, int samples,
                                   double box) {
    if (samples < 1)
        throw std::invalid_argument("check_quasi_positivity: samples >= 1");
    auto rng = seeded_rng();
    std::uniform_real_distribution<double> dist(0.0, box);
    CheckReport rep;
    rep.pass = true;
    rep.worst = 0.0;
    for (int i = 0; i < sys.m; ++i) {
        for (int k = 0; k < samples; ++k) {
            Vector r(sys.m);
            for (int j = 0; j < sys.m; ++j) r[j] = dist(rng);
            r[i] = 0.0;
            const Vector f = sys.eval(r);
            if (f[i] < rep.worst) {
                rep.worst = f[i];
                rep.witness = r;
            }
        }
    }
    rep.pass = rep.worst >= -1e-12;
    std::ostringstream os;
    os << "min_i f_i at r_i = 0 over sample: " << rep.worst;
    rep.detail = os.str();
    return rep;
}

CheckReport check_mass(const ReactionSystem& sys, int samples, double box) {
    if (!sys.mass_vector)
        throw std::invalid_argument("check_mass: system carries no mass vector");
    if (samples < 1) throw std::invalid_argument("check_mass: samples >= 1");
    const Vector& a = *sys.mass_vector;
    auto rng = seeded_rng();
    std::uniform_real_distribution<double> dist(0.0, box);
    CheckReport rep;
    double worst = -std::numeric_limits<double>::infinity();
    double worst_strict = worst;
    for (int k = 0; k < samples; ++k) {
        Vector r(sys.m);
        for (int j = 0; j < sys.m; ++j) r[j] = dist(rng);
        const Vector f = sys.eval(r);
        const double combo = a.dot(f);
        const double slack = combo - sys.mass_const * (1.0 + r.sum());
        if (slack > worst) {
            worst = slack;
            rep.witness = r;
        }
        worst_strict = std::max(worst_strict, combo);
    }
    rep.worst = worst;
    rep.pass = worst <= 1e-12;
    std::ostringstream os;
    os << "max of sum a_i f_i - C (1 + sum r): " << worst
       << "; strict form (C = 0) " << (worst_strict <= 1e-12 ? "holds" : "fails")
       << " on sample (max combo " << worst_strict << ")";
    rep.detail = os.str();
    return rep;
}

CheckReport check_triangular(const ReactionSystem& sys, int samples, double box) {
    if (!sys.triangular_q || !sys.triangular_b)
        throw std::invalid_argument("check_triangular: no triangular data");
    const Matrix& q = *sys.triangular_q;
    const Vector& b = *sys.triangular_b;
    if (q.rows() != sys.m || q.cols() != sys.m || b.size() != sys.m)
        throw std::invalid_argument("check_triangular: triangular data shape");
    for (int i = 0; i < sys.m; ++i) {
        if (!(q(i, i) > 0.0))
            throw std::invalid_argument("check_triangular: singular diagonal");
        for (int j = i + 1; j < sys.m; ++j)
            if (q(i, j) != 0.0)
                throw std::invalid_argument("check_triangular: Q not lower-triangular");
        for (int j = 0; j <= i; ++j)
            if (q(i, j) < 0.0)
                throw std::invalid_argument("check_triangular: Q has negative entry");
    }
    if (samples < 1) throw std::invalid_argument("check_triangular: samples >= 1");
    auto rng = seeded_rng();
    std::uniform_real_distribution<double> dist(0.0, box);
    CheckReport rep;
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < samples; ++k) {
        Vector r(sys.m);
        for (int j = 0; j < sys.m; ++j) r[j] = dist(rng);
        const Vector lhs = q * sys.eval(r);
        const Vector rhs = (1.0 + r.sum()) * b;
        const double slack = (lhs - rhs).maxCoeff();
        if (slack > worst) {
            worst = slack;
            rep.witness = r;
        }
    }
    rep.worst = worst;
    rep.pass = worst <= 1e-12;
    std::ostringstream os;
    os << "max componentwise Qf - (1 + sum r) b: " << worst;
    rep.detail = os.str();
    return rep;
}

}  // namespace fracrd
