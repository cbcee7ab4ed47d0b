#include "fracrd/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracrd {

namespace {

constexpr std::array<QuadNode, 3> kGL3 = {{
    {-7.74596669241483377e-01, 5.55555555555555556e-01},
    {0.0, 8.88888888888888889e-01},
    {7.74596669241483377e-01, 5.55555555555555556e-01},
}};

constexpr std::array<QuadNode, 8> kGL8 = {{
    {-9.60289856497536176e-01, 1.01228536290376689e-01},
    {-7.96666477413626728e-01, 2.22381034453374343e-01},
    {-5.25532409916328991e-01, 3.13706645877887047e-01},
    {-1.83434642495649780e-01, 3.62683783378361768e-01},
    {1.83434642495649780e-01, 3.62683783378361768e-01},
    {5.25532409916328991e-01, 3.13706645877887047e-01},
    {7.96666477413626728e-01, 2.22381034453374343e-01},
    {9.60289856497536176e-01, 1.01228536290376689e-01},
}};

constexpr std::array<QuadNode, 12> kGL12 = {{
    {-9.81560634246719244e-01, 4.71753363865120220e-02},
    {-9.04117256370474798e-01, 1.06939325995318885e-01},
    {-7.69902674194304693e-01, 1.60078328543346110e-01},
    {-5.87317954286617483e-01, 2.03167426723065647e-01},
    {-3.67831498998180184e-01, 2.33492536538354639e-01},
    {-1.25233408511468913e-01, 2.49147045813402690e-01},
    {1.25233408511468913e-01, 2.49147045813402690e-01},
    {3.67831498998180184e-01, 2.33492536538354639e-01},
    {5.87317954286617483e-01, 2.03167426723065647e-01},
    {7.69902674194304693e-01, 1.60078328543346110e-01},
    {9.04117256370474798e-01, 1.06939325995318885e-01},
    {9.81560634246719244e-01, 4.71753363865120220e-02},
}};

// Kronrod-15 abscissae/weights plus embedded Gauss-7 weights (odd positions).
constexpr std::array<double, 15> kK15x = {
    -9.91455371120812639e-01, -9.49107912342758525e-01, -8.64864423359769073e-01,
    -7.41531185599394440e-01, -5.86087235467691130e-01, -4.05845151377397167e-01,
    -2.07784955007898468e-01, 0.0,                      2.07784955007898468e-01,
    4.05845151377397167e-01,  5.86087235467691130e-01,  7.41531185599394440e-01,
    8.64864423359769073e-01,  9.49107912342758525e-01,  9.91455371120812639e-01};
constexpr std::array<double, 15> kK15w = {
    2.29353220105292250e-02, 6.30920926299785533e-02, 1.04790010322250184e-01,
    1.40653259715525919e-01, 1.69004726639267903e-01, 1.90350578064785410e-01,
    2.04432940075298892e-01, 2.09482141084727828e-01, 2.04432940075298892e-01,
    1.90350578064785410e-01, 1.69004726639267903e-01, 1.40653259715525919e-01,
    1.04790010322250184e-01, 6.30920926299785533e-02, 2.29353220105292250e-02};
constexpr std::array<double, 7> kG7w = {
    1.29484966168869693e-01, 2.79705391489276668e-01, 3.81830050505118945e-01,
    4.17959183673469388e-01, 3.81830050505118945e-01, 2.79705391489276668e-01,
    1.29484966168869693e-01};

struct GKResult {
    double value;
    double error;
};

GKResult gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double k = 0.0, g = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double v = f(mid + half * kK15x[static_cast<std::size_t>(i)]);
        k += kK15w[static_cast<std::size_t>(i)] * v;
        if (i % 2 == 1) g += kG7w[static_cast<std::size_t>(i / 2)] * v;
    }
    return {half * k, std::abs(half * (k - g))};
}

}  // namespace

std::span<const QuadNode> gauss_legendre(int order) {
    switch (order) {
        case 3: return kGL3;
        case 8: return kGL8;
        case 12: return kGL12;
        default: throw std::invalid_argument("gauss_legendre: unsupported order");
    }
}

double integrate_gl(const std::function<double(double)>& f, double lo, double hi,
                    int order) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (const auto& q : gauss_legendre(order)) acc += q.w * f(mid + half * q.x);
    return half * acc;
}

double integrate_adaptive(const std::function<double(double)>& f, double lo,
                          double hi, double abs_tol, double rel_tol,
                          int max_intervals) {
    struct Seg {
        double lo, hi, value, error;
    };
    GKResult whole = gk15(f, lo, hi);
    std::vector<Seg> segs = {{lo, hi, whole.value, whole.error}};
    for (int iter = 0; iter < max_intervals; ++iter) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].value;
            err += segs[i].error;
            if (segs[i].error > segs[worst].error) worst = i;
        }
        if (err <= abs_tol || err <= rel_tol * std::abs(total)) return total;
        Seg s = segs[worst];
        const double mid = 0.5 * (s.lo + s.hi);
        if (mid <= s.lo || mid >= s.hi)
            return total;  // interval at rounding resolution; error estimate stale
        GKResult l = gk15(f, s.lo, mid), r = gk15(f, mid, s.hi);
        segs[worst] = {s.lo, mid, l.value, l.error};
        segs.push_back({mid, s.hi, r.value, r.error});
    }
    throw std::runtime_error("integrate_adaptive: tolerance not reached");
}

double power_moment(double q, double t0, double t1) {
    const double qp = q + 1.0;
    if (t0 == 0.0) {
        if (!(qp > 0.0))
            throw std::domain_error("power_moment: divergent moment at t0 = 0");
        return std::pow(t1, qp) / qp;
    }
    const double r = std::log(t1 / t0);
    if (qp == 0.0) return r;
    // t0^{q+1} (e^{(q+1) log(t1/t0)} - 1)/(q+1); stable as q -> -1
    return std::pow(t0, qp) * std::expm1(qp * r) / qp;
}

}  // namespace fracrd
