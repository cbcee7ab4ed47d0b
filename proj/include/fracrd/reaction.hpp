#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fracrd/frac_operator.hpp"

namespace fracrd {

enum class GrowthTag { polynomial, exponential };

/// m-species reaction nonlinearity with the structural metadata the
/// verification suites act on. Evaluation must stay reentrant: presets close
/// over parameters only, never over mutable state.
struct ReactionSystem {
    int m = 0;
    std::string name;
    std::function<Vector(const Vector&)> eval;

    std::optional<Vector> mass_vector;   // a with sum a_i f_i <= C (1 + sum r_i)
    double mass_const = 0.0;             // C; 0 means the strict form
    std::optional<Matrix> triangular_q;  // lower triangular, positive diagonal
    std::optional<Vector> triangular_b;
    GrowthTag growth = GrowthTag::polynomial;
    double poly_degree = 1.0;  // meaningful for polynomial growth only

    /// Nodal forcing g_i(t, x) added to f_i; empty when the system is autonomous.
    std::function<Vector(double, double)> forcing;

    /// Default nonnegative initial profile scales (species_scale[i] * profile).
    std::vector<double> default_scales;
};

struct ChemParams {
    double alpha1 = 1.0, alpha2 = 1.0, alpha3 = 1.0;
    double d1 = 1.0, d2 = 1.0, d3 = 1.0;
};

struct ExpParams {
    double beta = 3.0;
    double d1 = 1.0, d2 = 2.0;
};

/// Evaluate with the mild-undershoot convention: slightly negative inputs are
/// admitted, non-integer powers clamp their argument at zero, and exponential
/// overflow is converted to a finite blow-up-scale sentinel.
Vector eval_reaction(const ReactionSystem& sys, const Vector& r);

/// Three-species reversible-reaction system
///   f1 = a1 g, f2 = a2 g, f3 = -a3 g,  g = r3^{a3} - r1^{a1} r2^{a2},
/// with mass vector (a2 a3, a1 a3, 2 a1 a2) and, when alpha3 == 1, triangular
/// data derived from its conservation identities.
ReactionSystem chemistry(const ChemParams& p);

/// Two-species exponential system f = (-r1 e^{r2^beta}, +r1 e^{r2^beta}).
ReactionSystem s_exp(const ExpParams& p);

/// s_exp plus the forcing that makes (rho(x) e^{-t}, rho(x) e^{-t} / 2) the
/// exact solution on the unit interval; requires the domain (-1, 1).
ReactionSystem manufactured(double s, int N, double d1, double d2, double beta);

/// Chain system f_1 = -r_1, f_i = r_{i-1} - r_i; triangular with Q = lower
/// ones and b = 0, mass vector all ones.
ReactionSystem triangular_demo(int m);

/// Exact solution and forcing of the manufactured problem.
std::pair<double, double> manufactured_exact(double t, double x, double s);
std::pair<double, double> manufactured_rhs(double t, double x, double s, int N,
                                           double d1, double d2, double beta);

/// Sampling-based structural checkers. Deterministic given (samples, box).
struct CheckReport {
    bool pass = false;
    double worst = 0.0;       // most violating value observed
    Vector witness;           // sample attaining it (empty if none)
    std::string detail;
};

CheckReport check_quasi_positivity(const ReactionSystem& sys, int samples,
                                   double box);
/// Max of sum a_i f_i(r) - C (1 + sum r_i) over samples; PASS iff <= 1e-12.
/// Also notes whether the strict form (C = 0) held on the sample.
CheckReport check_mass(const ReactionSystem& sys, int samples, double box);
CheckReport check_triangular(const ReactionSystem& sys, int samples, double box);

}  // namespace fracrd
