#pragma once

#include <functional>

#include "fracrd/frac_operator.hpp"
#include "fracrd/mesh.hpp"

namespace fracrd {

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Scalar function on (a, b) together with derivatives needed by the
/// singularity subtraction. When derivatives are not supplied they are
/// approximated by Richardson-extrapolated central differences.
struct ScalarField {
    std::function<double(double)> f;
    std::function<double(double)> df;   // optional
    std::function<double(double)> d2f;  // optional

    static ScalarField from_function(std::function<double(double)> fn);
    double deriv1(double x, double scale) const;
    double deriv2(double x, double scale) const;
};

/// Pointwise (-Delta)^s f(x) for f extended by zero outside (a, b), computed by
/// direct quadrature of the principal-value integral: a near field with the
/// first-order Taylor term subtracted (the quadratic part handled in closed
/// form), an adaptive far field inside the interval, and the closed-form
/// exterior tail f(x) * ((x-a)^{-2s} + (b-x)^{-2s}) / (2s).
///
/// Deliberately independent of the finite-element assembly path.
double frac_laplacian_at(const ScalarField& field, double x, double s,
                         const Mesh1D& mesh, double tol = 1e-10);

/// frac_laplacian_at evaluated at every mesh node.
Vector apply_oracle(const Mesh1D& mesh, double s, const ScalarField& field,
                    double tol = 1e-10);

/// Field helpers used across verification suites.
ScalarField getoor_field(double s);            // (1 - x^2)_+^s with derivatives
ScalarField bump_field(double center = 0.0, double width = 0.5);

}  // namespace fracrd
