#pragma once

namespace fracrd {

/// Normalization constant a_{N,s} of the integral fractional Laplacian,
///   a_{N,s} = 2^{2s} s Gamma(N/2 + s) / (pi^{N/2} Gamma(1 - s)),
/// the choice for which (-Delta)^s -> identity as s -> 0+ and -> -Delta as s -> 1-.
/// Throws std::domain_error outside N >= 1, 0 < s < 1.
double normalization_constant(int N, double s);

/// Constant value of (-Delta)^s (1 - |x|^2)_+^s on the unit ball of R^N,
///   lambda_N(s) = 2^{2s} Gamma(1 + s) Gamma((N + 2s)/2) / Gamma(N/2).
/// For N = 2 this reduces to 4^s Gamma(s + 1)^2.
double getoor_constant(int N, double s);

/// Profile (1 - |x|^2)_+^s whose fractional Laplacian is getoor_constant.
double getoor_profile(double x, double s);

}  // namespace fracrd
