#include "fracrd/special.hpp"

#include <cmath>
#include <stdexcept>

namespace fracrd {

namespace {
void check_range(int N, double s, const char* who) {
    if (N < 1) throw std::domain_error(std::string(who) + ": N must be >= 1");
    if (!(s > 0.0) || !(s < 1.0))
        throw std::domain_error(std::string(who) + ": s must lie in (0, 1)");
}
}  // namespace

double normalization_constant(int N, double s) {
    check_range(N, s, "normalization_constant");
    const double Nd = static_cast<double>(N);
    return std::pow(2.0, 2.0 * s) * s * std::tgamma(0.5 * Nd + s) /
           (std::pow(M_PI, 0.5 * Nd) * std::tgamma(1.0 - s));
}

double getoor_constant(int N, double s) {
    check_range(N, s, "getoor_constant");
    const double Nd = static_cast<double>(N);
    return std::pow(2.0, 2.0 * s) * std::tgamma(1.0 + s) *
           std::tgamma(0.5 * (Nd + 2.0 * s)) / std::tgamma(0.5 * Nd);
}

double getoor_profile(double x, double s) {
    const double r = 1.0 - x * x;
    return r > 0.0 ? std::pow(r, s) : 0.0;
}

}  // namespace fracrd
