#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracrd/special.hpp"

using namespace fracrd;

TEST_CASE("normalization constant at half-integer gammas") {
    CHECK(normalization_constant(1, 0.5) == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
    // frozen high-precision evaluations of the gamma formula
    CHECK(normalization_constant(2, 0.5) ==
          doctest::Approx(0.15915494309189534).epsilon(1e-14));
    CHECK(normalization_constant(1, 0.9) ==
          doctest::Approx(0.16490493881830272).epsilon(1e-14));
    CHECK(normalization_constant(1, 0.25) ==
          doctest::Approx(0.19947114020071634).epsilon(1e-14));
}

TEST_CASE("normalization constant rejects out-of-range input") {
    CHECK_THROWS_AS(normalization_constant(0, 0.5), std::domain_error);
    CHECK_THROWS_AS(normalization_constant(1, 0.0), std::domain_error);
    CHECK_THROWS_AS(normalization_constant(1, 1.0), std::domain_error);
    CHECK_THROWS_AS(normalization_constant(1, -0.3), std::domain_error);
}

TEST_CASE("getoor constant reference values") {
    CHECK(getoor_constant(2, 0.5) == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
    CHECK(getoor_constant(1, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(getoor_constant(1, 0.25) ==
          doctest::Approx(0.88622692545275801).epsilon(1e-14));
    CHECK(getoor_constant(1, 0.75) ==
          doctest::Approx(1.3293403881791370).epsilon(1e-14));
    CHECK(getoor_constant(1, 0.9) ==
          doctest::Approx(1.6764907877644369).epsilon(1e-14));
}

TEST_CASE("getoor constant approaches the classical Laplacian limit") {
    // -Delta (1 - x^2 - y^2) = 4 on the plane
    CHECK(getoor_constant(2, 0.9999) == doctest::Approx(4.0).epsilon(1e-3));
    CHECK_THROWS_AS(getoor_constant(2, 1.0), std::domain_error);
}

TEST_CASE("N = 2 reduction matches the 4^s Gamma(s+1)^2 form") {
    for (double s : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const double reduced = std::pow(4.0, s) * std::pow(std::tgamma(s + 1.0), 2);
        CHECK(getoor_constant(2, s) == doctest::Approx(reduced).epsilon(1e-13));
    }
}

TEST_CASE("getoor profile support") {
    CHECK(getoor_profile(0.0, 0.5) == 1.0);
    CHECK(getoor_profile(1.0, 0.5) == 0.0);
    CHECK(getoor_profile(-1.2, 0.5) == 0.0);
    CHECK(getoor_profile(0.6, 1.0) == doctest::Approx(0.64));
}
