#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "polymer/greens.hpp"
#include "polymer/special.hpp"

using namespace polymer;

namespace {

// Independent oracle: K_nu(z) = int_0^inf exp(-z cosh u) cosh(nu u) du,
// trapezoid with a small step; the integrand is analytic and decays
// double-exponentially, so the trapezoid rule converges spectrally.
double bessel_k_integral(double nu, double z) {
    const double h = 1e-3;
    double sum = 0.5 * std::exp(-z);  // u = 0 term
    for (int k = 1;; ++k) {
        const double u = k * h;
        const double t = std::exp(-z * std::cosh(u)) * std::cosh(nu * u);
        sum += t;
        if (u > 1.0 && t < 1e-320) break;
    }
    return sum * h;
}

}  // namespace

TEST_CASE("K_0 and K_1 match the integral representation to 1e-14") {
    const double zs[] = {0.05, 0.1, 0.3, 0.5, 1.0, 1.5, 1.9999, 2.0001,
                         3.0,  5.0, 10.0, 30.0, 100.0};
    for (double z : zs) {
        CHECK(bessel_k0(z) == doctest::Approx(bessel_k_integral(0.0, z)).epsilon(1e-14));
        CHECK(bessel_k1(z) == doctest::Approx(bessel_k_integral(1.0, z)).epsilon(1e-14));
    }
}

TEST_CASE("K_0 and K_1 match the standard library implementation") {
    for (double z : {0.5, 1.0, 2.0, 5.0}) {
        CHECK(bessel_k0(z) == doctest::Approx(std::cyl_bessel_k(0.0, z)).epsilon(1e-12));
        CHECK(bessel_k1(z) == doctest::Approx(std::cyl_bessel_k(1.0, z)).epsilon(1e-12));
    }
}

TEST_CASE("half-integer orders have their elementary closed forms") {
    for (double z : {0.01, 0.2, 1.0, 4.0, 20.0}) {
        const double base = std::sqrt(kPi / (2.0 * z)) * std::exp(-z);
        CHECK(modified_bessel_k(0.5, z) == doctest::Approx(base).epsilon(1e-14));
        CHECK(modified_bessel_k(1.5, z) ==
              doctest::Approx(base * (1.0 + 1.0 / z)).epsilon(1e-14));
        CHECK(modified_bessel_i(0.5, z) ==
              doctest::Approx(std::sqrt(2.0 / (kPi * z)) * std::sinh(z)).epsilon(1e-13));
        CHECK(modified_bessel_i(-0.5, z) ==
              doctest::Approx(std::sqrt(2.0 / (kPi * z)) * std::cosh(z)).epsilon(1e-13));
    }
}

TEST_CASE("Wronskian I_nu K_{nu+1} + I_{nu+1} K_nu = 1/z") {
    for (double z : {0.05, 0.4, 1.0, 3.0, 8.0, 14.9, 15.1, 40.0}) {
        const double w0 = bessel_i0(z) * bessel_k1(z) + bessel_i1(z) * bessel_k0(z);
        CHECK(w0 == doctest::Approx(1.0 / z).epsilon(1e-13));
        const double wh = modified_bessel_i(0.5, z) * modified_bessel_k(1.5, z) +
                          modified_bessel_i(1.5, z) * modified_bessel_k(0.5, z);
        CHECK(wh == doctest::Approx(1.0 / z).epsilon(1e-13));
    }
}

TEST_CASE("I_nu matches the standard library implementation") {
    for (double z : {0.001, 0.1, 1.0, 5.0, 14.0, 16.0, 50.0}) {
        CHECK(bessel_i0(z) == doctest::Approx(std::cyl_bessel_i(0.0, z)).epsilon(1e-12));
        CHECK(bessel_i1(z) == doctest::Approx(std::cyl_bessel_i(1.0, z)).epsilon(1e-12));
        CHECK(modified_bessel_i(1.5, z) ==
              doctest::Approx(std::cyl_bessel_i(1.5, z)).epsilon(1e-11));
    }
}

TEST_CASE("I_{3/2} stays accurate through the small-argument cancellation") {
    // The naive closed form cosh z - sinh z / z loses all digits below 1e-4;
    // the series branch must not.
    for (double z : {1e-8, 1e-6, 1e-4, 1e-2}) {
        const double lead = std::sqrt(2.0 / (kPi * z)) * (z * z / 3.0) *
                            (1.0 + z * z / 10.0 + z * z * z * z / 280.0);
        CHECK(modified_bessel_i(1.5, z) == doctest::Approx(lead).epsilon(1e-12));
    }
    CHECK(modified_bessel_i(1.5, 0.0) == 0.0);
    CHECK(modified_bessel_i(0.5, 0.0) == 0.0);
    CHECK(modified_bessel_i(0.0, 0.0) == 1.0);
}

TEST_CASE("domain and order validation") {
    CHECK_THROWS_AS(bessel_k0(0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k1(-1.0), std::domain_error);
    CHECK_THROWS_AS(modified_bessel_k(2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(modified_bessel_i(2.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(modified_bessel_i(-0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i0(-0.1), std::domain_error);
}
