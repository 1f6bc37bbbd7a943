#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "polymer/greens.hpp"
#include "polymer/potential.hpp"

using namespace polymer;

TEST_CASE("indicator well: values, sup and exact integral") {
    for (int d = 1; d <= 5; ++d) {
        const auto v = RadialPotential::well(d, 1.5, 2.0);
        CHECK(v.dimension() == d);
        CHECK(v(0.0) == 2.0);
        CHECK(v(1.49) == 2.0);
        CHECK(v(1.51) == 0.0);
        CHECK(v.sup() == 2.0);
        const double exact = 2.0 * sphere_area(d) * std::pow(1.5, d) / d;
        CHECK(v.integral() == doctest::Approx(exact).epsilon(1e-10));
    }
    // d = 3 unit well: int v = 4 pi / 3
    CHECK(RadialPotential::well(3).integral() ==
          doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-12));
}

TEST_CASE("smooth bump: support, monotonicity, symmetry of evaluation") {
    const auto v = RadialPotential::bump(3, 2.0, 1.5);
    CHECK(v(0.0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(v(2.0) == 0.0);
    CHECK(v(2.5) == 0.0);
    CHECK(v(1.0) > v(1.5));
    CHECK(v(-0.7) == v(0.7));  // radial evaluation uses |r|
    CHECK(v.sup() == doctest::Approx(1.5));
}

TEST_CASE("scaling multiplies values and integral") {
    const auto v = RadialPotential::bump(4, 1.0, 1.0);
    const auto w = v.scaled(3.0);
    CHECK(w(0.5) == doctest::Approx(3.0 * v(0.5)).epsilon(1e-14));
    CHECK(w.integral() == doctest::Approx(3.0 * v.integral()).epsilon(1e-10));
}

TEST_CASE("validation of inputs") {
    CHECK_THROWS_AS(RadialPotential::well(6), std::invalid_argument);
    CHECK_THROWS_AS(RadialPotential::well(3, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(RadialPotential::well(3, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(RadialPotential(3, 1.0, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(RadialPotential(3, 1.0, {1.0, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(RadialPotential::bump(3).scaled(0.0), std::invalid_argument);
}
