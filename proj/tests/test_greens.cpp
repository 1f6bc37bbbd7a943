#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "polymer/greens.hpp"
#include "polymer/quadrature.hpp"

using namespace polymer;

TEST_CASE("heat kernel integrates to one") {
    for (int d = 1; d <= 5; ++d)
        for (double t : {0.3, 1.0, 4.0}) {
            const double mass =
                sphere_area(d) * integrate(
                                     [&](double r) {
                                         return heat_kernel(d, t, r) * std::pow(r, d - 1);
                                     },
                                     0.0, 20.0 * std::sqrt(t), 1e-13);
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
        }
}

TEST_CASE("resolvent kernel is the (negated) Laplace transform of the heat kernel") {
    // R_0(lambda, r) = -int_0^inf exp(-lambda t) p_0(t, r) dt.  This identity
    // pins every constant in the kernel family, including the d = 4 ones.
    struct Case { int d; double lambda, r; };
    const Case cases[] = {{1, 0.7, 0.5}, {2, 0.9, 1.3}, {3, 0.5, 0.8},
                          {4, 1.1, 0.6}, {5, 0.8, 1.1}, {4, 0.03, 2.0},
                          {5, 0.02, 0.3}};
    for (const auto& c : cases) {
        const double lt = -integrate(
            [&](double t) {
                return std::exp(-c.lambda * t) * heat_kernel(c.d, t, c.r);
            },
            1e-9, 60.0 / c.lambda, 1e-13);
        CHECK(free_resolvent_kernel(c.d, c.lambda, c.r) ==
              doctest::Approx(lt).epsilon(1e-8));
    }
}

TEST_CASE("resolvent kernel solves (1/2 Laplacian - lambda) R = 0 away from the pole") {
    for (int d = 1; d <= 5; ++d)
        for (double lambda : {0.4, 2.0})
            for (double r : {0.6, 1.7}) {
                const double h = 1e-4;
                auto f = [&](double x) { return free_resolvent_kernel(d, lambda, x); };
                const double d1 = (f(r + h) - f(r - h)) / (2.0 * h);
                const double d2 = (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
                const double resid =
                    0.5 * (d2 + (d - 1) / r * d1) - lambda * f(r);
                CHECK(resid == doctest::Approx(0.0).scale(std::fabs(f(r))).epsilon(1e-5));
            }
}

TEST_CASE("zero-energy limits and expansion coefficients") {
    // a_d r^{2-d} with a_3 = 1/(2 pi), a_4 = 1/(2 pi^2), a_5 = 1/(4 pi^2)
    CHECK(zero_energy_kernels(3, 2.0).P == doctest::Approx(1.0 / (4.0 * kPi)));
    CHECK(zero_energy_kernels(4, 1.0).P == doctest::Approx(1.0 / (2.0 * kPi * kPi)));
    CHECK(zero_energy_kernels(5, 1.0).P == doctest::Approx(1.0 / (4.0 * kPi * kPi)));
    CHECK(zero_energy_kernels(3, 1.0).Q == doctest::Approx(-1.0 / (std::sqrt(2.0) * kPi)));
    CHECK(zero_energy_kernels(4, 1.0).Q == doctest::Approx(-1.0 / (4.0 * kPi * kPi)));
    CHECK(zero_energy_kernels(5, 2.0).Q ==
          doctest::Approx(-1.0 / (4.0 * kPi * kPi) / 2.0));
    CHECK_THROWS_AS(zero_energy_kernels(2, 1.0), std::invalid_argument);

    // lambda -> 0 continuity of the kernel itself
    for (int d : {3, 4, 5})
        for (double r : {0.5, 1.5})
            CHECK(free_resolvent_kernel(d, 1e-12, r) ==
                  doctest::Approx(free_resolvent_kernel(d, 0.0, r)).epsilon(1e-5));

    // and the expansion drives the kernel's deviation from P_d:
    const double lam = 1e-6, r = 1.3;
    const auto k3 = zero_energy_kernels(3, r);
    CHECK(-free_resolvent_kernel(3, lam, r) - k3.P ==
          doctest::Approx(std::sqrt(lam) * k3.Q).epsilon(1e-2));
    const auto k4 = zero_energy_kernels(4, r);
    CHECK(-free_resolvent_kernel(4, lam, r) - k4.P ==
          doctest::Approx(lam * std::log(1.0 / lam) * k4.Q).epsilon(0.25));
    const auto k5 = zero_energy_kernels(5, r);
    CHECK(-free_resolvent_kernel(5, lam, r) - k5.P ==
          doctest::Approx(lam * k5.Q).epsilon(1e-2));
}

namespace {

// Direct polar-angle quadrature of the surface integral, as an oracle for the
// Bessel-product form: int_{S^{d-1}} R_0(lambda, |r e - rp y|) dsigma(y).
double surface_oracle(int d, double lambda, double r, double rp) {
    if (d == 1)
        return free_resolvent_kernel(1, lambda, std::fabs(r - rp)) +
               free_resolvent_kernel(1, lambda, r + rp);
    const double ring = (d == 2) ? 2.0 : sphere_area(d - 1);
    // For r == rp the integrand has an integrable singularity at th = 0;
    // excising [0, 1e-7] costs O(1e-7) relative accuracy, which the caller's
    // tolerance accounts for.
    const double lo = (r == rp) ? 1e-7 : 0.0;
    return ring * integrate(
                      [&](double th) {
                          const double dist = std::sqrt(std::max(
                              r * r + rp * rp - 2.0 * r * rp * std::cos(th), 1e-300));
                          const double jac =
                              (d == 2) ? 1.0 : std::pow(std::sin(th), d - 2);
                          return free_resolvent_kernel(d, lambda, dist) * jac;
                      },
                      lo, kPi, 1e-12);
}

}  // namespace

TEST_CASE("surface kernel equals the direct angular integral") {
    for (int d = 1; d <= 5; ++d)
        for (double lambda : {0.3, 1.7})
            for (auto [r, rp] : {std::pair{0.5, 1.2}, {1.2, 0.5}, {0.9, 0.9},
                                 {2.5, 0.2}}) {
                const double eps = (r == rp) ? 2e-6 : 5e-8;
                CHECK(resolvent_surface_kernel(d, lambda, r, rp) ==
                      doctest::Approx(surface_oracle(d, lambda, r, rp)).epsilon(eps));
            }
    for (int d : {3, 4, 5})
        for (auto [r, rp] : {std::pair{0.5, 1.2}, {1.3, 0.4}}) {
            CHECK(resolvent_surface_kernel(d, 0.0, r, rp) ==
                  doctest::Approx(surface_oracle(d, 1e-13, r, rp)).epsilon(1e-5));
            CHECK(resolvent_surface_kernel(d, 0.0, r, rp) ==
                  doctest::Approx(-(2.0 / (d - 2)) *
                                  std::pow(std::max(r, rp), 2 - d)));
        }
}

TEST_CASE("surface kernel at the origin reduces to the full sphere value") {
    for (int d : {2, 3, 4, 5}) {
        const double lambda = 0.8, rp = 1.1;
        CHECK(resolvent_surface_kernel(d, lambda, 0.0, rp) ==
              doctest::Approx(sphere_area(d) *
                              free_resolvent_kernel(d, lambda, rp)).epsilon(1e-12));
    }
}

TEST_CASE("d = 3 shell average of the heat kernel") {
    const double t = 0.7, r = 0.9, rp = 1.4;
    const double direct =
        0.5 * integrate(
                  [&](double th) {
                      const double dist =
                          std::sqrt(r * r + rp * rp - 2.0 * r * rp * std::cos(th));
                      return heat_kernel(3, t, dist) * std::sin(th);
                  },
                  0.0, kPi, 1e-13);
    CHECK(heat_kernel_shell_average_3d(t, r, rp) ==
          doctest::Approx(direct).epsilon(1e-11));
    // closed form restated independently
    const double expect = std::pow(2.0 * kPi * t, -1.5) * (t / (2.0 * r * rp)) *
                          (std::exp(-(r - rp) * (r - rp) / (2.0 * t)) -
                           std::exp(-(r + rp) * (r + rp) / (2.0 * t)));
    CHECK(heat_kernel_shell_average_3d(t, r, rp) == doctest::Approx(expect));
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(free_resolvent_kernel(2, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(free_resolvent_kernel(3, -0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(free_resolvent_kernel(6, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(heat_kernel(3, 0.0, 1.0), std::domain_error);
    CHECK(free_resolvent_kernel(3, 1.0, 0.7) < 0.0);
}
