#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "polymer/birman_schwinger.hpp"
#include "polymer/critical.hpp"
#include "polymer/greens.hpp"
#include "polymer/quadrature.hpp"
#include "polymer/sampler.hpp"

using namespace polymer;

TEST_CASE("mass correction closed form agrees with direct quadrature") {
    // int pbar(t,1,x,z) dz = 1 + v2: the leading heat kernel integrates to 1
    // exactly, so v2 must equal the radial integral of the correction term
    const CriticalKernel k;
    for (double t : {0.0, 0.5}) {
        const double tau = 1.0 - t;
        for (double r : {0.1, 1.0, 3.0}) {
            const double quad =
                4.0 * kPi *
                integrate(
                    [&](double rho) {
                        return rho * rho * std::pow(2.0 * kPi, -1.5) /
                               (r * rho * std::sqrt(tau)) *
                               std::exp(-(r + rho) * (r + rho) / (2.0 * tau));
                    },
                    0.0, r + 12.0 * std::sqrt(tau), 1e-13);
            CHECK(critical_mass_correction(t, r) == doctest::Approx(quad).epsilon(1e-10));
        }
    }
    CHECK(critical_mass_correction(1.0, 0.5) == 0.0);
    CHECK_THROWS_AS(critical_mass_correction(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(critical_mass_correction(1.5, 1.0), std::invalid_argument);
}

TEST_CASE("log mass vanishes far out and has the -1/r drift at the origin") {
    CHECK(critical_log_mass(0.5, 40.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::fabs(critical_drift(0.5, 8.0)) < 1e-12);

    // r * dg/dr -> -1 like -(1 - r^2/tau)
    CHECK(0.01 * critical_drift(0.5, 0.01) == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(0.001 * critical_drift(0.8, 0.001) == doctest::Approx(-1.0).epsilon(1e-5));

    // analytic drift matches a centered difference of the log mass
    for (double r : {0.5, 1.0, 2.0}) {
        const double h = 1e-4;
        const double fd =
            (critical_log_mass(0.3, r + h) - critical_log_mass(0.3, r - h)) / (2.0 * h);
        CHECK(critical_drift(0.3, r) == doctest::Approx(fd).epsilon(1e-6));
    }
    CHECK_THROWS_AS(critical_drift(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("pbar is symmetric and only its leading term sees the angle") {
    const CriticalKernel k;
    const double s = 0.1, t = 0.6;
    for (double c : {-1.0, 0.0, 0.8})
        CHECK(k.pbar(s, t, 0.7, 1.9, c) == doctest::Approx(k.pbar(s, t, 1.9, 0.7, c)));

    const double aligned = k.pbar(s, t, 1.0, 1.0, 1.0);
    const double anti = k.pbar(s, t, 1.0, 1.0, -1.0);
    const double lead_diff = heat_kernel(3, t - s, 0.0) - heat_kernel(3, t - s, 2.0);
    CHECK(aligned - anti == doctest::Approx(lead_diff).epsilon(1e-12));

    CHECK_THROWS_AS(k.pbar(s, t, 1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(k.pbar(0.6, 0.1, 1.0, 1.0, 1.0), std::invalid_argument);

    // the origin branch carries the supplied prefactor linearly
    CHECK(k.pbar(s, t, 0.0, 1.0, 1.0, 2.5) ==
          doctest::Approx(2.5 * k.pbar(s, t, 0.0, 1.0, 1.0)));
}

TEST_CASE("transition density is nonnegative, vanishes at x = 0, and is normalized") {
    const CriticalKernel k;
    CHECK(k.transition(0.2, 0.7, 1.0, 0.0, 1.0) == 0.0);
    for (double t : {0.5, 1.0})
        for (double y : {0.0, 0.5, 2.0})
            for (double x : {0.1, 1.0, 4.0})
                for (double c : {-0.9, 0.3})
                    CHECK(k.transition(0.2, t, y, x, c) >= 0.0);

    CHECK(k.normalization_defect(0.2, 0.7, 1.0) < 1e-6);
    // sweep incl. the terminal branch and the origin start
    for (double s : {0.0, 0.3})
        for (double t : {0.5, 1.0})
            for (double y : {0.0, 0.3, 1.0, 3.0})
                CHECK(k.normalization_defect(s, t, y) < 1e-6);
}

TEST_CASE("Chapman-Kolmogorov holds to 1e-4") {
    const CriticalKernel k;
    double worst = 0.0;
    for (double x1 : {0.5, 1.0})
        for (double x3 : {0.7, 1.6})
            for (double c : {1.0, -0.4})
                worst = std::max(worst,
                                 k.chapman_kolmogorov_defect(0.1, 0.4, 0.8, x1, x3, c));
    CHECK(worst < 1e-4);
    // composition through the terminal time and from the origin
    CHECK(k.chapman_kolmogorov_defect(0.0, 0.5, 1.0, 1.0, 0.8, 0.6) < 1e-4);
    CHECK(k.chapman_kolmogorov_defect(0.1, 0.4, 0.9, 0.0, 1.2, 1.0) < 1e-4);
}

TEST_CASE("terminal branch equals the t -> 1 limit") {
    const CriticalKernel k;
    double worst = 0.0;
    for (double r : {0.5, 1.0, 2.0}) {
        worst = std::max(worst, std::fabs(k.transition(0.2, 1.0, 1.0, r, 0.7) -
                                          k.transition(0.2, 1.0 - 1e-10, 1.0, r, 0.7)));
        worst = std::max(worst, std::fabs(k.transition(0.2, 1.0, 0.0, r, 1.0) -
                                          k.transition(0.2, 1.0 - 1e-10, 0.0, r, 1.0)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("shell-averaged transition solves the forward equation") {
    const CriticalKernel k;
    std::vector<double> t_grid, r_grid;
    for (double t = 0.3; t <= 0.901; t += 0.1) t_grid.push_back(t);
    for (double r = 0.2; r <= 3.001; r += 0.2) r_grid.push_back(r);
    const auto rep = fokker_planck_residual(k, 0.1, 1.0, t_grid, r_grid);
    CHECK(rep.residual < 1e-3);
    CHECK(rep.refinement_ratio > 2.0);
    CHECK(rep.refinement_ratio < 6.0);

    // zero-drift analogue: the same machinery on the plain heat kernel
    const auto heat = radial_fokker_planck_residual(
        [](double t, double r) { return heat_kernel(3, t, r); },
        [](double, double) { return 0.0; }, t_grid, r_grid, 1e-4, 1e-4);
    CHECK(heat.residual < 1e-6);
}

TEST_CASE("defect suite passes across the board") {
    const CriticalKernel k;
    const auto checks = critical_defect_suite(k);
    CHECK(checks.size() >= 18);
    for (const auto& c : checks) {
        INFO(c.check, " defect ", c.defect);
        CHECK(c.pass);
    }
}

TEST_CASE("critical polymer endpoints follow the law implied by the kernel") {
    // Q(0,1,0,x) gives the radial terminal law  r e^{-r^2/2}; the rescaled
    // endpoint |x(T)|/sqrt(T) of the polymer at the critical coupling must
    // approach it for large T
    const auto v = RadialPotential::well(3);
    const SpectralSolver sol(v);
    const double beta_cr = sol.critical_beta();
    const double T = 25.0;
    const auto e = sample_paths(v, beta_cr, T, 2500, 100000, 5);
    const double root_t = std::sqrt(T);

    // histogram the rescaled radii through a throwaway ensemble view
    PathEnsemble view = e;
    for (double& c : view.positions.back()) c /= root_t;
    const auto hist = endpoint_density(view, 30, 4.0);
    const double tv = histogram_tv_distance(
        hist, [](double r) { return r * std::exp(-r * r / 2.0); });
    CHECK(tv < 0.07);
}
