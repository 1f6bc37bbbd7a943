#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "polymer/birman_schwinger.hpp"
#include "polymer/greens.hpp"
#include "polymer/pde.hpp"
#include "polymer/potential.hpp"

using namespace polymer;

TEST_CASE("beta = 0 with constant initial data stays constant") {
    RadialGrid g;
    g.d = 3;
    g.r_max = 8.0;
    g.n_r = 200;
    g.dt = 1e-2;
    const auto res = partition_function(RadialPotential::well(3), 0.0, g, 2.0);
    for (double z : res.probe_values[0]) CHECK(z == doctest::Approx(1.0).epsilon(1e-12));
    for (double u : res.final_field().value) CHECK(u == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("free heat flow reproduces the heat kernel to 1e-4") {
    RadialGrid g;
    g.d = 3;
    g.r_max = 12.0;
    g.n_r = 1200;
    g.dt = 1e-3;
    g.dt_growth = 0.01;
    const auto res = fundamental_solution(RadialPotential::well(3), 0.0, 0.0, g, 1.0);
    // the Gaussian delta surrogate is itself free heat flow at time sigma^2
    const double t_eff = 1.0 + delta_time(g);
    double worst = 0.0;
    for (double r = 0.0; r <= 3.0; r += 0.05) {
        const double exact = heat_kernel(3, t_eff, r);
        worst = std::max(worst, std::fabs(res.final_field()(r) - exact) / exact);
    }
    CHECK(worst < 1e-4);

    // mass is conserved exactly by the finite-volume fluxes
    CHECK(field_mass(g, res.final_field()) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("spatial refinement is second order on the heat-kernel error") {
    auto run_error = [](int n) {
        RadialGrid g;
        g.d = 3;
        g.r_max = 12.0;
        g.n_r = n;
        g.dt = 5e-4;
        const auto res =
            fundamental_solution(RadialPotential::well(3), 0.0, 0.0, g, 1.0);
        const double t_eff = 1.0 + delta_time(g);
        double worst = 0.0;
        for (double r = 0.0; r <= 3.0; r += 0.05)
            worst = std::max(worst, std::fabs(res.final_field()(r) -
                                              heat_kernel(3, t_eff, r)) /
                                        heat_kernel(3, t_eff, r));
        return worst;
    };
    const double ratio = run_error(150) / run_error(300);
    CHECK(ratio > 2.4);
    CHECK(ratio < 6.5);
}

TEST_CASE("fundamental solution dominates the free one and is symmetric") {
    RadialGrid g;
    g.d = 3;
    g.r_max = 10.0;
    g.n_r = 500;
    g.dt = 1e-3;
    const auto v = RadialPotential::well(3);
    const auto free0 = fundamental_solution(v, 0.0, 0.8, g, 1.0);
    const auto beta2 = fundamental_solution(v, 2.0, 0.8, g, 1.0);
    for (std::size_t i = 0; i < free0.final_field().value.size(); ++i)
        CHECK(beta2.final_field().value[i] >= free0.final_field().value[i] - 1e-12);

    const auto swapped = fundamental_solution(v, 2.0, 1.6, g, 1.0);
    CHECK(beta2.final_field()(1.6) ==
          doctest::Approx(swapped.final_field()(0.8)).epsilon(1e-2));
}

TEST_CASE("growth rate of Z at the origin matches the spectral lambda0") {
    const auto v = RadialPotential::well(3);
    RadialGrid g;
    g.d = 3;
    g.r_max = 26.0;
    g.n_r = 520;
    g.dt = 1e-3;
    g.dt_growth = 0.005;
    const auto res = partition_function(v, 2.0, g, 40.0);
    double drift = 0.0;
    const double lam =
        lyapunov_exponent(res.times, res.probe_values[0], 20.0, 40.0, &drift);
    const double oracle = lambda0(v, 2.0);  // ~0.2055
    CHECK(lam == doctest::Approx(oracle).epsilon(0.01));
    CHECK(std::fabs(drift) < 0.05 * oracle);
}

TEST_CASE("supercritical fundamental solution converges to psi_beta(0) psi_beta(x)") {
    const auto v = RadialPotential::well(3);
    const SpectralSolver s(v);
    const auto e = s.eigenfunction_data(4.0);
    RadialGrid g;
    g.d = 3;
    g.r_max = 16.0;
    g.n_r = 640;
    g.dt = 1e-3;
    g.dt_growth = 0.01;
    const double t_end = 12.0;
    const auto res = fundamental_solution(v, 4.0, 0.0, g, t_end);
    for (double r : {0.5, 1.0, 2.0}) {
        const double predicted = e.at_zero * e.field(r);
        const double measured =
            std::exp(-e.lambda0 * (t_end + delta_time(g))) * res.final_field()(r);
        CHECK(measured == doctest::Approx(predicted).epsilon(0.02));
    }
}

TEST_CASE("Duhamel identity on a short horizon") {
    const auto v = RadialPotential::well(3);
    const double beta = 1.5;
    RadialGrid g;
    g.d = 3;
    g.r_max = 10.0;
    g.n_r = 500;
    g.dt = 1e-3;
    const double t_end = 1.0;
    const auto z = partition_function(v, beta, g, t_end);
    // source run: evolve beta*v (sampled at the cell centers the solver uses)
    std::vector<double> r(g.n_r), val(g.n_r);
    for (int i = 0; i < g.n_r; ++i) {
        r[i] = g.center(i);
        val[i] = beta * v(r[i]);
    }
    const auto src = evolve(v, beta, RadialField(r, val), g, t_end);
    double integral = 0.0;
    for (std::size_t i = 1; i < src.times.size(); ++i)
        integral += 0.5 * (src.times[i] - src.times[i - 1]) *
                    (src.probe_values[0][i] + src.probe_values[0][i - 1]);
    CHECK(z.probe_values[0].back() - 1.0 == doctest::Approx(integral).epsilon(1e-4));
}

TEST_CASE("lyapunov_exponent on synthetic data") {
    std::vector<double> t, y, flat;
    for (int i = 0; i <= 100; ++i) {
        t.push_back(0.1 * i);
        y.push_back(std::exp(3.0 * 0.1 * i));
        flat.push_back(2.5);
    }
    CHECK(lyapunov_exponent(t, y, 2.0, 8.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(lyapunov_exponent(t, flat, 2.0, 8.0) == doctest::Approx(0.0).epsilon(1e-6));
    std::vector<double> bad = y;
    bad[50] = -1.0;
    CHECK_THROWS_AS(lyapunov_exponent(t, bad, 2.0, 8.0), std::invalid_argument);
    CHECK_THROWS_AS(lyapunov_exponent(t, y, 9.9, 9.95), std::invalid_argument);
}

TEST_CASE("asymptotic_fit recovers synthetic laws") {
    std::vector<double> t, ysqrt, ypow, ylin, ylog, yexp;
    for (int i = 0; i < 40; ++i) {
        const double ti = 2.0 * std::pow(10.0, i / 13.0);  // ~3 decades
        t.push_back(ti);
        ysqrt.push_back(5.0 * std::sqrt(ti));
        ypow.push_back(0.7 * std::pow(ti, 1.3));
        ylin.push_back(2.0 * ti);
        ylog.push_back(4.0 * ti / std::log(ti));
        yexp.push_back(1.5 * std::exp(0.02 * ti));
    }
    auto f = asymptotic_fit(t, ysqrt, FitModel::sqrt_t);
    CHECK(f.params[0] == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(f.residual < 1e-12);
    f = asymptotic_fit(t, ysqrt, FitModel::power);
    CHECK(f.params[1] == doctest::Approx(0.5).epsilon(1e-10));
    f = asymptotic_fit(t, ypow, FitModel::power);
    CHECK(f.params[0] == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(f.params[1] == doctest::Approx(1.3).epsilon(1e-10));
    f = asymptotic_fit(t, ylin, FitModel::linear_t);
    CHECK(f.params[0] == doctest::Approx(2.0).epsilon(1e-12));
    f = asymptotic_fit(t, ylog, FitModel::t_over_ln_t);
    CHECK(f.params[0] == doctest::Approx(4.0).epsilon(1e-12));
    f = asymptotic_fit(t, yexp, FitModel::exponential);
    CHECK(f.params[1] == doctest::Approx(0.02).epsilon(1e-10));
    f = asymptotic_fit(t, ysqrt, FitModel::constant);
    CHECK(f.residual > 0.1);  // wrong model leaves a large misfit

    std::vector<double> short_t(t.begin(), t.begin() + 5),
        short_y(ysqrt.begin(), ysqrt.begin() + 5);
    CHECK_THROWS_AS(asymptotic_fit(short_t, short_y, FitModel::sqrt_t),
                    std::invalid_argument);
    std::vector<double> narrow_t, narrow_y;
    for (int i = 0; i < 12; ++i) {
        narrow_t.push_back(1.0 + 0.01 * i);
        narrow_y.push_back(1.0);
    }
    CHECK_THROWS_AS(asymptotic_fit(narrow_t, narrow_y, FitModel::power),
                    std::invalid_argument);
}

TEST_CASE("input validation and boundary metadata") {
    RadialGrid g;
    g.d = 3;
    g.r_max = 10.0;
    g.n_r = 100;
    g.dt = 1e-2;
    CHECK(g.boundary_time() == doctest::Approx(100.0 / 6.0));
    CHECK_THROWS_AS(partition_function(RadialPotential::well(2), 1.0, g, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(fundamental_solution(RadialPotential::well(3), 1.0, 11.0, g, 1.0),
                    std::invalid_argument);
    const RadialField neg({0.0, 10.0}, {-1.0, -1.0});
    CHECK_THROWS_AS(evolve(RadialPotential::well(3), 1.0, neg, g, 1.0),
                    std::invalid_argument);
    RadialGrid bad = g;
    bad.dt = 0.0;
    CHECK_THROWS_AS(partition_function(RadialPotential::well(3), 1.0, bad, 1.0),
                    std::invalid_argument);
}

TEST_CASE("effective critical coupling matches the finite-domain matching oracle") {
    // d = 3 unit well on [0, R] with u = 0 at R: writing u = r phi, the
    // zero-energy interior solution is sin(kr) and the exterior one is
    // proportional to (R - r), so the threshold solves k cot k = -1/(R - 1)
    // with beta = k^2 / 2.  Solve that transcendental equation directly and
    // compare against the matrix bisection.
    const double R = 40.0;
    const auto oracle = [&] {
        double lo = kPi / 2.0, hi = kPi - 1e-9;
        const auto f = [&](double k) { return k / std::tan(k) + 1.0 / (R - 1.0); };
        for (int i = 0; i < 200; ++i) {
            const double m = 0.5 * (lo + hi);
            (f(m) < 0.0 ? hi : lo) = m;
        }
        const double k = 0.5 * (lo + hi);
        return k * k / 2.0;
    }();

    const auto v = RadialPotential::well(3);
    RadialGrid g;
    g.r_max = R;
    g.n_r = 1600;
    g.boundary = BoundaryCondition::absorbing;
    const double coarse = effective_critical_coupling(v, g);
    g.n_r = 3200;
    const double fine = effective_critical_coupling(v, g);

    CHECK(coarse == doctest::Approx(oracle).epsilon(5e-4));
    CHECK(fine == doctest::Approx(oracle).epsilon(2e-4));
    // second-order convergence of the discrete threshold
    const double ratio = std::fabs(coarse - oracle) / std::fabs(fine - oracle);
    CHECK(ratio > 2.5);
    CHECK(ratio < 6.0);

    // for a wide domain the threshold approaches the free-space pi^2 / 8
    RadialGrid wide;
    wide.d = 3;
    wide.r_max = 400.0;
    wide.n_r = 16000;
    wide.boundary = BoundaryCondition::absorbing;
    CHECK(effective_critical_coupling(v, wide) ==
          doctest::Approx(kPi * kPi / 8.0).epsilon(3e-3));

    CHECK_THROWS_AS(effective_critical_coupling(RadialPotential::well(4), g),
                    std::invalid_argument);
}
