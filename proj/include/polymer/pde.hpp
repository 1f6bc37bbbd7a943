#pragma once

// Radial Crank-Nicolson evolution of  du/dt = (1/2) Laplacian u + beta v u
// on [0, R_max]: partition function Z_{beta,t}(x), fundamental solutions
// p_beta(t, y, x), Lyapunov exponents and asymptotic-law fits.
//
// Space is discretized by conservative finite volumes on cell centers
// r_i = (i + 1/2) h: with zero-flux boundaries and beta = 0 the total mass is
// conserved exactly (telescoping fluxes), and the scheme is second order in
// space and time.

#include <cstddef>
#include <vector>

#include "polymer/field.hpp"
#include "polymer/potential.hpp"

namespace polymer {

enum class BoundaryCondition { free_flux, absorbing };

struct RadialGrid {
    int d = 3;
    double r_max = 12.0;
    int n_r = 600;          // finite-volume cells, spacing h = r_max / n_r
    double dt = 1e-3;       // base time step
    // Long-horizon runs grow the step as dt(t) = max(dt, dt_growth * t);
    // 0 keeps the step constant.  Crank-Nicolson stays stable and second
    // order under the ramp; the relative truncation error per unit time is
    // then O(dt_growth^2), uniformly in t.
    double dt_growth = 0.0;
    BoundaryCondition boundary = BoundaryCondition::free_flux;
    std::vector<double> probes = {0.0};  // radii sampled every step
    int snapshots = 33;                  // stored radial profiles (>= 2)

    double spacing() const { return r_max / n_r; }
    double center(int i) const { return (i + 0.5) * spacing(); }
    // Earliest time at which outer-boundary truncation can contaminate
    // observables near the origin (diffusive estimate).
    double boundary_time() const { return r_max * r_max / (2.0 * d); }
};

struct EvolutionResult {
    RadialGrid grid;
    std::vector<double> times;                      // every step, times[0] = 0
    std::vector<std::vector<double>> probe_values;  // [probe][step]
    std::vector<double> snapshot_times;
    std::vector<RadialField> fields;                // profiles at snapshot_times
    long long steps = 0;

    const RadialField& final_field() const { return fields.back(); }
};

// Crank-Nicolson evolution of the given initial data up to t_end.
// Throws std::runtime_error with diagnostics if the max norm exceeds the
// a-priori bound e^{(beta sup v + 1) t} (instability detector) or turns
// non-finite.
EvolutionResult evolve(const RadialPotential& v, double beta, const RadialField& init,
                       const RadialGrid& grid, double t_end);

// Z_{beta,t}(x): evolve with initial data identically one.
EvolutionResult partition_function(const RadialPotential& v, double beta,
                                   const RadialGrid& grid, double t_end);

// p_beta(t, y, .): evolve a normalized near-delta at radius y -- a Gaussian
// shell of width 3h (a full-space Gaussian for y = 0), discretely normalized
// to unit mass.  Since the initial profile equals free heat flow at time
// sigma^2 = (3h)^2, exact-solution comparisons should use t + delta_time().
EvolutionResult fundamental_solution(const RadialPotential& v, double beta, double y,
                                     const RadialGrid& grid, double t_end);
// The effective initial-time offset sigma^2 of the delta approximation.
double delta_time(const RadialGrid& grid);
// The normalized delta surrogate itself, on the grid's cell centers.
RadialField delta_profile(const RadialGrid& grid, double y);

// Mass of a profile: int u r^{d-1} dr times the sphere area, by the grid's
// own cell volumes (exact for the finite-volume scheme).
double field_mass(const RadialGrid& grid, const RadialField& u);

// Critical coupling of the discrete operator itself: the beta at which the
// top eigenvalue of the finite-volume matrix (1/2) Laplacian + beta v, with
// an absorbing outer boundary, crosses zero.  Found by bisection on a Sturm
// sign count of the symmetrized tridiagonal, so each evaluation is O(n_r).
// Long-horizon growth-rate studies at criticality should use this value
// rather than the continuum coupling: the two differ by O(h^2) plus an
// outer-truncation shift, and the mismatch otherwise injects a spurious
// e^{lambda_eff t} factor.
double effective_critical_coupling(const RadialPotential& v, const RadialGrid& grid);

// Least-squares slope of ln(series) over times in [t_lo, t_hi]; drift (if
// requested) receives the difference between the second-half and first-half
// slopes as a stationarity diagnostic.  Series must be positive on the window.
double lyapunov_exponent(const std::vector<double>& times,
                         const std::vector<double>& series, double t_lo, double t_hi,
                         double* drift = nullptr);

enum class FitModel { constant, exponential, sqrt_t, t_over_ln_t, linear_t, power };

struct FitResult {
    std::vector<double> params;  // see asymptotic_fit
    double residual = 0.0;       // rms relative misfit
};

// Least-squares fit of y(t):
//   constant:    y = a                params {a}
//   exponential: y = k e^{lambda t}   params {k, lambda}   (linear in ln y)
//   sqrt_t:      y = k sqrt(t)        params {k}
//   t_over_ln_t: y = k t / ln t       params {k}           (t > 1 required)
//   linear_t:    y = k t              params {k}
//   power:       y = k t^p            params {k, p}        (linear in ln y)
// Requires >= 10 samples spanning at least one decade for the scale-free
// models; exponential/power need positive data.
FitResult asymptotic_fit(const std::vector<double>& times,
                         const std::vector<double>& series, FitModel model);

}  // namespace polymer
