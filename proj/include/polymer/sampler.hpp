#pragma once

// Monte Carlo realization of the polymer measure: Brownian paths weighted by
// exp(beta int v), endpoint laws, diffusive-rescaling statistics, pinned
// (bridge-conditioned) weights, and consistency checks of the Markov
// transition densities against the PDE module.

#include <cstdint>
#include <functional>
#include <vector>

#include "polymer/birman_schwinger.hpp"
#include "polymer/field.hpp"
#include "polymer/pde.hpp"
#include "polymer/potential.hpp"

namespace polymer {

struct PathEnsemble {
    int d = 0;
    double T = 0.0;
    int n_steps = 0;
    long long n_paths = 0;
    std::uint64_t seed = 0;
    double beta = 0.0;
    // positions x_j at the checkpoint times f*T (fractions sorted, last = 1);
    // positions[c][j*d + k] is coordinate k of path j at checkpoint c.
    std::vector<double> checkpoint_fractions;
    std::vector<std::vector<double>> positions;
    std::vector<double> weights;  // exp(beta * trapezoid of v along the path)
    double ess = 0.0;             // (sum w)^2 / sum w^2
    bool low_ess_warning = false; // ess < 10
    double z_hat = 0.0;           // mean weight, estimates Z_{beta,T}(0)
    double z_se = 0.0;            // standard error of z_hat

    const std::vector<double>& endpoints() const { return positions.back(); }
};

// Euler-Maruyama paths from the origin (exact Gaussian increments), with the
// Gibbs weight accumulated by trapezoidal quadrature of v(|x(t)|).  Path j is
// a pure function of (seed, j): a counter-based generator keys each path
// independently, so results do not depend on scheduling.
PathEnsemble sample_paths(const RadialPotential& v, double beta, double T,
                          int n_steps, long long n_paths, std::uint64_t seed,
                          std::vector<double> checkpoint_fractions = {0.25, 0.5,
                                                                      0.75, 1.0});

struct EndpointHistogram {
    std::vector<double> edges;  // bin edges of |x(T)|, size bins + 1
    std::vector<double> mass;   // normalized weighted masses, sum = 1
};

// Self-normalized importance-sampling histogram of |x(T)|.
EndpointHistogram endpoint_density(const PathEnsemble& e, int bins, double r_max);

// Total-variation distance between the histogram and a reference radial
// density (unnormalized f(r); the surface factor r^{d-1} must be included by
// the caller if f is a density on R^d), integrated per bin and normalized.
double histogram_tv_distance(const EndpointHistogram& h,
                             const std::function<double(double)>& radial_density);

struct CovarianceRow {
    double t = 0.0;               // fraction of T
    std::vector<double> cov;      // d x d weighted covariance of x(tT)/sqrt(T)
};

// Weighted covariance of the diffusively rescaled path at checkpoint
// fractions, plus the weighted correlation between the increment
// y(t2) - y(t1) and y(t1) per coordinate (independence proxy).
std::vector<CovarianceRow> diffusive_rescale_stats(const PathEnsemble& e,
                                                   const std::vector<double>& times);
std::vector<double> increment_correlation(const PathEnsemble& e, double t1, double t2);

struct PinnedWeights {
    std::vector<double> weights;  // e.weights masked by |x(T)| <= tol_radius
    double ess = 0.0;
    long long surviving = 0;
};

// Conditioning on the endpoint ball |x(T)| <= tol_radius (tolerance-ball
// surrogate of pinning at the origin).  Throws if no path survives.
PinnedWeights pinned_weights(const PathEnsemble& e, double tol_radius);

// Normalization defect |int q dx - 1| of the polymer transition density
//   q(s,y; t,x) = p_beta(t-s, y, x) Z_{beta,T-t}(x) / Z_{beta,T-s}(y)
// computed with the PDE module on the given grid.  Z at y is evaluated
// through the same delta surrogate that starts p, so the defect reflects the
// scheme's consistency rather than the mollifier width.
double q_transition_check(const RadialPotential& v, double beta, double s, double t,
                          double y, double T, const RadialGrid& grid);

struct LimitDensity {
    RadialField field;      // r_beta(t, y, .) on the PDE grid
    double integral = 0.0;  // int r_beta dx (should be 1)
    double lambda0 = 0.0;
};

// Transition density r_beta(t,y,x) = p_beta(t,y,x) psi_beta(x) e^{-lambda0 t}
// / psi_beta(y) of the supercritical limiting process; the denominator is the
// discrete pairing of the delta surrogate with psi_beta, which keeps the
// normalization consistent with the PDE's delta approximation.
LimitDensity limiting_process_density(const SpectralSolver& solver, double beta,
                                      double t, double y, const RadialGrid& grid);

}  // namespace polymer
