#pragma once

// Closed-form d = 3 critical-scaling limit on the unit time interval: the
// two-term refinement pbar of the heat kernel, the log-mass
// g(t, r) = ln(1 + v2(t, r)) of the remaining horizon, the normalized Markov
// transition density Q built from them, its radial drift dg/dr, and numerical
// defect checks (normalization, Chapman-Kolmogorov, Fokker-Planck).

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace polymer {

// v2(t, r): total mass over z of the correction term of pbar(t, 1, x, z) at
// r = |x|, so that int pbar(t,1,x,z) dz = 1 + v2(t, |x|).  Closed form
//   v2 = sqrt(2/pi) (sqrt(tau)/r) e^{-r^2/(2 tau)} - erfc(r / sqrt(2 tau)),
// tau = 1 - t; v2(1, r) = 0.  Requires 0 <= t <= 1 and r > 0.
double critical_mass_correction(double t, double r);

// g(t, r) = ln(1 + v2(t, r)), t in [0, 1), r > 0.
double critical_log_mass(double t, double r);

// dg/dr by analytic differentiation:  v2' = -sqrt(2 tau / pi) e^{-r^2/2tau} / r^2,
// drift = v2' / (1 + v2).  Behaves like -1/r + O(r) near the origin.
double critical_drift(double t, double r);

struct CriticalKernel {
    int theta_nodes = 64;  // Gauss-Legendre nodes for the polar angle
    int phi_nodes = 64;    // trapezoid nodes for the azimuth (periodic)

    // Two-term transition-density limit; y, x are radii and cos_angle the
    // cosine of the angle between the two vectors (only the leading heat
    // kernel depends on it).  y = 0 uses the origin branch
    //   origin_prefactor * |x|^{-1} (t-s)^{-1/2} e^{-|x|^2 / 2(t-s)};
    // the prefactor (kappa psi(0) for absolute comparisons) cancels inside Q
    // and defaults to 1.  Requires 0 <= s < t and x > 0.
    double pbar(double s, double t, double y, double x, double cos_angle,
                double origin_prefactor = 1.0) const;

    // pbar averaged over the directions of x (the leading term becomes the
    // shell-averaged heat kernel; the correction is already radial).
    double pbar_shell_average(double s, double t, double y, double x) const;

    // Transition density Q(s, t, y, x) on 0 <= s < t <= 1:
    //   t < 1:  pbar * (1 + v2(t,|x|)) / (1 + v2(s,|y|)),
    // with the y = 0 limit  e^{-|x|^2/2(t-s)} (1+v2(t,|x|)) /
    // (4 pi |x| sqrt(t-s) sqrt(1-s)); the t = 1 branch is the continuous
    // v2 -> 0 limit.  Q(s,t,y,0) = 0 by definition.
    double transition(double s, double t, double y, double x,
                      double cos_angle) const;

    // Q averaged over the directions of x (fixed |x| = x).
    double transition_shell_average(double s, double t, double y, double x) const;

    // |int Q(s,t,y,x) dx - 1| over R^3.
    double normalization_defect(double s, double t, double y) const;

    // |int Q(t1,t2,y,z) Q(t2,t3,z,x) dz  -  Q(t1,t3,y,x)|
    // with cos_angle between y and x.
    double chapman_kolmogorov_defect(double t1, double t2, double t3, double y,
                                     double x, double cos_angle) const;
};

struct ResidualReport {
    double residual = 0.0;          // max |d_t rho - L* rho| at steps (dt, dr)
    double refinement_ratio = 0.0;  // residual(dt, dr) / residual(dt/2, dr/2)
};

// Fokker-Planck residual of a radial density rho(t, r) under the adjoint
// generator with radial drift b(t, r):
//   L* rho = (1/2)(rho_rr + (2/r) rho_r) - b_r rho - b rho_r - (2/r) b rho,
// all derivatives by centered differences with steps dt, dr (and halved
// steps for the refinement ratio).
ResidualReport radial_fokker_planck_residual(
    const std::function<double(double, double)>& density,
    const std::function<double(double, double)>& drift,
    const std::vector<double>& t_grid, const std::vector<double>& r_grid,
    double dt, double dr);

// Residual of the shell-averaged Q(s, t, y, .) for fixed (s, y).
ResidualReport fokker_planck_residual(const CriticalKernel& kernel, double s,
                                      double y, const std::vector<double>& t_grid,
                                      const std::vector<double>& r_grid,
                                      double dt = 1e-3, double dr = 1e-3);

struct DefectCheck {
    std::string check;
    std::vector<std::pair<std::string, double>> params;
    double defect = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Standard verification sweep (normalization, Chapman-Kolmogorov,
// Fokker-Planck with refinement ratio, near-origin drift limit, continuity
// of the t = 1 branch), suitable for JSON emission.
std::vector<DefectCheck> critical_defect_suite(const CriticalKernel& kernel);

}  // namespace polymer
