#pragma once

// Free-space kernels for the operator (1/2)Laplacian on R^d, d in {1,...,5}:
// the resolvent kernel R_0(lambda, x), the heat kernel, the zero-energy
// kernels P_d, Q_d, and the exact spherical-surface reduction of R_0 used by
// the radial Nystrom discretization.

#include <stdexcept>

namespace polymer {

inline constexpr double kPi = 3.14159265358979323846;

// Validates d in {1,...,5}; some callers additionally require d >= 3.
void require_dimension(int d, int min_d = 1);

// Surface area of the unit sphere S^{d-1} in R^d (2 for d = 1 by convention,
// counting the two points {-1, +1}).
double sphere_area(int d);

// Kernel R_0(lambda, x) of (1/2 Laplacian - lambda)^{-1} at |x| = r.
//   R_0(lambda, r) = -2 (2 pi)^{-d/2} (m/r)^{d/2-1} K_{d/2-1}(m r),  m = sqrt(2 lambda),
// with the lambda = 0 limit -a_d r^{2-d} for d >= 3 (a_d = Gamma(d/2-1)/(2 pi^{d/2})).
// Strictly negative. Preconditions: r > 0 for d >= 2; lambda > 0 for d in {1,2}.
double free_resolvent_kernel(int d, double lambda, double r);

// (2 pi t)^{-d/2} exp(-r^2 / 2t), t > 0.
double heat_kernel(int d, double t, double r);

struct ZeroEnergyKernels {
    double P;  // P_d(r) = a_d r^{2-d}, the kernel of -R_0(0)
    double Q;  // next coefficient of -R_0(lambda) in the small-lambda expansion
};

// P_d and Q_d at |x - y| = r, d >= 3.  The expansion of -R_0(lambda) reads
//   d=3:  P_3 + sqrt(lambda) Q_3 + O(lambda),          Q_3 = -1/(sqrt2 pi)
//   d=4:  P_4 + lambda ln(1/lambda) Q_4 + O(lambda),   Q_4 = -1/(4 pi^2)
//   d=5:  P_5 + lambda Q_5 + O(lambda^{3/2}),          Q_5 = -a_5 / r
// a_3 = 1/(2 pi), a_4 = 1/(2 pi^2), a_5 = 1/(4 pi^2); all values follow from
// the Laplace transform of the heat kernel (see tests).
ZeroEnergyKernels zero_energy_kernels(int d, double r);

// Surface integral of the resolvent kernel over the sphere of radius rp:
//   S(lambda; r, rp) = int_{S^{d-1}} R_0(lambda, |r e - rp y|) dsigma(y)
//                    = -2 (r rp)^{1-d/2} I_{d/2-1}(m r_<) K_{d/2-1}(m r_>),
// the l = 0 component of the Gegenbauer addition theorem (for d = 1 this is
// the even reflection R_0(|r-rp|) + R_0(r+rp)).  lambda = 0 (d >= 3) gives
// -(2/(d-2)) r_>^{2-d} by the mean value property.  This is the 1-D kernel of
// the radial reduction: (R_0 f)(r) = int_0^inf S(lambda; r, rp) f(rp) rp^{d-1} drp.
double resolvent_surface_kernel(int d, double lambda, double r, double rp);

// Same reduction for the heat kernel in d = 3 (used to shell-average PDE
// fundamental solutions): (1/(4 pi)) int_{S^2} p_0(t, |r e - rp y|) dsigma
// = (2 pi t)^{-3/2} (t / (2 r rp)) (e^{-(r-rp)^2/2t} - e^{-(r+rp)^2/2t}).
double heat_kernel_shell_average_3d(double t, double r, double rp);

}  // namespace polymer
