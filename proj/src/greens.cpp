#include "polymer/greens.hpp"

#include <cmath>

#include "polymer/special.hpp"

namespace polymer {

void require_dimension(int d, int min_d) {
    if (d < 1 || d > 5)
        throw std::invalid_argument("dimension must be in {1,...,5}");
    if (d < min_d)
        throw std::invalid_argument("dimension too small for this operation");
}

double sphere_area(int d) {
    require_dimension(d);
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * kPi;
        case 3: return 4.0 * kPi;
        case 4: return 2.0 * kPi * kPi;
        default: return 8.0 * kPi * kPi / 3.0;  // d = 5
    }
}

namespace {

// a_d = Gamma(d/2 - 1) / (2 pi^{d/2}), the constant in R_0(0, r) = -a_d r^{2-d}.
double fundamental_constant(int d) {
    switch (d) {
        case 3: return 1.0 / (2.0 * kPi);
        case 4: return 1.0 / (2.0 * kPi * kPi);
        default: return 1.0 / (4.0 * kPi * kPi);  // d = 5
    }
}

}  // namespace

double free_resolvent_kernel(int d, double lambda, double r) {
    require_dimension(d);
    if (lambda < 0.0) throw std::domain_error("free_resolvent_kernel: lambda < 0");
    if (d >= 2 && r <= 0.0)
        throw std::domain_error("free_resolvent_kernel: singular point r = 0");
    if (r < 0.0) throw std::domain_error("free_resolvent_kernel: r < 0");
    if (lambda == 0.0) {
        if (d <= 2)
            throw std::domain_error("free_resolvent_kernel: lambda = 0 needs d >= 3");
        return -fundamental_constant(d) * std::pow(r, 2.0 - d);
    }
    const double m = std::sqrt(2.0 * lambda);
    switch (d) {
        case 1:
            return -std::exp(-m * r) / m;
        case 3:
            return -std::exp(-m * r) / (2.0 * kPi * r);
        default: {
            const double nu = d / 2.0 - 1.0;
            return -2.0 * std::pow(2.0 * kPi, -d / 2.0) * std::pow(m / r, nu) *
                   modified_bessel_k(nu, m * r);
        }
    }
}

double heat_kernel(int d, double t, double r) {
    require_dimension(d);
    if (t <= 0.0) throw std::domain_error("heat_kernel: t must be positive");
    return std::pow(2.0 * kPi * t, -d / 2.0) * std::exp(-r * r / (2.0 * t));
}

ZeroEnergyKernels zero_energy_kernels(int d, double r) {
    require_dimension(d, 3);
    if (r <= 0.0) throw std::domain_error("zero_energy_kernels: r must be positive");
    const double a = fundamental_constant(d);
    ZeroEnergyKernels k;
    k.P = a * std::pow(r, 2.0 - d);
    switch (d) {
        case 3: k.Q = -1.0 / (std::sqrt(2.0) * kPi); break;
        case 4: k.Q = -1.0 / (4.0 * kPi * kPi); break;
        default: k.Q = -a / r; break;  // -a_d / ((d-4) r^{d-4}) at d = 5
    }
    return k;
}

double resolvent_surface_kernel(int d, double lambda, double r, double rp) {
    require_dimension(d);
    if (r < 0.0 || rp < 0.0)
        throw std::domain_error("resolvent_surface_kernel: negative radius");
    const double lo = std::min(r, rp);
    const double hi = std::max(r, rp);
    if (lambda == 0.0) {
        if (d <= 2)
            throw std::domain_error("resolvent_surface_kernel: lambda = 0 needs d >= 3");
        if (hi <= 0.0)
            throw std::domain_error("resolvent_surface_kernel: both radii zero");
        return -(2.0 / (d - 2.0)) * std::pow(hi, 2.0 - d);
    }
    const double m = std::sqrt(2.0 * lambda);
    if (lo == 0.0) {
        // One argument at the origin: the surface integral is just
        // area(S^{d-1}) * R_0(lambda, hi); for d = 1, R_0 is finite at hi = 0 too.
        if (d >= 2 && hi == 0.0)
            throw std::domain_error("resolvent_surface_kernel: both radii zero");
        return sphere_area(d) * free_resolvent_kernel(d, lambda, hi);
    }
    switch (d) {
        case 1:
            // Even reflection of the 1-D kernel: R_0(|r-rp|) + R_0(r+rp).
            return -2.0 * std::cosh(m * lo) * std::exp(-m * hi) / m;
        case 3:
            return -(std::exp(-m * (hi - lo)) - std::exp(-m * (hi + lo))) / (m * r * rp);
        default: {
            const double nu = d / 2.0 - 1.0;
            return -2.0 * std::pow(r * rp, 1.0 - d / 2.0) *
                   modified_bessel_i(nu, m * lo) * modified_bessel_k(nu, m * hi);
        }
    }
}

double heat_kernel_shell_average_3d(double t, double r, double rp) {
    if (t <= 0.0) throw std::domain_error("heat_kernel_shell_average_3d: t <= 0");
    if (r <= 0.0 || rp <= 0.0) {
        // Degenerate shell: plain heat kernel at the other radius.
        return heat_kernel(3, t, std::max(r, rp));
    }
    const double c = std::pow(2.0 * kPi * t, -1.5) * t / (2.0 * r * rp);
    const double dm = r - rp, dp = r + rp;
    return c * (std::exp(-dm * dm / (2.0 * t)) - std::exp(-dp * dp / (2.0 * t)));
}

}  // namespace polymer
