#pragma once

// Modified Bessel functions K_nu and I_nu for the handful of orders
// nu in {0, 1/2, 1, 3/2} that the radial kernels in dimensions d <= 5 need.
// Integer orders use a power series for small argument and minimax rational
// expansions (Russon & Blair / Holoborodko lineage, double precision) for
// large argument; half-integer orders have elementary closed forms.

namespace polymer {

// K_0(z), z > 0. Relative accuracy ~1e-16.
double bessel_k0(double z);

// K_1(z), z > 0. Relative accuracy ~1e-16.
double bessel_k1(double z);

// I_0(z), z >= 0.
double bessel_i0(double z);

// I_1(z), z >= 0.
double bessel_i1(double z);

// K_nu(z) for nu in {0, 0.5, 1, 1.5}; throws std::invalid_argument otherwise
// and std::domain_error for z <= 0.
double modified_bessel_k(double nu, double z);

// I_nu(z) for nu in {-0.5, 0, 0.5, 1, 1.5}; same error contract, z >= 0
// (z = 0 allowed, by continuity; I_{-1/2} diverges there and is rejected).
double modified_bessel_i(double nu, double z);

}  // namespace polymer
