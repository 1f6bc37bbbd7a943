#pragma once

// Compactly supported, nonnegative radial potential profiles v(r).

#include <string>
#include <vector>

namespace polymer {

class RadialPotential {
  public:
    // Samples on the uniform grid r_k = k * R_supp / (samples.size()-1),
    // interpolated linearly; v = 0 for r > R_supp.
    RadialPotential(int d, double r_supp, std::vector<double> samples);

    // Indicator well of the given radius and height.
    static RadialPotential well(int d, double radius = 1.0, double height = 1.0);

    // Smooth compactly supported bump height * exp(1 - 1/(1 - (r/radius)^2)).
    static RadialPotential bump(int d, double radius = 1.0, double height = 1.0,
                                int samples = 512);

    double operator()(double r) const;

    int dimension() const { return d_; }
    double support_radius() const { return r_supp_; }
    double sup() const { return sup_; }

    // integral of v over R^d (with the surface factor), by quadrature of the
    // interpolated profile.
    double integral() const;

    const std::vector<double>& samples() const { return samples_; }

    // Same profile scaled by s > 0.
    RadialPotential scaled(double s) const;

  private:
    int d_;
    double r_supp_;
    std::vector<double> samples_;
    double sup_;
};

}  // namespace polymer
