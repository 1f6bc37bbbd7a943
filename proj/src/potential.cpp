#include "polymer/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polymer/greens.hpp"
#include "polymer/quadrature.hpp"

namespace polymer {

RadialPotential::RadialPotential(int d, double r_supp, std::vector<double> samples)
    : d_(d), r_supp_(r_supp), samples_(std::move(samples)) {
    require_dimension(d);
    if (r_supp <= 0.0) throw std::invalid_argument("RadialPotential: R_supp <= 0");
    if (samples_.size() < 2) throw std::invalid_argument("RadialPotential: need >= 2 samples");
    sup_ = 0.0;
    for (double s : samples_) {
        if (s < 0.0) throw std::invalid_argument("RadialPotential: negative sample");
        sup_ = std::max(sup_, s);
    }
    if (sup_ == 0.0) throw std::invalid_argument("RadialPotential: identically zero");
}

RadialPotential RadialPotential::well(int d, double radius, double height) {
    if (height <= 0.0) throw std::invalid_argument("well: height <= 0");
    return RadialPotential(d, radius, std::vector<double>(2, height));
}

RadialPotential RadialPotential::bump(int d, double radius, double height, int samples) {
    std::vector<double> v(samples);
    for (int k = 0; k < samples; ++k) {
        const double x = static_cast<double>(k) / (samples - 1);
        v[k] = (x < 1.0) ? height * std::exp(1.0 - 1.0 / (1.0 - x * x)) : 0.0;
    }
    return RadialPotential(d, radius, std::move(v));
}

double RadialPotential::operator()(double r) const {
    if (r < 0.0) r = -r;
    if (r > r_supp_) return 0.0;
    const double x = r / r_supp_ * (samples_.size() - 1);
    const auto lo = static_cast<std::size_t>(x);
    if (lo + 1 >= samples_.size()) return samples_.back();
    const double t = x - lo;
    return samples_[lo] + t * (samples_[lo + 1] - samples_[lo]);
}

double RadialPotential::integral() const {
    const double area = sphere_area(d_);
    const auto& self = *this;
    return area * integrate(
                      [&self, this](double r) {
                          return self(r) * std::pow(r, d_ - 1);
                      },
                      0.0, r_supp_, 1e-12);
}

RadialPotential RadialPotential::scaled(double s) const {
    if (s <= 0.0) throw std::invalid_argument("scaled: factor must be positive");
    std::vector<double> v = samples_;
    for (double& x : v) x *= s;
    return RadialPotential(d_, r_supp_, std::move(v));
}

}  // namespace polymer
