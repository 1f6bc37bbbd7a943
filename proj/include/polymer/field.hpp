#pragma once

// RadialField: a scalar function of radius sampled on a grid, with linear
// interpolation between samples.  Used for ground states, eigenfunctions,
// PDE snapshots and the subcritical corrector.

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace polymer {

struct RadialField {
    std::vector<double> r;      // ascending radii
    std::vector<double> value;  // samples, same length

    RadialField() = default;
    RadialField(std::vector<double> radii, std::vector<double> values)
        : r(std::move(radii)), value(std::move(values)) {
        if (r.size() != value.size() || r.size() < 2)
            throw std::invalid_argument("RadialField: mismatched or tiny arrays");
    }

    // Linear interpolation; clamps to the end values outside the grid.
    double operator()(double x) const {
        if (x <= r.front()) return value.front();
        if (x >= r.back()) return value.back();
        std::size_t lo = 0, hi = r.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (r[mid] <= x ? lo : hi) = mid;
        }
        const double t = (x - r[lo]) / (r[lo + 1] - r[lo]);
        return value[lo] + t * (value[lo + 1] - value[lo]);
    }
};

}  // namespace polymer
