#pragma once

// Gauss-Legendre rules and a small adaptive integrator.

#include <functional>
#include <vector>

namespace polymer {

struct QuadratureRule {
    std::vector<double> nodes;    // on the requested interval
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1] (nodes ascending).
QuadratureRule gauss_legendre(int n);

// n-point Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

// Composite rule: [a, b] split into `cells` equal cells, `points` Gauss-Legendre
// points per cell.
QuadratureRule composite_gauss(int cells, int points, double a, double b);

// Adaptive integration of f on [a, b] by interval bisection with a 12-point
// Gauss rule per interval; |error| aimed below tol (absolute + relative mix).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12);

}  // namespace polymer
