#include "polymer/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace polymer {

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on Legendre polynomials, Chebyshev initial guess.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
    QuadratureRule rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * rule.nodes[i];
        rule.weights[i] *= half;
    }
    return rule;
}

QuadratureRule composite_gauss(int cells, int points, double a, double b) {
    if (cells < 1) throw std::invalid_argument("composite_gauss: cells < 1");
    const QuadratureRule base = gauss_legendre(points);
    QuadratureRule rule;
    rule.nodes.reserve(cells * points);
    rule.weights.reserve(cells * points);
    const double h = (b - a) / cells;
    for (int c = 0; c < cells; ++c) {
        const double mid = a + (c + 0.5) * h;
        for (int i = 0; i < points; ++i) {
            rule.nodes.push_back(mid + 0.5 * h * base.nodes[i]);
            rule.weights.push_back(0.5 * h * base.weights[i]);
        }
    }
    return rule;
}

namespace {

double gauss12(const std::function<double(double)>& f, double a, double b) {
    static const QuadratureRule base = gauss_legendre(12);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 12; ++i)
        s += base.weights[i] * f(mid + half * base.nodes[i]);
    return half * s;
}

double integrate_rec(const std::function<double(double)>& f, double a, double b,
                     double whole, double tol, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss12(f, a, mid);
    const double right = gauss12(f, mid, b);
    const double err = std::fabs(left + right - whole);
    if (err < tol * (1.0 + std::fabs(left + right)) || depth >= 30)
        return left + right;
    return integrate_rec(f, a, mid, left, tol / 1.4, depth + 1) +
           integrate_rec(f, mid, b, right, tol / 1.4, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
    return integrate_rec(f, a, b, gauss12(f, a, b), tol, 0);
}

}  // namespace polymer
