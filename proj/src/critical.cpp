#include "polymer/critical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polymer/greens.hpp"
#include "polymer/quadrature.hpp"

namespace polymer {
namespace {

void require_unit_times(double s, double t) {
    if (!(0.0 <= s && s < t && t <= 1.0))
        throw std::invalid_argument("critical kernel: need 0 <= s < t <= 1");
}

// Panel edges for radial integrals: geometric grading near the origin (the
// integrands behave like r after the surface factor but vary fast), then
// uniform panels of width ~min(1/4, diffusive scale / 2) out to r_max.
std::vector<double> radial_edges(double width, double r_max) {
    std::vector<double> edges = {0.0, 1e-3, 4e-3, 1.6e-2, 6.4e-2, 0.25};
    while (edges.back() >= r_max) edges.pop_back();
    const double w = std::max(1e-2, std::min(0.25, 0.5 * width));
    double r = edges.back();
    while (r < r_max) {
        r = std::min(r + w, r_max);
        edges.push_back(r);
    }
    return edges;
}

}  // namespace

double critical_mass_correction(double t, double r) {
    if (!(0.0 <= t && t <= 1.0) || !(r > 0.0))
        throw std::invalid_argument("critical_mass_correction: need t in [0,1], r > 0");
    const double tau = 1.0 - t;
    if (tau == 0.0) return 0.0;
    const double u = r / std::sqrt(2.0 * tau);
    return std::sqrt(2.0 / kPi) * std::sqrt(tau) / r * std::exp(-u * u) -
           std::erfc(u);
}

double critical_log_mass(double t, double r) {
    return std::log1p(critical_mass_correction(t, r));
}

double critical_drift(double t, double r) {
    if (!(0.0 <= t && t <= 1.0) || !(r > 0.0))
        throw std::invalid_argument("critical_drift: need t in [0,1], r > 0");
    const double tau = 1.0 - t;
    if (tau == 0.0) return 0.0;
    const double v2p =
        -std::sqrt(2.0 * tau / kPi) * std::exp(-r * r / (2.0 * tau)) / (r * r);
    return v2p / (1.0 + critical_mass_correction(t, r));
}

double CriticalKernel::pbar(double s, double t, double y, double x,
                            double cos_angle, double origin_prefactor) const {
    if (!(0.0 <= s && s < t))
        throw std::invalid_argument("pbar: need 0 <= s < t");
    if (!(x > 0.0)) throw std::invalid_argument("pbar: x = 0 rejected");
    const double tau = t - s;
    if (y == 0.0)
        return origin_prefactor * std::exp(-x * x / (2.0 * tau)) /
               (x * std::sqrt(tau));
    const double c = std::clamp(cos_angle, -1.0, 1.0);
    const double dist2 = std::max(y * y + x * x - 2.0 * y * x * c, 0.0);
    const double lead = heat_kernel(3, tau, std::sqrt(dist2));
    const double corr = std::pow(2.0 * kPi, -1.5) / (y * x * std::sqrt(tau)) *
                        std::exp(-(y + x) * (y + x) / (2.0 * tau));
    return lead + corr;
}

double CriticalKernel::pbar_shell_average(double s, double t, double y,
                                          double x) const {
    if (!(0.0 <= s && s < t))
        throw std::invalid_argument("pbar: need 0 <= s < t");
    if (!(x > 0.0)) throw std::invalid_argument("pbar: x = 0 rejected");
    const double tau = t - s;
    if (y == 0.0) return std::exp(-x * x / (2.0 * tau)) / (x * std::sqrt(tau));
    const double corr = std::pow(2.0 * kPi, -1.5) / (y * x * std::sqrt(tau)) *
                        std::exp(-(y + x) * (y + x) / (2.0 * tau));
    return heat_kernel_shell_average_3d(tau, x, y) + corr;
}

double CriticalKernel::transition(double s, double t, double y, double x,
                                  double cos_angle) const {
    require_unit_times(s, t);
    if (x == 0.0) return 0.0;
    const double weight = 1.0 + critical_mass_correction(t, x);  // 1 at t = 1
    if (y == 0.0) {
        const double tau = t - s;
        return std::exp(-x * x / (2.0 * tau)) * weight /
               (4.0 * kPi * x * std::sqrt(tau) * std::sqrt(1.0 - s));
    }
    return pbar(s, t, y, x, cos_angle) * weight /
           (1.0 + critical_mass_correction(s, y));
}

double CriticalKernel::transition_shell_average(double s, double t, double y,
                                                double x) const {
    require_unit_times(s, t);
    if (x == 0.0) return 0.0;
    const double weight = 1.0 + critical_mass_correction(t, x);
    if (y == 0.0) {
        const double tau = t - s;
        return std::exp(-x * x / (2.0 * tau)) * weight /
               (4.0 * kPi * x * std::sqrt(tau) * std::sqrt(1.0 - s));
    }
    return pbar_shell_average(s, t, y, x) * weight /
           (1.0 + critical_mass_correction(s, y));
}

double CriticalKernel::normalization_defect(double s, double t, double y) const {
    require_unit_times(s, t);
    const double tau = t - s;
    const double r_max = y + 8.0 * std::sqrt(tau) + 2.0;
    const std::vector<double> edges = radial_edges(std::sqrt(tau), r_max);
    const QuadratureRule angle = gauss_legendre(theta_nodes, -1.0, 1.0);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const QuadratureRule rad = gauss_legendre(12, edges[p], edges[p + 1]);
        for (std::size_t i = 0; i < rad.nodes.size(); ++i) {
            const double r = rad.nodes[i];
            double shell;
            if (y == 0.0) {
                shell = 2.0 * transition(s, t, 0.0, r, 1.0);
            } else {
                shell = 0.0;
                for (std::size_t a = 0; a < angle.nodes.size(); ++a)
                    shell += angle.weights[a] * transition(s, t, y, r, angle.nodes[a]);
            }
            total += rad.weights[i] * 2.0 * kPi * r * r * shell;
        }
    }
    return std::fabs(total - 1.0);
}

double CriticalKernel::chapman_kolmogorov_defect(double t1, double t2, double t3,
                                                 double y, double x,
                                                 double cos_angle) const {
    require_unit_times(t1, t2);
    require_unit_times(t2, t3);
    const double ca = std::clamp(cos_angle, -1.0, 1.0);
    const double sa = std::sqrt(std::max(1.0 - ca * ca, 0.0));
    const double r_max = y + 8.0 * std::sqrt(t3 - t1) + 2.0;
    const std::vector<double> edges =
        radial_edges(std::sqrt(std::min(t2 - t1, t3 - t2)), r_max);
    const QuadratureRule angle = gauss_legendre(theta_nodes, -1.0, 1.0);

    double integral = 0.0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const QuadratureRule rad = gauss_legendre(12, edges[p], edges[p + 1]);
        for (std::size_t i = 0; i < rad.nodes.size(); ++i) {
            const double rho = rad.nodes[i];
            double shell = 0.0;
            if (y == 0.0) {
                // first factor is isotropic; align the polar axis with x
                const double q1 = transition(t1, t2, 0.0, rho, 1.0);
                for (std::size_t a = 0; a < angle.nodes.size(); ++a)
                    shell += angle.weights[a] * q1 *
                             transition(t2, t3, rho, x, angle.nodes[a]);
                shell *= 2.0 * kPi;
            } else {
                // polar axis along y; x at angle acos(ca) in the phi = 0 plane
                for (std::size_t a = 0; a < angle.nodes.size(); ++a) {
                    const double c = angle.nodes[a];
                    const double sc = std::sqrt(std::max(1.0 - c * c, 0.0));
                    const double q1 = transition(t1, t2, y, rho, c);
                    double phi_sum = 0.0;
                    for (int k = 0; k < phi_nodes; ++k) {
                        const double phi = 2.0 * kPi * k / phi_nodes;
                        const double czx = ca * c + sa * sc * std::cos(phi);
                        phi_sum += transition(t2, t3, rho, x, czx);
                    }
                    shell += angle.weights[a] * q1 * phi_sum * 2.0 * kPi / phi_nodes;
                }
            }
            integral += rad.weights[i] * rho * rho * shell;
        }
    }
    return std::fabs(integral - transition(t1, t3, y, x, ca));
}

ResidualReport radial_fokker_planck_residual(
    const std::function<double(double, double)>& density,
    const std::function<double(double, double)>& drift,
    const std::vector<double>& t_grid, const std::vector<double>& r_grid,
    double dt, double dr) {
    if (dt <= 0.0 || dr <= 0.0)
        throw std::invalid_argument("radial_fokker_planck_residual: steps must be > 0");
    auto worst_at = [&](double ht, double hr) {
        double worst = 0.0;
        for (double t : t_grid)
            for (double r : r_grid) {
                const double rho = density(t, r);
                const double rho_t =
                    (density(t + ht, r) - density(t - ht, r)) / (2.0 * ht);
                const double up = density(t, r + hr), um = density(t, r - hr);
                const double rho_r = (up - um) / (2.0 * hr);
                const double rho_rr = (up - 2.0 * rho + um) / (hr * hr);
                const double b = drift(t, r);
                const double b_r = (drift(t, r + hr) - drift(t, r - hr)) / (2.0 * hr);
                const double gen = 0.5 * (rho_rr + 2.0 / r * rho_r) - b_r * rho -
                                   b * rho_r - 2.0 / r * b * rho;
                worst = std::max(worst, std::fabs(rho_t - gen));
            }
        return worst;
    };
    ResidualReport rep;
    rep.residual = worst_at(dt, dr);
    const double fine = worst_at(0.5 * dt, 0.5 * dr);
    rep.refinement_ratio = fine > 0.0 ? rep.residual / fine : 0.0;
    return rep;
}

ResidualReport fokker_planck_residual(const CriticalKernel& kernel, double s,
                                      double y, const std::vector<double>& t_grid,
                                      const std::vector<double>& r_grid, double dt,
                                      double dr) {
    return radial_fokker_planck_residual(
        [&](double t, double r) { return kernel.transition_shell_average(s, t, y, r); },
        [](double t, double r) { return critical_drift(t, r); }, t_grid, r_grid, dt,
        dr);
}

std::vector<DefectCheck> critical_defect_suite(const CriticalKernel& kernel) {
    std::vector<DefectCheck> out;
    for (double s : {0.0, 0.3})
        for (double t : {0.5, 1.0})
            for (double y : {0.3, 1.0, 3.0}) {
                DefectCheck c;
                c.check = "normalization";
                c.params = {{"s", s}, {"t", t}, {"y", y}};
                c.defect = kernel.normalization_defect(s, t, y);
                c.tolerance = 1e-6;
                c.pass = c.defect < c.tolerance;
                out.push_back(std::move(c));
            }

    struct CkCase {
        double t1, t2, t3, y, x, cos_angle;
    };
    for (const CkCase& k : {CkCase{0.1, 0.4, 0.8, 1.0, 0.5, 1.0},
                            CkCase{0.1, 0.4, 0.8, 1.0, 1.5, -0.5},
                            CkCase{0.0, 0.5, 1.0, 0.5, 1.0, 0.0},
                            CkCase{0.2, 0.3, 0.9, 1.0, 1.0, 0.3}}) {
        DefectCheck c;
        c.check = "chapman_kolmogorov";
        c.params = {{"t1", k.t1}, {"t2", k.t2}, {"t3", k.t3},
                    {"y", k.y},   {"x", k.x},   {"cos_angle", k.cos_angle}};
        c.defect = kernel.chapman_kolmogorov_defect(k.t1, k.t2, k.t3, k.y, k.x,
                                                    k.cos_angle);
        c.tolerance = 1e-4;
        c.pass = c.defect < c.tolerance;
        out.push_back(std::move(c));
    }

    std::vector<double> t_grid, r_grid;
    for (double t = 0.3; t <= 0.901; t += 0.1) t_grid.push_back(t);
    for (double r = 0.2; r <= 3.001; r += 0.2) r_grid.push_back(r);
    const ResidualReport rep = fokker_planck_residual(kernel, 0.1, 1.0, t_grid, r_grid);
    {
        DefectCheck c;
        c.check = "fokker_planck";
        c.params = {{"s", 0.1}, {"y", 1.0}};
        c.defect = rep.residual;
        c.tolerance = 1e-3;
        c.pass = c.defect < c.tolerance;
        out.push_back(std::move(c));
        DefectCheck r;
        r.check = "fokker_planck_refinement";
        r.params = {{"ratio", rep.refinement_ratio}};
        r.defect = std::fabs(rep.refinement_ratio / 4.0 - 1.0);
        r.tolerance = 0.5;  // second-order differencing: ratio in [2, 6]
        r.pass = r.defect < r.tolerance;
        out.push_back(std::move(r));
    }

    {
        DefectCheck c;
        c.check = "drift_origin_limit";
        const double r = 0.01, t = 0.5;
        c.params = {{"t", t}, {"r", r}};
        c.defect = std::fabs(r * critical_drift(t, r) + 1.0);
        c.tolerance = 1e-3;
        c.pass = c.defect < c.tolerance;
        out.push_back(std::move(c));
    }

    {
        DefectCheck c;
        c.check = "terminal_branch_continuity";
        c.params = {{"s", 0.2}, {"y", 1.0}, {"cos_angle", 0.7}};
        double worst = 0.0;
        for (double r : {0.5, 1.0, 2.0})
            worst = std::max(worst,
                             std::fabs(kernel.transition(0.2, 1.0, 1.0, r, 0.7) -
                                       kernel.transition(0.2, 1.0 - 1e-10, 1.0, r, 0.7)));
        c.defect = worst;
        c.tolerance = 1e-8;
        c.pass = c.defect < c.tolerance;
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace polymer
