#include "polymer/pde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "polymer/greens.hpp"

namespace polymer {
namespace {

void validate_grid(const RadialGrid& g) {
    require_dimension(g.d);
    if (g.r_max <= 0.0) throw std::invalid_argument("RadialGrid: r_max <= 0");
    if (g.n_r < 4) throw std::invalid_argument("RadialGrid: n_r < 4");
    if (g.dt <= 0.0) throw std::invalid_argument("RadialGrid: dt <= 0");
    if (g.dt_growth < 0.0) throw std::invalid_argument("RadialGrid: dt_growth < 0");
    if (g.snapshots < 2) throw std::invalid_argument("RadialGrid: snapshots < 2");
    for (double p : g.probes)
        if (p < 0.0 || p > g.r_max)
            throw std::invalid_argument("RadialGrid: probe outside [0, r_max]");
}

// u at a requested radius from cell-center values; the origin uses the
// parabolic extension with u_r(0) = 0, elsewhere linear interpolation.
double sample(const std::vector<double>& u, const RadialGrid& g, double r) {
    const double h = g.spacing();
    if (r <= 0.5 * h) {
        const double a = (9.0 * u[0] - u[1]) / 8.0;  // u(0) to O(h^2)
        const double b = (u[1] - u[0]) / (2.0 * h * h);
        return a + b * r * r;
    }
    const double x = r / h - 0.5;
    const int lo = std::min(static_cast<int>(x), g.n_r - 2);
    const double t = x - lo;
    return u[lo] + t * (u[lo + 1] - u[lo]);
}

// Geometric snapshot schedule: 0, then (snapshots - 1) times ending at t_end.
std::vector<double> snapshot_schedule(const RadialGrid& g, double t_end) {
    std::vector<double> s = {0.0};
    const int k = g.snapshots - 1;
    const double t0 = std::max(t_end / 1000.0, 10.0 * g.dt);
    if (k == 1 || t0 >= t_end) {
        s.push_back(t_end);
        return s;
    }
    for (int i = 0; i < k; ++i)
        s.push_back(t0 * std::pow(t_end / t0, static_cast<double>(i) / (k - 1)));
    s.back() = t_end;
    return s;
}

}  // namespace

double delta_time(const RadialGrid& grid) {
    const double sigma = 3.0 * grid.spacing();
    return sigma * sigma;
}

double field_mass(const RadialGrid& grid, const RadialField& u) {
    validate_grid(grid);
    const double h = grid.spacing();
    double sum = 0.0;
    for (int i = 0; i < grid.n_r; ++i) {
        const double vol =
            (std::pow((i + 1) * h, grid.d) - std::pow(i * h, grid.d)) / grid.d;
        sum += u(grid.center(i)) * vol;
    }
    return sphere_area(grid.d) * sum;
}

EvolutionResult evolve(const RadialPotential& v, double beta, const RadialField& init,
                       const RadialGrid& grid, double t_end) {
    validate_grid(grid);
    if (beta < 0.0) throw std::invalid_argument("evolve: beta < 0");
    if (t_end <= 0.0) throw std::invalid_argument("evolve: t_end <= 0");
    if (v.dimension() != grid.d)
        throw std::invalid_argument("evolve: potential and grid dimensions differ");

    const int n = grid.n_r;
    const double h = grid.spacing();

    // cell volumes and half-flux conductances at interior faces
    std::vector<double> vol(n), face(n + 1), pot(n), u(n);
    for (int i = 0; i <= n; ++i) face[i] = std::pow(i * h, grid.d - 1);
    face[0] = 0.0;  // zero flux through the origin by radial symmetry
    for (int i = 0; i < n; ++i) {
        vol[i] = (std::pow((i + 1) * h, grid.d) - std::pow(i * h, grid.d)) / grid.d;
        pot[i] = beta * v(grid.center(i));
        u[i] = init(grid.center(i));
        if (u[i] < 0.0) throw std::invalid_argument("evolve: negative initial data");
    }
    // L tridiagonal: sub, diag, sup
    std::vector<double> sub(n, 0.0), dia(n, 0.0), sup(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double wm = 0.5 * face[i] / (h * vol[i]);
        const double wp = (i + 1 < n) ? 0.5 * face[i + 1] / (h * vol[i]) : 0.0;
        sub[i] = wm;
        sup[i] = wp;
        dia[i] = -(wm + wp) + pot[i];
    }
    if (grid.boundary == BoundaryCondition::absorbing)
        dia[n - 1] -= face[n] / (h * vol[n - 1]);  // u = 0 at r_max, one-sided

    EvolutionResult out;
    out.grid = grid;
    out.snapshot_times = snapshot_schedule(grid, t_end);
    out.probe_values.resize(grid.probes.size());

    std::vector<double> centers(n);
    for (int i = 0; i < n; ++i) centers[i] = grid.center(i);

    auto record_probes = [&](double t) {
        out.times.push_back(t);
        for (std::size_t p = 0; p < grid.probes.size(); ++p)
            out.probe_values[p].push_back(sample(u, grid, grid.probes[p]));
    };
    record_probes(0.0);
    std::size_t next_snap = 0;
    auto maybe_snapshot = [&](double t) {
        while (next_snap < out.snapshot_times.size() &&
               t >= out.snapshot_times[next_snap] - 1e-12 * std::max(t, 1.0)) {
            out.fields.emplace_back(centers, u);
            out.snapshot_times[next_snap] = t;
            ++next_snap;
        }
    };
    maybe_snapshot(0.0);

    const double growth_rate = beta * v.sup() + 1.0;
    const double max0 = *std::max_element(u.begin(), u.end());

    // Thomas solve of (I - dt/2 L) x = rhs
    std::vector<double> aw(n), bw(n), cw(n), rhs(n), scratch(n);
    double t = 0.0;
    while (t < t_end - 1e-12 * t_end) {
        double dt = std::max(grid.dt, grid.dt_growth * t);
        dt = std::min(dt, t_end - t);
        if (next_snap < out.snapshot_times.size())
            dt = std::min(dt, out.snapshot_times[next_snap] - t);

        const double half = 0.5 * dt;
        for (int i = 0; i < n; ++i) {
            aw[i] = -half * sub[i];
            bw[i] = 1.0 - half * dia[i];
            cw[i] = -half * sup[i];
            rhs[i] = u[i] + half * (sub[i] * (i > 0 ? u[i - 1] : 0.0) +
                                    dia[i] * u[i] +
                                    sup[i] * (i + 1 < n ? u[i + 1] : 0.0));
        }
        // forward elimination
        scratch[0] = cw[0] / bw[0];
        rhs[0] /= bw[0];
        for (int i = 1; i < n; ++i) {
            const double m = bw[i] - aw[i] * scratch[i - 1];
            scratch[i] = cw[i] / m;
            rhs[i] = (rhs[i] - aw[i] * rhs[i - 1]) / m;
        }
        for (int i = n - 2; i >= 0; --i) rhs[i] -= scratch[i] * rhs[i + 1];
        u.swap(rhs);
        t += dt;
        ++out.steps;

        const double mx = *std::max_element(u.begin(), u.end());
        if (!std::isfinite(mx) || mx > 2.0 * max0 * std::exp(growth_rate * t))
            throw std::runtime_error(
                "evolve: instability detected at t = " + std::to_string(t) +
                ", max|u| = " + std::to_string(mx) + " exceeds e^{(beta sup v + 1)t}");

        record_probes(t);
        maybe_snapshot(t);
    }
    if (next_snap < out.snapshot_times.size()) {  // guard against fp drift
        out.fields.emplace_back(centers, u);
        out.snapshot_times.resize(out.fields.size());
        out.snapshot_times.back() = t;
    }
    return out;
}

EvolutionResult partition_function(const RadialPotential& v, double beta,
                                   const RadialGrid& grid, double t_end) {
    validate_grid(grid);
    const RadialField one({0.0, grid.r_max}, {1.0, 1.0});
    return evolve(v, beta, one, grid, t_end);
}

RadialField delta_profile(const RadialGrid& grid, double y) {
    validate_grid(grid);
    if (y < 0.0 || y >= grid.r_max)
        throw std::invalid_argument("delta_profile: y outside the grid");
    const double sigma = 3.0 * grid.spacing();
    std::vector<double> r(grid.n_r), val(grid.n_r);
    double mass = 0.0;
    const double h = grid.spacing();
    for (int i = 0; i < grid.n_r; ++i) {
        r[i] = grid.center(i);
        const double z = (r[i] - y) / sigma;
        val[i] = std::exp(-0.5 * z * z);
        const double vol =
            (std::pow((i + 1) * h, grid.d) - std::pow(i * h, grid.d)) / grid.d;
        mass += val[i] * vol;
    }
    mass *= sphere_area(grid.d);
    for (double& x : val) x /= mass;
    return RadialField(std::move(r), std::move(val));
}

EvolutionResult fundamental_solution(const RadialPotential& v, double beta, double y,
                                     const RadialGrid& grid, double t_end) {
    return evolve(v, beta, delta_profile(grid, y), grid, t_end);
}

double effective_critical_coupling(const RadialPotential& v, const RadialGrid& grid) {
    validate_grid(grid);
    if (v.dimension() != grid.d)
        throw std::invalid_argument(
            "effective_critical_coupling: potential and grid dimensions differ");

    const int n = grid.n_r;
    const double h = grid.spacing();
    std::vector<double> vol(n), face(n + 1), pot(n), off(n - 1);
    for (int i = 0; i <= n; ++i) face[i] = std::pow(i * h, grid.d - 1);
    face[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        vol[i] = (std::pow((i + 1) * h, grid.d) - std::pow(i * h, grid.d)) / grid.d;
        pot[i] = v(grid.center(i));
    }
    // symmetrized off-diagonal: vol[i] sup[i] = vol[i+1] sub[i+1]
    for (int i = 0; i + 1 < n; ++i)
        off[i] = 0.5 * face[i + 1] / (h * std::sqrt(vol[i] * vol[i + 1]));

    // number of eigenvalues > 0 via the inertia of the LDL^T factorization
    const auto positive_count = [&](double beta) {
        int count = 0;
        double prev = 0.0;
        for (int i = 0; i < n; ++i) {
            const double wm = 0.5 * face[i] / (h * vol[i]);
            const double wp = (i + 1 < n) ? 0.5 * face[i + 1] / (h * vol[i])
                                          : face[n] / (h * vol[n - 1]);
            double di = -(wm + wp) + beta * pot[i];
            if (i > 0) di -= off[i - 1] * off[i - 1] / prev;
            if (di == 0.0) di = -1e-300;  // treat an exact zero pivot as negative
            if (di > 0.0) ++count;
            prev = di;
        }
        return count;
    };

    double lo = 0.0, hi = 1.0;
    while (positive_count(hi) == 0) {
        hi *= 2.0;
        if (hi > 1e8)
            throw std::runtime_error(
                "effective_critical_coupling: no bound state found; "
                "is the potential attracting?");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (positive_count(mid) > 0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double lyapunov_exponent(const std::vector<double>& times,
                         const std::vector<double>& series, double t_lo, double t_hi,
                         double* drift) {
    if (times.size() != series.size())
        throw std::invalid_argument("lyapunov_exponent: length mismatch");
    std::vector<double> ts, ys;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_lo || times[i] > t_hi) continue;
        if (series[i] <= 0.0)
            throw std::invalid_argument("lyapunov_exponent: non-positive series value");
        ts.push_back(times[i]);
        ys.push_back(std::log(series[i]));
    }
    if (ts.size() < 2)
        throw std::invalid_argument("lyapunov_exponent: window contains < 2 samples");
    auto slope = [](const std::vector<double>& x, const std::vector<double>& y,
                    std::size_t a, std::size_t b) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        const double m = static_cast<double>(b - a);
        for (std::size_t i = a; i < b; ++i) {
            sx += x[i];
            sy += y[i];
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
        }
        return (m * sxy - sx * sy) / (m * sxx - sx * sx);
    };
    const double full = slope(ts, ys, 0, ts.size());
    if (drift) {
        const std::size_t mid = ts.size() / 2;
        *drift = (mid >= 2 && ts.size() - mid >= 2)
                     ? slope(ts, ys, mid, ts.size()) - slope(ts, ys, 0, mid)
                     : 0.0;
    }
    return full;
}

FitResult asymptotic_fit(const std::vector<double>& times,
                         const std::vector<double>& series, FitModel model) {
    if (times.size() != series.size())
        throw std::invalid_argument("asymptotic_fit: length mismatch");
    if (times.size() < 10)
        throw std::invalid_argument("asymptotic_fit: need >= 10 samples");
    const auto [mn, mx] = std::minmax_element(times.begin(), times.end());
    const bool scale_free = model != FitModel::constant && model != FitModel::exponential;
    if (scale_free && (*mn <= 0.0 || *mx / *mn < 10.0))
        throw std::invalid_argument("asymptotic_fit: need a decade of positive times");
    if (model == FitModel::t_over_ln_t && *mn <= 1.0)
        throw std::invalid_argument("asymptotic_fit: t/ln t model needs t > 1");

    const std::size_t m = times.size();
    FitResult out;
    auto finish = [&](auto&& predict) {
        double ss = 0.0;
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (series[i] == 0.0) continue;
            const double rel = (predict(times[i]) - series[i]) / series[i];
            ss += rel * rel;
            ++cnt;
        }
        out.residual = cnt ? std::sqrt(ss / cnt) : 0.0;
    };

    switch (model) {
        case FitModel::constant: {
            double s = 0.0;
            for (double y : series) s += y;
            const double a = s / m;
            out.params = {a};
            finish([&](double) { return a; });
            break;
        }
        case FitModel::exponential:
        case FitModel::power: {
            // linear least squares for ln y = ln k + q * x with x = t or ln t
            double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (series[i] <= 0.0)
                    throw std::invalid_argument(
                        "asymptotic_fit: log model needs positive data");
                const double x = (model == FitModel::power) ? std::log(times[i])
                                                            : times[i];
                const double y = std::log(series[i]);
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            const double det = m * sxx - sx * sx;
            if (std::fabs(det) < 1e-14 * m * sxx)
                throw std::invalid_argument("asymptotic_fit: degenerate design matrix");
            const double q = (m * sxy - sx * sy) / det;
            const double k = std::exp((sy - q * sx) / m);
            out.params = {k, q};
            if (model == FitModel::power)
                finish([&](double t) { return k * std::pow(t, q); });
            else
                finish([&](double t) { return k * std::exp(q * t); });
            break;
        }
        default: {
            // one-parameter shape y = k g(t)
            auto g = [&](double t) {
                switch (model) {
                    case FitModel::sqrt_t: return std::sqrt(t);
                    case FitModel::linear_t: return t;
                    default: return t / std::log(t);  // t_over_ln_t
                }
            };
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                num += series[i] * g(times[i]);
                den += g(times[i]) * g(times[i]);
            }
            if (den == 0.0)
                throw std::invalid_argument("asymptotic_fit: degenerate design matrix");
            const double k = num / den;
            out.params = {k};
            finish([&](double t) { return k * g(t); });
            break;
        }
    }
    return out;
}

}  // namespace polymer
