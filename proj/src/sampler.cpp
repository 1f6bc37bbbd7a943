#include "polymer/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "polymer/greens.hpp"
#include "polymer/quadrature.hpp"

namespace polymer {
namespace {

// splitmix64 finalizer / stream.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based per-path generator: the state is a pure function of
// (seed, path index), so path j is identical regardless of scheduling.
class PathRng {
  public:
    PathRng(std::uint64_t seed, std::uint64_t path)
        : state_(mix64(seed ^ (path * 0xD1B54A32D192ED03ULL)) ^ seed) {}

    double uniform() {  // in (0, 1)
        state_ += 0x9E3779B97F4A7C15ULL;
        return (static_cast<double>(mix64(state_) >> 11) + 0.5) * 0x1.0p-53;
    }

    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u = uniform(), w = uniform();
        const double rad = std::sqrt(-2.0 * std::log(u));
        spare_ = rad * std::sin(2.0 * kPi * w);
        has_spare_ = true;
        return rad * std::cos(2.0 * kPi * w);
    }

  private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

double norm_of(const double* x, int d) {
    double s = 0.0;
    for (int k = 0; k < d; ++k) s += x[k] * x[k];
    return std::sqrt(s);
}

}  // namespace

PathEnsemble sample_paths(const RadialPotential& v, double beta, double T,
                          int n_steps, long long n_paths, std::uint64_t seed,
                          std::vector<double> checkpoint_fractions) {
    const int d = v.dimension();
    if (beta < 0.0) throw std::invalid_argument("sample_paths: beta < 0");
    if (T <= 0.0 || n_steps < 1 || n_paths < 1)
        throw std::invalid_argument("sample_paths: T, n_steps, n_paths must be positive");
    std::sort(checkpoint_fractions.begin(), checkpoint_fractions.end());
    if (checkpoint_fractions.empty() || checkpoint_fractions.front() <= 0.0 ||
        checkpoint_fractions.back() != 1.0)
        throw std::invalid_argument(
            "sample_paths: checkpoint fractions must lie in (0, 1] and end at 1");
    const double dt = T / n_steps;
    const double diam = 2.0 * v.support_radius();
    if (dt > 0.1 * diam * diam)
        throw std::invalid_argument("sample_paths: dt exceeds 0.1 * (diameter of v)^2");

    PathEnsemble e;
    e.d = d;
    e.T = T;
    e.n_steps = n_steps;
    e.n_paths = n_paths;
    e.seed = seed;
    e.beta = beta;
    e.checkpoint_fractions = checkpoint_fractions;
    // checkpoint step indices (rounded; strictly increasing by construction)
    std::vector<int> check_steps;
    for (double f : checkpoint_fractions)
        check_steps.push_back(std::max(1, static_cast<int>(std::lround(f * n_steps))));
    e.positions.assign(check_steps.size(),
                       std::vector<double>(static_cast<std::size_t>(n_paths) * d));
    e.weights.resize(n_paths);

    const double sq_dt = std::sqrt(dt);
    auto run_block = [&](long long lo, long long hi) {
        std::vector<double> x(d);
        for (long long j = lo; j < hi; ++j) {
            PathRng rng(seed, static_cast<std::uint64_t>(j));
            std::fill(x.begin(), x.end(), 0.0);
            double action = 0.5 * v(0.0);  // trapezoid endpoints carry weight 1/2
            std::size_t next_check = 0;
            for (int i = 1; i <= n_steps; ++i) {
                for (int k = 0; k < d; ++k) x[k] += sq_dt * rng.gaussian();
                const double vr = v(norm_of(x.data(), d));
                action += (i == n_steps) ? 0.5 * vr : vr;
                while (next_check < check_steps.size() && check_steps[next_check] == i) {
                    double* out = e.positions[next_check].data() +
                                  static_cast<std::size_t>(j) * d;
                    std::copy(x.begin(), x.end(), out);
                    ++next_check;
                }
            }
            e.weights[j] = std::exp(beta * dt * action);
        }
    };

    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 16u);
    if (workers > 1 && n_paths > 4096) {
        std::vector<std::future<void>> futs;
        const long long block = (n_paths + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const long long lo = w * block, hi = std::min<long long>(n_paths, lo + block);
            if (lo < hi)
                futs.push_back(std::async(std::launch::async, run_block, lo, hi));
        }
        for (auto& f : futs) f.get();
    } else {
        run_block(0, n_paths);
    }

    double sw = 0.0, sww = 0.0;
    for (double w : e.weights) {
        sw += w;
        sww += w * w;
    }
    e.ess = sw * sw / sww;
    e.low_ess_warning = e.ess < 10.0;
    e.z_hat = sw / n_paths;
    const double var = sww / n_paths - e.z_hat * e.z_hat;
    e.z_se = std::sqrt(std::max(var, 0.0) / n_paths);
    return e;
}

EndpointHistogram endpoint_density(const PathEnsemble& e, int bins, double r_max) {
    if (bins < 1 || r_max <= 0.0)
        throw std::invalid_argument("endpoint_density: bad bins or r_max");
    EndpointHistogram h;
    h.edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b) h.edges[b] = r_max * b / bins;
    h.mass.assign(bins, 0.0);
    double total = 0.0;
    const auto& ends = e.endpoints();
    for (long long j = 0; j < e.n_paths; ++j) {
        const double r = norm_of(ends.data() + static_cast<std::size_t>(j) * e.d, e.d);
        total += e.weights[j];
        const int b = static_cast<int>(r / r_max * bins);
        if (b < bins) h.mass[b] += e.weights[j];
    }
    for (double& m : h.mass) m /= total;
    return h;
}

double histogram_tv_distance(const EndpointHistogram& h,
                             const std::function<double(double)>& radial_density) {
    const int bins = static_cast<int>(h.mass.size());
    std::vector<double> ref(bins);
    double total = 0.0;
    for (int b = 0; b < bins; ++b) {
        ref[b] = integrate(radial_density, h.edges[b], h.edges[b + 1], 1e-10);
        total += ref[b];
    }
    double tv = 0.0;
    for (int b = 0; b < bins; ++b) tv += std::fabs(h.mass[b] - ref[b] / total);
    return 0.5 * tv;
}

std::vector<CovarianceRow> diffusive_rescale_stats(const PathEnsemble& e,
                                                   const std::vector<double>& times) {
    std::vector<CovarianceRow> out;
    const double sw = std::accumulate(e.weights.begin(), e.weights.end(), 0.0);
    for (double t : times) {
        const auto it = std::find_if(
            e.checkpoint_fractions.begin(), e.checkpoint_fractions.end(),
            [&](double f) { return std::fabs(f - t) < 1e-12; });
        if (it == e.checkpoint_fractions.end())
            throw std::invalid_argument(
                "diffusive_rescale_stats: time is not a stored checkpoint");
        const auto& pos = e.positions[it - e.checkpoint_fractions.begin()];
        CovarianceRow row;
        row.t = t;
        row.cov.assign(static_cast<std::size_t>(e.d) * e.d, 0.0);
        std::vector<double> mean(e.d, 0.0);
        for (long long j = 0; j < e.n_paths; ++j)
            for (int k = 0; k < e.d; ++k)
                mean[k] += e.weights[j] * pos[static_cast<std::size_t>(j) * e.d + k];
        for (double& m : mean) m /= sw;
        for (long long j = 0; j < e.n_paths; ++j)
            for (int a = 0; a < e.d; ++a)
                for (int b = 0; b < e.d; ++b)
                    row.cov[a * e.d + b] +=
                        e.weights[j] *
                        (pos[static_cast<std::size_t>(j) * e.d + a] - mean[a]) *
                        (pos[static_cast<std::size_t>(j) * e.d + b] - mean[b]);
        for (double& c : row.cov) c /= sw * e.T;  // rescale x/sqrt(T)
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<double> increment_correlation(const PathEnsemble& e, double t1, double t2) {
    auto index_of = [&](double t) -> std::size_t {
        for (std::size_t c = 0; c < e.checkpoint_fractions.size(); ++c)
            if (std::fabs(e.checkpoint_fractions[c] - t) < 1e-12) return c;
        throw std::invalid_argument("increment_correlation: not a stored checkpoint");
    };
    const auto& p1 = e.positions[index_of(t1)];
    const auto& p2 = e.positions[index_of(t2)];
    const double sw = std::accumulate(e.weights.begin(), e.weights.end(), 0.0);
    std::vector<double> corr(e.d);
    for (int k = 0; k < e.d; ++k) {
        double m1 = 0.0, md = 0.0;
        for (long long j = 0; j < e.n_paths; ++j) {
            const std::size_t i = static_cast<std::size_t>(j) * e.d + k;
            m1 += e.weights[j] * p1[i];
            md += e.weights[j] * (p2[i] - p1[i]);
        }
        m1 /= sw;
        md /= sw;
        double c11 = 0.0, cdd = 0.0, c1d = 0.0;
        for (long long j = 0; j < e.n_paths; ++j) {
            const std::size_t i = static_cast<std::size_t>(j) * e.d + k;
            const double a = p1[i] - m1, b = (p2[i] - p1[i]) - md;
            c11 += e.weights[j] * a * a;
            cdd += e.weights[j] * b * b;
            c1d += e.weights[j] * a * b;
        }
        corr[k] = c1d / std::sqrt(c11 * cdd);
    }
    return corr;
}

PinnedWeights pinned_weights(const PathEnsemble& e, double tol_radius) {
    if (tol_radius <= 0.0)
        throw std::invalid_argument("pinned_weights: tol_radius <= 0");
    PinnedWeights out;
    out.weights.assign(e.weights.size(), 0.0);
    const auto& ends = e.endpoints();
    double sw = 0.0, sww = 0.0;
    for (long long j = 0; j < e.n_paths; ++j) {
        const double r = norm_of(ends.data() + static_cast<std::size_t>(j) * e.d, e.d);
        if (r <= tol_radius) {
            out.weights[j] = e.weights[j];
            sw += e.weights[j];
            sww += e.weights[j] * e.weights[j];
            ++out.surviving;
        }
    }
    if (out.surviving == 0)
        throw std::runtime_error(
            "pinned_weights: no path ends inside the ball; use bridge sampling");
    out.ess = sw * sw / sww;
    return out;
}

double q_transition_check(const RadialPotential& v, double beta, double s, double t,
                          double y, double T, const RadialGrid& grid) {
    if (!(0.0 <= s && s < t && t <= T))
        throw std::invalid_argument("q_transition_check: need 0 <= s < t <= T");
    const auto p = fundamental_solution(v, beta, y, grid, t - s);
    const auto z_at_x = partition_function(v, beta, grid, T - t);
    const auto z_at_y = partition_function(v, beta, grid, T - s);

    // Both the numerator's start point and the denominator use the same delta
    // surrogate at y, so the semigroup identity holds at the discrete level
    // and the defect measures only the scheme's consistency.
    const RadialField init = delta_profile(grid, y);
    const double h = grid.spacing();
    double mass = 0.0, denom = 0.0;
    for (int i = 0; i < grid.n_r; ++i) {
        const double vol =
            (std::pow((i + 1) * h, grid.d) - std::pow(i * h, grid.d)) / grid.d;
        mass += p.final_field().value[i] * z_at_x.final_field().value[i] * vol;
        denom += init.value[i] * z_at_y.final_field().value[i] * vol;
    }
    return std::fabs(mass / denom - 1.0);
}

LimitDensity limiting_process_density(const SpectralSolver& solver, double beta,
                                      double t, double y, const RadialGrid& grid) {
    const auto eig = solver.eigenfunction_data(beta);
    const auto p = fundamental_solution(solver.potential(), beta, y, grid, t);
    const RadialField init = delta_profile(grid, y);

    const double h = grid.spacing();
    double denom = 0.0;
    for (int i = 0; i < grid.n_r; ++i) {
        const double vol =
            (std::pow((i + 1) * h, grid.d) - std::pow(i * h, grid.d)) / grid.d;
        denom += init.value[i] * eig.field(init.r[i]) * vol;
    }
    denom *= sphere_area(grid.d);

    LimitDensity out;
    out.lambda0 = eig.lambda0;
    const double scale = std::exp(-eig.lambda0 * t) / denom;
    std::vector<double> val(grid.n_r);
    double integral = 0.0;
    for (int i = 0; i < grid.n_r; ++i) {
        val[i] = p.final_field().value[i] * eig.field(init.r[i]) * scale;
        const double vol =
            (std::pow((i + 1) * h, grid.d) - std::pow(i * h, grid.d)) / grid.d;
        integral += val[i] * vol;
    }
    out.integral = integral * sphere_area(grid.d);
    out.field = RadialField(init.r, std::move(val));
    return out;
}

}  // namespace polymer
