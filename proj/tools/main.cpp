// Command-line laboratory for the continuous homopolymer model: spectral
// critical coupling, scaling-law scans, partition-function asymptotics,
// Monte Carlo path sampling, and the closed-form critical kernel checks.
//
// Exit codes: 0 success, 1 check failure, 2 usage/config error, 3 numerical
// failure.  Every command is a pure function of (config, seed): reruns write
// byte-identical outputs.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polymer/birman_schwinger.hpp"
#include "polymer/critical.hpp"
#include "polymer/pde.hpp"
#include "polymer/potential.hpp"
#include "polymer/sampler.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace polymer;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BetaGrid {
    double lo = 0.0, hi = 0.0;
    int count = 0;

    // log-spaced values, suited to decade scans
    std::vector<double> values() const {
        std::vector<double> v;
        for (int i = 0; i < count; ++i) {
            const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            v.push_back(lo * std::pow(hi / lo, f));
        }
        return v;
    }
};

struct Config {
    std::string shape = "well";
    double radius = 1.0;
    double height = 1.0;
    int samples = 512;
    int d = 3;
    std::optional<double> beta;
    std::optional<BetaGrid> beta_grid;
    std::optional<double> T;
    std::optional<double> r_max;
    std::optional<int> n_r;
    double dt = 1e-3;
    double dt_growth = 0.01;
    std::optional<int> n_steps;
    long long paths = 100000;
    std::uint64_t seed = 1;
    std::string out = ".";
    double pinned_radius = 0.0;  // 0 disables pinned mode
    int spectral_nodes = 256;
    bool refine = false;
};

BetaGrid parse_beta_grid(const std::string& text) {
    BetaGrid g;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.count) || c1 != ':' || c2 != ':' ||
        !in.eof() || g.lo <= 0.0 || g.hi <= g.lo || g.count < 2)
        throw UsageError("beta_grid: expected a:b:n with 0 < a < b, n >= 2, got '" +
                         text + "'");
    return g;
}

void apply_key(Config& cfg, const std::string& key, const std::string& value) {
    try {
        if (key == "shape") {
            if (value != "well" && value != "bump")
                throw UsageError("shape must be well or bump");
            cfg.shape = value;
        } else if (key == "radius") cfg.radius = std::stod(value);
        else if (key == "height") cfg.height = std::stod(value);
        else if (key == "samples") cfg.samples = std::stoi(value);
        else if (key == "d") cfg.d = std::stoi(value);
        else if (key == "beta") cfg.beta = std::stod(value);
        else if (key == "beta_grid") cfg.beta_grid = parse_beta_grid(value);
        else if (key == "T" || key == "t_end") cfg.T = std::stod(value);
        else if (key == "r_max") cfg.r_max = std::stod(value);
        else if (key == "n_r") cfg.n_r = std::stoi(value);
        else if (key == "dt") cfg.dt = std::stod(value);
        else if (key == "dt_growth") cfg.dt_growth = std::stod(value);
        else if (key == "n_steps") cfg.n_steps = std::stoi(value);
        else if (key == "paths") cfg.paths = std::stoll(value);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "out") cfg.out = value;
        else if (key == "pinned_radius") cfg.pinned_radius = std::stod(value);
        else if (key == "spectral_nodes") cfg.spectral_nodes = std::stoi(value);
        else if (key == "refine") cfg.refine = (value == "1" || value == "true");
        else throw UsageError("unknown config key '" + key + "'");
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("config field '" + key + "': cannot parse value '" + value +
                         "'");
    }
}

void load_config_file(Config& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) +
                             ": expected key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void validate(const Config& cfg) {
    if (cfg.d < 1 || cfg.d > 5) throw UsageError("d must be in {1,...,5}");
    if (cfg.radius <= 0.0) throw UsageError("radius must be > 0");
    if (cfg.height <= 0.0) throw UsageError("height must be > 0");
    if (cfg.samples < 2) throw UsageError("samples must be >= 2");
    if (cfg.beta && *cfg.beta < 0.0) throw UsageError("beta must be >= 0");
    if (cfg.T && *cfg.T <= 0.0) throw UsageError("T must be > 0");
    if (cfg.dt <= 0.0) throw UsageError("dt must be > 0");
    if (cfg.dt_growth < 0.0) throw UsageError("dt_growth must be >= 0");
    if (cfg.paths < 1) throw UsageError("paths must be >= 1");
    if (cfg.n_r && *cfg.n_r < 10) throw UsageError("n_r must be >= 10");
    if (cfg.r_max && *cfg.r_max <= 0.0) throw UsageError("r_max must be > 0");
    if (cfg.n_steps && *cfg.n_steps < 1) throw UsageError("n_steps must be >= 1");
    if (cfg.pinned_radius < 0.0) throw UsageError("pinned_radius must be >= 0");
    if (cfg.spectral_nodes < 8) throw UsageError("spectral_nodes must be >= 8");
}

RadialPotential make_potential(const Config& cfg) {
    return cfg.shape == "well"
               ? RadialPotential::well(cfg.d, cfg.radius, cfg.height)
               : RadialPotential::bump(cfg.d, cfg.radius, cfg.height, cfg.samples);
}

std::string param_header(const Config& cfg, const std::string& command) {
    std::ostringstream s;
    s << std::setprecision(12) << "# command=" << command << " shape=" << cfg.shape
      << " radius=" << cfg.radius << " height=" << cfg.height << " d=" << cfg.d;
    if (cfg.beta) s << " beta=" << *cfg.beta;
    if (cfg.beta_grid)
        s << " beta_grid=" << cfg.beta_grid->lo << ":" << cfg.beta_grid->hi << ":"
          << cfg.beta_grid->count;
    if (cfg.T) s << " T=" << *cfg.T;
    if (cfg.r_max) s << " r_max=" << *cfg.r_max;
    if (cfg.n_r) s << " n_r=" << *cfg.n_r;
    s << " dt=" << cfg.dt << " dt_growth=" << cfg.dt_growth;
    if (cfg.n_steps) s << " n_steps=" << *cfg.n_steps;
    s << " paths=" << cfg.paths << " seed=" << cfg.seed
      << " spectral_nodes=" << cfg.spectral_nodes;
    return s.str();
}

json params_json(const Config& cfg, const std::string& command) {
    json p;
    p["command"] = command;
    p["shape"] = cfg.shape;
    p["radius"] = cfg.radius;
    p["height"] = cfg.height;
    p["d"] = cfg.d;
    if (cfg.beta) p["beta"] = *cfg.beta;
    if (cfg.T) p["T"] = *cfg.T;
    p["paths"] = cfg.paths;
    p["seed"] = cfg.seed;
    p["spectral_nodes"] = cfg.spectral_nodes;
    return p;
}

void write_text(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_json(const fs::path& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

json field_json(const RadialField& f, std::size_t stride = 1) {
    json r = json::array(), value = json::array();
    for (std::size_t i = 0; i < f.r.size(); i += stride) {
        r.push_back(f.r[i]);
        value.push_back(f.value[i]);
    }
    return json{{"r", r}, {"value", value}};
}

RadialGrid make_grid(const Config& cfg, double t_end) {
    RadialGrid g;
    g.d = cfg.d;
    g.r_max = cfg.r_max ? *cfg.r_max
                        : std::max(12.0, 4.0 * std::sqrt(t_end) + cfg.radius + 4.0);
    g.n_r = cfg.n_r ? *cfg.n_r : static_cast<int>(g.r_max * 40.0);
    g.dt = cfg.dt;
    g.dt_growth = cfg.dt_growth;
    return g;
}

// ---------------------------------------------------------------------------

int cmd_critical_beta(const Config& cfg) {
    const fs::path out = fs::path(cfg.out) / "spectral.json";
    if (cfg.d < 3) {
        std::cout << "beta_cr = 0 for d = " << cfg.d
                  << ": arbitrarily weak attraction already binds in low "
                     "dimension, so the critical coupling vanishes\n";
        json j;
        j["params"] = params_json(cfg, "critical-beta");
        j["d"] = cfg.d;
        j["beta_cr"] = 0.0;
        j["note"] = "critical coupling vanishes for d = 1, 2";
        write_json(out, j);
        return 0;
    }
    const SpectralSolver sol(make_potential(cfg), cfg.spectral_nodes);
    const double beta_cr = sol.critical_beta();
    const double err = std::fabs(beta_cr - sol.critical_beta_raw());
    const ScalingConstants c = sol.constants();

    json j;
    j["params"] = params_json(cfg, "critical-beta");
    j["d"] = cfg.d;
    j["beta_cr"] = beta_cr;
    j["beta_cr_error_estimate"] = err;
    json table = json::array();
    const auto betas = cfg.beta_grid
                           ? cfg.beta_grid->values()
                           : BetaGrid{1.2 * beta_cr, 2.4 * beta_cr, 8}.values();
    for (double b : betas) table.push_back({{"beta", b}, {"lambda0", sol.lambda0(b)}});
    j["lambda0_table"] = table;
    j["psi_grid"] = field_json(sol.ground_state(), 4);
    j["gamma"] = c.gamma;
    j["c_d"] = c.c_d;
    j["kappa"] = c.kappa;
    write_json(out, j);

    std::cout << std::setprecision(10) << "beta_cr = " << beta_cr << " +/- " << err
              << "  (d = " << cfg.d << ", gamma = " << c.gamma << ", c_d = " << c.c_d
              << ")\n";
    return 0;
}

int cmd_scaling_scan(const Config& cfg) {
    if (cfg.d < 3) throw UsageError("scaling-scan requires d >= 3");
    if (!cfg.beta_grid) throw UsageError("scaling-scan requires beta_grid=a:b:n");
    const SpectralSolver sol(make_potential(cfg), cfg.spectral_nodes);
    // the raw (non-extrapolated) critical coupling keeps beta - beta_cr
    // consistent with lambda0 at the same discretization
    const double beta_cr = sol.critical_beta_raw();

    std::vector<double> dbeta, lam;
    std::ostringstream csv;
    csv << std::setprecision(12) << param_header(cfg, "scaling-scan")
        << " beta_cr_raw=" << beta_cr << "\n";
    csv << "beta,beta_minus_beta_cr,lambda0\n";
    for (double b : cfg.beta_grid->values()) {
        if (b <= beta_cr)
            throw UsageError("beta_grid must lie above beta_cr = " +
                             std::to_string(beta_cr));
        const double l = sol.lambda0(b);
        dbeta.push_back(b - beta_cr);
        lam.push_back(l);
        csv << b << "," << b - beta_cr << "," << l << "\n";
    }

    std::ostringstream summary;
    summary << std::setprecision(10);
    if (cfg.d == 4) {
        double lo = 1e300, hi = 0.0;
        for (std::size_t i = 0; i < dbeta.size(); ++i) {
            const double k = lam[i] * std::log(1.0 / dbeta[i]) / dbeta[i];
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
        summary << "# model lambda0 ~ k (beta-beta_cr)/ln(1/(beta-beta_cr))"
                << "\n# k_range=" << lo << ".." << hi
                << " variation=" << (hi - lo) / lo << "\n";
    } else {
        const auto fit = asymptotic_fit(dbeta, lam, FitModel::power);
        const double c_d = sol.constants().c_d;
        summary << "# fit lambda0 = k (beta-beta_cr)^p: p=" << fit.params[1]
                << " k=" << fit.params[0] << " rms_misfit=" << fit.residual
                << "\n# c_d=" << c_d << " k_over_c_d=" << fit.params[0] / c_d << "\n";
    }
    csv << summary.str();
    write_text(fs::path(cfg.out) / "scaling.csv", csv.str());
    std::cout << summary.str();
    return 0;
}

int cmd_partition(const Config& cfg) {
    if (!cfg.beta) throw UsageError("partition requires beta");
    const double t_end = cfg.T.value_or(200.0);
    const auto v = make_potential(cfg);
    const SpectralSolver sol(v, cfg.spectral_nodes);
    const double beta_cr = cfg.d >= 3 ? sol.critical_beta() : 0.0;
    const double rel = beta_cr > 0.0 ? (*cfg.beta - beta_cr) / beta_cr
                                     : (*cfg.beta > 0.0 ? 1.0 : -1.0);
    const std::string phase =
        std::fabs(rel) < 1e-6 ? "critical" : (rel > 0.0 ? "globular" : "diffusive");

    const RadialGrid grid = make_grid(cfg, t_end);
    const auto res = partition_function(v, *cfg.beta, grid, t_end);

    std::ostringstream csv;
    csv << std::setprecision(12) << param_header(cfg, "partition")
        << " grid_r_max=" << grid.r_max << " grid_n_r=" << grid.n_r << "\n";
    csv << "t,Z_origin\n";
    // thin the per-step series to ~2000 rows
    const std::size_t stride = std::max<std::size_t>(1, res.times.size() / 2000);
    for (std::size_t i = 0; i < res.times.size(); i += stride)
        csv << res.times[i] << "," << res.probe_values[0][i] << "\n";
    write_text(fs::path(cfg.out) / "partition.csv", csv.str());

    json j;
    j["params"] = params_json(cfg, "partition");
    j["phase"] = phase;
    j["beta_cr"] = beta_cr;
    j["t_end"] = t_end;
    j["Z_final"] = res.probe_values[0].back();
    if (phase == "globular") {
        double drift = 0.0;
        const double lam = lyapunov_exponent(res.times, res.probe_values[0],
                                             0.5 * t_end, t_end, &drift);
        // prefactor k with Z ~ k e^{lambda t} on the fitted window
        std::vector<double> ts, zs;
        for (std::size_t i = 0; i < res.times.size(); ++i)
            if (res.times[i] >= 0.5 * t_end) {
                ts.push_back(res.times[i]);
                zs.push_back(res.probe_values[0][i]);
            }
        const auto fit = asymptotic_fit(ts, zs, FitModel::exponential);
        j["lambda0_hat"] = lam;
        j["lambda0_drift"] = drift;
        j["k_hat"] = fit.params[0];
        std::cout << std::setprecision(10) << "phase=globular lambda0_hat=" << lam
                  << " k_hat=" << fit.params[0] << "\n";
    } else if (phase == "diffusive") {
        double limit = 1.0;
        if (cfg.d >= 3) limit = 1.0 + sol.phi_beta(*cfg.beta)(0.0);
        j["limit_1_plus_phi0"] = limit;
        j["Z_minus_limit"] = res.probe_values[0].back() - limit;
        std::cout << std::setprecision(10) << "phase=diffusive limit=" << limit
                  << " Z(t_end)=" << res.probe_values[0].back() << "\n";
    } else {
        std::vector<double> ts, zs;
        for (std::size_t i = 0; i < res.times.size(); ++i)
            if (res.times[i] >= std::max(10.0, 0.01 * t_end) &&
                res.probe_values[0][i] > 1.0) {
                ts.push_back(res.times[i]);
                zs.push_back(res.probe_values[0][i] - 1.0);
            }
        const auto fit = asymptotic_fit(ts, zs, FitModel::power);
        j["growth_exponent_of_Z_minus_1"] = fit.params[1];
        j["growth_prefactor"] = fit.params[0];
        std::cout << std::setprecision(10)
                  << "phase=critical exponent=" << fit.params[1]
                  << " prefactor=" << fit.params[0] << "\n";
    }
    write_json(fs::path(cfg.out) / "partition_summary.json", j);
    return 0;
}

int cmd_simulate(const Config& cfg) {
    if (!cfg.beta) throw UsageError("simulate requires beta");
    const double T = cfg.T.value_or(10.0);
    const auto v = make_potential(cfg);
    const int n_steps = cfg.n_steps.value_or(
        std::max(100, static_cast<int>(std::ceil(T / 0.04))));
    const auto e = sample_paths(v, *cfg.beta, T, n_steps, cfg.paths, cfg.seed);

    const double hist_rmax = std::ceil(4.0 * std::sqrt(T) + v.support_radius());
    const auto hist = endpoint_density(e, 40, hist_rmax);

    json j;
    j["params"] = params_json(cfg, "simulate");
    j["params"]["n_steps"] = n_steps;
    j["Z_hat"] = e.z_hat;
    j["Z_se"] = e.z_se;
    j["ess"] = e.ess;
    j["low_ess_warning"] = e.low_ess_warning;
    j["histogram"] = {{"edges", hist.edges}, {"mass", hist.mass}};
    if (cfg.pinned_radius > 0.0) {
        const auto pw = pinned_weights(e, cfg.pinned_radius);
        j["pinned"] = {{"radius", cfg.pinned_radius},
                       {"surviving", pw.surviving},
                       {"ess", pw.ess}};
    }
    write_json(fs::path(cfg.out) / "simulate_summary.json", j);

    const auto cov = diffusive_rescale_stats(e, e.checkpoint_fractions);
    std::ostringstream csv;
    csv << std::setprecision(12) << param_header(cfg, "simulate") << "\n";
    csv << "t_fraction";
    for (int a = 0; a < e.d; ++a)
        for (int b = 0; b < e.d; ++b) csv << ",cov_" << a << b;
    csv << "\n";
    for (const auto& row : cov) {
        csv << row.t;
        for (double c : row.cov) csv << "," << c;
        csv << "\n";
    }
    write_text(fs::path(cfg.out) / "covariance.csv", csv.str());

    std::cout << std::setprecision(10) << "Z_hat=" << e.z_hat << " +/- " << e.z_se
              << " ess=" << e.ess
              << (e.low_ess_warning ? " (LOW ESS WARNING)" : "") << "\n";
    return 0;
}

int cmd_critical_kernel(const Config& cfg) {
    CriticalKernel kernel;
    auto to_json = [](const DefectCheck& c) {
        json p;
        for (const auto& [k, v] : c.params) p[k] = v;
        return json{{"check", c.check},
                    {"params", p},
                    {"defect", c.defect},
                    {"tolerance", c.tolerance},
                    {"pass", c.pass}};
    };

    auto checks = critical_defect_suite(kernel);
    // the kernel vanishes at the terminal point by definition
    DefectCheck origin;
    origin.check = "target_origin_zero";
    origin.params = {{"s", 0.2}, {"t", 0.7}, {"y", 1.0}};
    origin.defect = kernel.transition(0.2, 0.7, 1.0, 0.0, 1.0);
    origin.tolerance = 0.0;
    origin.pass = origin.defect == 0.0;
    checks.push_back(origin);

    json j;
    j["params"] = params_json(cfg, "critical-kernel");
    json arr = json::array();
    bool all_pass = true;
    for (const auto& c : checks) {
        arr.push_back(to_json(c));
        all_pass = all_pass && c.pass;
    }
    j["checks"] = arr;

    if (cfg.refine) {
        CriticalKernel fine;
        fine.theta_nodes = 2 * kernel.theta_nodes;
        fine.phi_nodes = 2 * kernel.phi_nodes;
        const auto refined = critical_defect_suite(fine);
        json ratios = json::array();
        for (std::size_t i = 0; i < refined.size(); ++i) {
            const double ratio = refined[i].defect > 0.0
                                     ? checks[i].defect / refined[i].defect
                                     : 0.0;
            ratios.push_back({{"check", checks[i].check},
                              {"coarse", checks[i].defect},
                              {"fine", refined[i].defect},
                              {"ratio", ratio}});
            all_pass = all_pass && refined[i].pass;
        }
        j["refinement"] = ratios;
    }
    j["all_pass"] = all_pass;
    write_json(fs::path(cfg.out) / "critical_kernel.json", j);

    for (const auto& c : checks)
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.check
                  << " defect=" << std::setprecision(4) << c.defect
                  << " tol=" << c.tolerance << "\n";
    return all_pass ? 0 : 1;
}

int cmd_report(const Config& cfg) {
    const fs::path dir(cfg.out);
    if (!fs::is_directory(dir)) throw UsageError("report: no such directory " + cfg.out);
    bool found = false, all_pass = true;
    for (const char* name : {"spectral.json", "partition_summary.json",
                             "simulate_summary.json", "critical_kernel.json"}) {
        const fs::path p = dir / name;
        if (!fs::exists(p)) continue;
        found = true;
        std::ifstream in(p);
        json j = json::parse(in);
        std::cout << "== " << name << " ==\n";
        if (j.contains("beta_cr")) std::cout << "  beta_cr: " << j["beta_cr"] << "\n";
        if (j.contains("phase")) std::cout << "  phase: " << j["phase"] << "\n";
        if (j.contains("Z_hat"))
            std::cout << "  Z_hat: " << j["Z_hat"] << " +/- " << j["Z_se"]
                      << " ess: " << j["ess"] << "\n";
        if (j.contains("lambda0_hat")) std::cout << "  lambda0_hat: " << j["lambda0_hat"] << "\n";
        if (j.contains("all_pass")) {
            std::cout << "  all_pass: " << j["all_pass"] << "\n";
            all_pass = all_pass && j["all_pass"].get<bool>();
        }
        if (j.contains("low_ess_warning") && j["low_ess_warning"].get<bool>())
            std::cout << "  warning: low effective sample size\n";
    }
    if (!found) std::cout << "no summaries found in " << cfg.out << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the continuous homopolymer model"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::optional<int> d;
    std::optional<double> beta, T;
    std::optional<std::string> beta_grid;
    std::optional<long long> paths;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    bool refine = false;

    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--d", d, "dimension (1..5)");
    app.add_option("--beta", beta, "coupling strength");
    app.add_option("--beta-grid", beta_grid, "log-spaced grid a:b:n");
    app.add_option("--T", T, "time horizon");
    app.add_option("--paths", paths, "Monte Carlo path count");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--out", out, "output directory");
    app.add_flag("--refine", refine, "double quadrature resolution in checks");

    for (const char* name : {"critical-beta", "scaling-scan", "partition", "simulate",
                             "critical-kernel", "report"})
        app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Config cfg;
    try {
        if (config_path) load_config_file(cfg, *config_path);
        if (d) cfg.d = *d;
        if (beta) cfg.beta = *beta;
        if (beta_grid) cfg.beta_grid = parse_beta_grid(*beta_grid);
        if (T) cfg.T = *T;
        if (paths) cfg.paths = *paths;
        if (seed) cfg.seed = *seed;
        if (out) cfg.out = *out;
        if (refine) cfg.refine = true;
        validate(cfg);
    } catch (const UsageError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (cmd == "critical-beta") return cmd_critical_beta(cfg);
        if (cmd == "scaling-scan") return cmd_scaling_scan(cfg);
        if (cmd == "partition") return cmd_partition(cfg);
        if (cmd == "simulate") return cmd_simulate(cfg);
        if (cmd == "critical-kernel") return cmd_critical_kernel(cfg);
        if (cmd == "report") return cmd_report(cfg);
    } catch (const UsageError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
