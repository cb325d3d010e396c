// Experiment driver: one config (plus flag overrides) in, timeseries.csv and
// report.json out. Exit codes: 0 pass, 1 assertion failure, 2 config error,
// 3 numeric abort.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kgh/kgh.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kRngId = "mt19937_64+normal(0,1), flat-index coefficient order";

json report_header(const kgh::RunConfig& c) {
    json h;
    h["experiment"] = c.experiment;
    h["grid"] = {{"dim", c.dim}, {"n", c.n}, {"length", c.length}};
    h["data"] = {{"family", c.family}, {"amplitude", c.amplitude}, {"sigma", c.sigma}};
    h["hartree"] = {{"gamma", c.hartree.gamma}, {"enabled", c.hartree.enabled}};
    h["evolve"] = {{"dt", c.evolve.dt},
                   {"t_end", c.evolve.t_end},
                   {"record_every", c.evolve.record_every},
                   {"scheme", c.evolve.scheme == kgh::Scheme::strang ? "strang" : "lie"}};
    h["seed"] = c.seed;
    h["rng"] = kRngId;
    return h;
}

// Each experiment fills `rep` and returns whether all its assertions passed.

bool run_evolve(const kgh::RunConfig& c, const kgh::Grid& g, const fs::path& out, json& rep) {
    kgh::State s0 = kgh::build_initial_state(c, g);
    kgh::EvolveConfig ec = c.evolve;
    kgh::Trajectory traj = kgh::evolve(s0, ec);
    kgh::write_csv((out / "timeseries.csv").string(), traj.records, g.dim());
    const double e0 = traj.records.front().energy;
    const double ef = traj.records.back().energy;
    const double drift = e0 != 0.0 ? std::abs(ef - e0) / std::abs(e0) : std::abs(ef);
    rep["energy_initial"] = e0;
    rep["energy_final"] = ef;
    rep["relative_energy_drift"] = drift;
    rep["records"] = traj.records.size();
    return true;
}

bool run_virial(const kgh::RunConfig& c, const kgh::Grid& g, const fs::path& out, json& rep) {
    kgh::State s0 = kgh::build_initial_state(c, g);
    kgh::CutoffSpec cutoff = c.cutoff ? *c.cutoff : kgh::CutoffSpec(0.24 * g.length());
    std::vector<double> dts = {0.04, 0.02, 0.01, 0.005};
    auto vr = kgh::virial_identity_experiment(s0, c.hartree, cutoff, dts);
    rep["dts"] = vr.dts;
    rep["residual_A"] = vr.residual_A;
    rep["residual_J"] = vr.residual_J;
    rep["slope_A"] = vr.slope_A;
    rep["slope_J"] = vr.slope_J;
    rep["shell_terms"] = vr.shell_terms;

    kgh::EvolveConfig ec = c.evolve;
    ec.cutoff = cutoff;
    kgh::Trajectory traj = kgh::evolve(s0, ec);
    kgh::write_csv((out / "timeseries.csv").string(), traj.records, g.dim());
    const bool ok = std::abs(vr.slope_A - 2.0) <= 0.2 && std::abs(vr.slope_J - 2.0) <= 0.2;
    rep["pass"] = ok;
    return ok;
}

bool run_decay(const kgh::RunConfig& c, const kgh::Grid& g, const fs::path& out, json& rep) {
    kgh::State s0 = kgh::build_initial_state(c, g);
    kgh::VectorState v0 = kgh::to_vector(s0);
    std::vector<double> times;
    const double t_max = std::min(c.evolve.t_end, 0.4 * g.length());
    for (double t = 0.25 * t_max; t <= t_max + 1e-9; t += 0.15 * t_max) times.push_back(t);
    auto dr = kgh::decay_experiment(v0, times);
    rep["times"] = dr.times;
    rep["linf"] = dr.linf;
    rep["slope"] = dr.slope;
    rep["expected_slope"] = -0.5 * g.dim();
    std::ofstream csv(out / "timeseries.csv");
    kgh::write_csv_header(csv, g.dim());
    for (std::size_t i = 0; i < dr.times.size(); ++i) {
        kgh::DiagnosticsRecord r;
        r.time = dr.times[i];
        r.linf_norm = dr.linf[i];
        kgh::write_csv_row(csv, r, g.dim());
    }
    const double tol = g.dim() == 1 ? 0.2 : 0.25;
    const bool ok = std::abs(dr.slope + 0.5 * g.dim()) <= tol;
    rep["pass"] = ok;
    return ok;
}

bool run_small_data(const kgh::RunConfig& c, const kgh::Grid& g, const fs::path&, json& rep) {
    kgh::State base = kgh::build_initial_state(c, g);
    std::vector<double> ladder = {0.2, 0.1, 0.05};
    std::vector<double> samples = {0.125 * c.evolve.t_end, 0.25 * c.evolve.t_end,
                                   0.5 * c.evolve.t_end, c.evolve.t_end};
    auto sd = kgh::small_data_experiment(base, c.hartree, ladder, c.evolve.dt, samples,
                                         std::max(c.evolve.record_every, 1));
    rep["gap_slope"] = sd.gap_slope;
    json rungs = json::array();
    bool ok = std::abs(sd.gap_slope - 3.0) <= 0.3;
    for (const auto& r : sd.rungs) {
        rungs.push_back({{"amplitude", r.amplitude},
                         {"defects", r.scatter.defects},
                         {"w_norm", r.scatter.w_norm_total},
                         {"w_gap", r.w_gap},
                         {"converged", r.scatter.converged}});
    }
    ok = ok && sd.rungs.back().scatter.converged;
    rep["rungs"] = rungs;
    rep["pass"] = ok;
    return ok;
}

bool run_profiles(const kgh::RunConfig& c, const kgh::Grid& g, const fs::path&, json& rep) {
    std::vector<double> seps = {2.0, 4.0, 8.0, 16.0};
    auto pr = kgh::profile_sweep_experiment(g, c.hartree, c.amplitude, c.sigma, seps);
    rep["separations"] = pr.separations;
    rep["inner_products"] = pr.inner_products;
    rep["decoupling_residuals"] = pr.decoupling_residuals;
    rep["base_energy"] = pr.base_energy;
    bool ok = true;
    for (std::size_t k = 1; k < pr.decoupling_residuals.size(); ++k)
        ok = ok && pr.decoupling_residuals[k] < pr.decoupling_residuals[k - 1];
    ok = ok && pr.inner_products.back() < 1e-3;
    rep["pass"] = ok;
    return ok;
}

bool run_perturbation(const kgh::RunConfig& c, const kgh::Grid& g, const fs::path&, json& rep) {
    kgh::State base = kgh::build_initial_state(c, g);
    kgh::Field dir = kgh::gaussian_bump(g, 1.0, c.sigma, std::vector<double>(g.dim(), 1.0));
    std::vector<double> eps = {0.1, 0.05, 0.025};
    auto pr = kgh::perturbation_experiment(base, dir, c.hartree, eps, c.evolve.dt, c.evolve.t_end,
                                           std::max(c.evolve.record_every, 1));
    rep["epsilons"] = pr.epsilons;
    rep["w_diffs"] = pr.w_diffs;
    rep["ratios"] = pr.ratios;
    bool ok = true;
    for (double r : pr.ratios) ok = ok && r >= 1.6 && r <= 2.4;
    rep["pass"] = ok;
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Klein-Gordon-Hartree simulation laboratory"};
    std::string config_path, out_dir = ".", experiment_override;
    long seed_override = -1;
    bool quiet = false;
    app.add_option("--config", config_path, "path to the run configuration");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed_override, "override the random seed");
    app.add_option("--experiment", experiment_override, "override the experiment selector");
    app.add_flag("--quiet", quiet, "suppress the run header");
    CLI11_PARSE(app, argc, argv);

    kgh::RunConfig cfg;
    try {
        std::string text;
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw kgh::config_error("cannot open config: " + config_path);
            std::ostringstream ss;
            ss << is.rdbuf();
            text = ss.str();
        }
        cfg = kgh::parse_config(text);
        if (seed_override >= 0) cfg.seed = std::uint64_t(seed_override);
        if (!experiment_override.empty()) cfg.experiment = experiment_override;
        cfg.out_dir = out_dir;
        static const std::set<std::string> known = {"evolve",     "virial-identity",
                                                    "decay-fit",  "small-data",
                                                    "profiles-sweep", "perturbation"};
        if (!known.count(cfg.experiment))
            throw kgh::config_error("unknown experiment: " + cfg.experiment);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        fs::create_directories(cfg.out_dir);
        kgh::Grid g = kgh::make_grid(cfg.dim, cfg.n, cfg.length);
        json rep;
        rep["header"] = report_header(cfg);
        if (!cfg.quiet && !quiet) std::cout << rep["header"].dump(2) << "\n";

        bool ok = false;
        json body;
        const fs::path out(cfg.out_dir);
        if (cfg.experiment == "evolve") ok = run_evolve(cfg, g, out, body);
        else if (cfg.experiment == "virial-identity") ok = run_virial(cfg, g, out, body);
        else if (cfg.experiment == "decay-fit") ok = run_decay(cfg, g, out, body);
        else if (cfg.experiment == "small-data") ok = run_small_data(cfg, g, out, body);
        else if (cfg.experiment == "profiles-sweep") ok = run_profiles(cfg, g, out, body);
        else if (cfg.experiment == "perturbation") ok = run_perturbation(cfg, g, out, body);
        rep["result"] = body;
        rep["pass"] = ok;
        std::ofstream rf(out / "report.json");
        rf << rep.dump(2) << "\n";
        if (!quiet && !cfg.quiet)
            std::cout << (ok ? "PASS" : "FAIL") << " " << cfg.experiment << "\n";
        return ok ? 0 : 1;
    } catch (const kgh::instability_error& e) {
        std::cerr << "numeric abort: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
