#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "initial_data.hpp"
#include "integrator.hpp"

namespace kgh {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything one run needs: grid, initial data family, physics, stepping,
// cutoff, experiment selector.
struct RunConfig {
    int dim = 2;
    int n = 32;
    double length = 32.0;

    std::string family = "gaussian-bump"; // gaussian-bump | plane-wave | two-bump | random | file
    double amplitude = 1.0;
    double sigma = 1.0;
    double separation = 8.0;
    std::vector<int> modes;
    std::string data_file;
    int kmax = 4;

    HartreeParams hartree{1.0, true}; // defaults match the d=2 toy grid
    EvolveConfig evolve;

    std::optional<CutoffSpec> cutoff;

    std::string experiment = "evolve";
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    bool quiet = false;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw config_error("config: key '" + key + "': not a number: " + v);
    }
    if (pos != v.size()) throw config_error("config: key '" + key + "': trailing junk: " + v);
    return x;
}

inline long parse_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long x = 0;
    try {
        x = std::stol(v, &pos);
    } catch (const std::exception&) {
        throw config_error("config: key '" + key + "': not an integer: " + v);
    }
    if (pos != v.size()) throw config_error("config: key '" + key + "': trailing junk: " + v);
    return x;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw config_error("config: key '" + key + "': not a boolean: " + v);
}

template <class T>
inline std::vector<T> parse_list(const std::string& key, const std::string& v,
                                 T (*one)(const std::string&, const std::string&)) {
    std::vector<T> out;
    std::istringstream is(v);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(one(key, tok));
    }
    return out;
}

} // namespace detail

// INI-style: [section] headers, key = value lines, '#' comments. Unknown and
// duplicate keys are hard errors.
inline RunConfig parse_config(const std::string& text) {
    using namespace detail;
    RunConfig c;
    std::set<std::string> seen;
    std::vector<double> cutoff_center;
    double cutoff_radius = 0.0;
    bool have_cutoff = false;

    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("config: line " + std::to_string(lineno) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = section + "." + trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) throw config_error("config: duplicate key '" + key + "'");

        if (key == "grid.dim") c.dim = int(parse_int(key, val));
        else if (key == "grid.n") c.n = int(parse_int(key, val));
        else if (key == "grid.length") c.length = parse_double(key, val);
        else if (key == "data.family") c.family = val;
        else if (key == "data.amplitude") c.amplitude = parse_double(key, val);
        else if (key == "data.sigma") c.sigma = parse_double(key, val);
        else if (key == "data.separation") c.separation = parse_double(key, val);
        else if (key == "data.modes") {
            auto longs = parse_list<long>(key, val, parse_int);
            c.modes.assign(longs.begin(), longs.end());
        }
        else if (key == "data.file") c.data_file = val;
        else if (key == "data.kmax") c.kmax = int(parse_int(key, val));
        else if (key == "hartree.gamma") c.hartree.gamma = parse_double(key, val);
        else if (key == "hartree.enabled") c.hartree.enabled = parse_bool(key, val);
        else if (key == "evolve.dt") c.evolve.dt = parse_double(key, val);
        else if (key == "evolve.t_end") c.evolve.t_end = parse_double(key, val);
        else if (key == "evolve.record_every") c.evolve.record_every = int(parse_int(key, val));
        else if (key == "evolve.scheme") {
            if (val == "strang") c.evolve.scheme = Scheme::strang;
            else if (val == "lie") c.evolve.scheme = Scheme::lie;
            else throw config_error("config: key 'evolve.scheme': expected strang|lie, got " + val);
        }
        else if (key == "evolve.store_states") c.evolve.store_states = parse_bool(key, val);
        else if (key == "cutoff.radius") { cutoff_radius = parse_double(key, val); have_cutoff = true; }
        else if (key == "cutoff.center") cutoff_center = parse_list<double>(key, val, parse_double);
        else if (key == "run.experiment") c.experiment = val;
        else if (key == "run.out") c.out_dir = val;
        else if (key == "run.seed") c.seed = std::uint64_t(parse_int(key, val));
        else if (key == "run.quiet") c.quiet = parse_bool(key, val);
        else throw config_error("config: unknown key '" + key + "'");
    }

    // constraint validation with actionable messages
    Grid g;
    try {
        g = make_grid(c.dim, c.n, c.length);
    } catch (const std::exception& e) {
        throw config_error(std::string("config: [grid] invalid: ") + e.what());
    }
    if (c.hartree.enabled && !(c.hartree.gamma > 0.0 && c.hartree.gamma < c.dim))
        throw config_error("config: key 'hartree.gamma' must satisfy 0 < gamma < dim (gamma=" +
                           std::to_string(c.hartree.gamma) + ", dim=" + std::to_string(c.dim) + ")");
    try {
        check_evolve(c.evolve);
    } catch (const std::exception& e) {
        throw config_error(std::string("config: [evolve] invalid: ") + e.what());
    }
    if (have_cutoff) {
        CutoffSpec spec(cutoff_radius, cutoff_center);
        try {
            check_cutoff(spec, g);
        } catch (const std::exception& e) {
            throw config_error(std::string("config: [cutoff] invalid: ") + e.what());
        }
        c.cutoff = spec;
        c.evolve.cutoff = spec;
    }
    static const std::set<std::string> families = {"gaussian-bump", "plane-wave", "two-bump",
                                                   "random", "file"};
    if (!families.count(c.family))
        throw config_error("config: key 'data.family': unknown family '" + c.family + "'");
    static const std::set<std::string> experiments = {"evolve",     "virial-identity", "decay-fit",
                                                      "small-data", "profiles-sweep",  "perturbation"};
    if (!experiments.count(c.experiment))
        throw config_error("config: key 'run.experiment': unknown experiment '" + c.experiment + "'");
    c.evolve.params = c.hartree;
    return c;
}

// Builds the initial state named by the config (forward declaration of the
// io reader is avoided: 'file' family is resolved by the CLI driver).
inline State build_initial_state(const RunConfig& c, const Grid& g) {
    if (c.family == "gaussian-bump") return gaussian_state(g, c.amplitude, c.sigma);
    if (c.family == "plane-wave") {
        std::vector<int> m = c.modes;
        if (m.empty()) m.assign(g.dim(), 1);
        return plane_wave_state(g, m, c.amplitude);
    }
    if (c.family == "two-bump")
        return State(two_bump(g, c.amplitude, c.sigma, c.separation), zero_field(g));
    if (c.family == "random") return random_state(g, c.seed, c.kmax, c.amplitude);
    throw config_error("build_initial_state: family '" + c.family + "' needs a file path");
}

} // namespace kgh
