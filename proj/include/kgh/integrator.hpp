#pragma once

#include "besov.hpp"
#include "diagnostics.hpp"

namespace kgh {

enum class Scheme { strang, lie };

struct EvolveConfig {
    double dt = 0.01;
    double t_end = 1.0;
    HartreeParams params;
    int record_every = 1;             // in steps; 0 disables intermediate records
    Scheme scheme = Scheme::strang;
    bool store_states = false;        // keep full State at each record time
    std::optional<CutoffSpec> cutoff; // enables tail/virial diagnostics
    bool full_diagnostics = true;     // scalar functionals at record times
    double max_dt = 0.5;
};

// Thrown when the discrete energy drifts past the instability guard.
struct instability_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Trajectory {
    std::vector<DiagnosticsRecord> records;
    std::vector<State> states; // populated iff store_states

    const State& state_at(double t, double tol = 1e-9) const {
        for (const auto& s : states)
            if (std::abs(s.time - t) <= tol) return s;
        throw std::invalid_argument("Trajectory: no stored state at requested time");
    }
};

inline void check_evolve(const EvolveConfig& c) {
    if (!(c.dt > 0.0 && c.dt <= c.max_dt))
        throw std::invalid_argument("EvolveConfig: dt must lie in (0, max_dt]");
    if (!(c.t_end > 0.0)) throw std::invalid_argument("EvolveConfig: t_end must be positive");
    if (c.record_every < 0) throw std::invalid_argument("EvolveConfig: record_every must be >= 0");
}

namespace detail {

// Momentum kick ut <- ut - dt f(u).
inline void kick(State& s, double dt, const HartreeParams& p) {
    if (!p.enabled) return;
    Field f = apply_f(s.u, p);
    for (std::size_t i = 0; i < s.ut.size(); ++i)
        s.ut[i] = std::complex<double>(s.ut[i].real() - dt * f[i].real(), 0.0);
}

} // namespace detail

// One step of the splitting scheme; the linear drift is the exact free flow.
inline State step(const State& s, double dt, const HartreeParams& p,
                  Scheme scheme = Scheme::strang) {
    State out = s;
    if (scheme == Scheme::strang) {
        detail::kick(out, 0.5 * dt, p);
        out = free_flow(out, dt);
        detail::kick(out, 0.5 * dt, p);
    } else {
        detail::kick(out, dt, p);
        out = free_flow(out, dt);
    }
    return out;
}

inline DiagnosticsRecord make_record(const State& s, const EvolveConfig& c,
                                     double w_increment = 0.0) {
    DiagnosticsRecord r;
    r.time = s.time;
    r.linf_norm = max_abs(s.u);
    r.w_norm_increment = w_increment;
    if (!c.full_diagnostics) return r;
    r.energy = energy(s, c.params);
    r.momentum = momentum(s);
    if (c.cutoff) {
        r.tail_energy = tail_energy(s, *c.cutoff, c.params);
        r.virial_I = virial_I(s, *c.cutoff);
        r.virial_J = virial_J(s, *c.cutoff);
        r.action_A = r.virial_I + 0.5 * r.virial_J;
        r.dA_dt_analytic = dA_dt_analytic(s, *c.cutoff, c.params);
        r.interaction_weighted = interaction_weighted(s.u);
    }
    return r;
}

// Fixed-step evolution with diagnostics at records. The optional observer is
// called at every record time (including t=0 and t_end) with the current
// state, so long runs can compute windowed functionals without storing the
// whole trajectory. Aborts via instability_error if the discrete energy grows
// by more than 10% of its initial value.
inline Trajectory evolve(const State& initial, const EvolveConfig& config,
                         const std::function<void(const State&)>& observer = {}) {
    check_evolve(config);
    check_hartree(config.params, initial.grid());
    if (config.cutoff) check_cutoff(*config.cutoff, initial.grid());

    const long nsteps = std::lround(config.t_end / config.dt);
    if (nsteps < 1 || std::abs(nsteps * config.dt - config.t_end) > 1e-9 * config.t_end)
        throw std::invalid_argument("EvolveConfig: t_end must be an integer multiple of dt");

    const int d = initial.grid().dim();
    const double q = d >= 2 ? strichartz_exponent(d) : 2.0;

    Trajectory traj;
    State s = initial;
    const double e0 = energy(s, config.params);
    double prev_integrand = std::pow(besov_norm(s.u, 0.5, q), q);
    double prev_time = s.time;

    auto record = [&](const State& st) {
        const double integrand = std::pow(besov_norm(st.u, 0.5, q), q);
        double winc = 0.0;
        if (st.time > prev_time)
            winc = std::pow(0.5 * (integrand + prev_integrand) * (st.time - prev_time), 1.0 / q);
        prev_integrand = integrand;
        prev_time = st.time;
        traj.records.push_back(make_record(st, config, winc));
        if (config.store_states) traj.states.push_back(st);
        if (observer) observer(st);
    };

    record(s);
    for (long k = 1; k <= nsteps; ++k) {
        s = step(s, config.dt, config.params, config.scheme);
        s.time = initial.time + k * config.dt; // avoid accumulated roundoff
        const double e = energy(s, config.params);
        if (!std::isfinite(e) || e > 1.1 * std::max(e0, 1e-300))
            throw instability_error("evolve: energy grew past the 10% guard at t=" +
                                    std::to_string(s.time));
        const bool at_record =
            (config.record_every > 0 && k % config.record_every == 0) || k == nsteps;
        if (at_record) record(s);
    }
    return traj;
}

} // namespace kgh
