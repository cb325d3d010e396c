#pragma once

#include "besov.hpp"
#include "config.hpp"
#include "profiles.hpp"
#include "scattering.hpp"

namespace kgh {

// ---------------------------------------------------------------------------
// Virial-identity experiment: finite-difference dA/dt along the discrete flow
// against the analytic right side, across a dt ladder. The fixture keeps the
// data supported well inside |z| < R so the shell terms sit at tail level and
// the residual is pure splitting error, converging at order dt^2.

struct VirialIdentityReport {
    std::vector<double> dts;
    std::vector<double> residual_A;  // |FD(dA/dt) - analytic right side|
    std::vector<double> residual_J;  // same for the equirepartition display
    double slope_A = 0.0;
    double slope_J = 0.0;
    double shell_terms = 0.0; // |I2| + |boundary| at the center state (floor check)
};

// 4th-order central first derivative from 5 equispaced samples.
inline double fd5(const std::array<double, 5>& f, double h) {
    return (-f[4] + 8.0 * f[3] - 8.0 * f[1] + f[0]) / (12.0 * h);
}

inline VirialIdentityReport virial_identity_experiment(
    const State& initial, const HartreeParams& params, const CutoffSpec& cutoff,
    const std::vector<double>& dts) {
    VirialIdentityReport rep;
    rep.dts = dts;
    for (double dt : dts) {
        std::array<double, 5> A{}, J{};
        State s = initial;
        A[0] = action_A(s, cutoff);
        J[0] = virial_J(s, cutoff);
        State center;
        for (int k = 1; k <= 4; ++k) {
            s = step(s, dt, params);
            A[k] = action_A(s, cutoff);
            J[k] = virial_J(s, cutoff);
            if (k == 2) center = s;
        }
        VirialRhs rhs = virial_rhs(center, cutoff, params);
        rep.residual_A.push_back(std::abs(fd5(A, dt) - rhs.dA_dt));
        rep.residual_J.push_back(std::abs(fd5(J, dt) - dJ_dt_analytic(center, cutoff, params)));
        if (dt == dts.front()) rep.shell_terms = std::abs(rhs.i2) + std::abs(rhs.boundary);
    }
    rep.slope_A = loglog_slope(rep.dts, rep.residual_A);
    rep.slope_J = loglog_slope(rep.dts, rep.residual_J);
    return rep;
}

// ---------------------------------------------------------------------------
// Strang self-convergence order fit: errors against a dt/8 reference run.

struct OrderFitReport {
    std::vector<double> dts;
    std::vector<double> errors;
    double slope = 0.0;
};

inline OrderFitReport strang_order_experiment(const State& initial, const HartreeParams& params,
                                              double t_end, const std::vector<double>& dts,
                                              Scheme scheme = Scheme::strang) {
    auto run = [&](double dt) {
        EvolveConfig c;
        c.dt = dt;
        c.t_end = t_end;
        c.params = params;
        c.record_every = 0;
        c.scheme = scheme;
        c.full_diagnostics = false;
        c.store_states = true;
        return evolve(initial, c).states.back();
    };
    OrderFitReport rep;
    rep.dts = dts;
    const double dt_min = *std::min_element(dts.begin(), dts.end());
    State ref = run(dt_min / 8.0);
    for (double dt : dts) rep.errors.push_back(h1l2_distance(run(dt), ref));
    rep.slope = loglog_slope(rep.dts, rep.errors);
    return rep;
}

// ---------------------------------------------------------------------------
// Free dispersive decay: slope of log ||u(t)||_inf vs log t.

struct DecayReport {
    std::vector<double> times;
    std::vector<double> linf;
    double slope = 0.0;
};

inline DecayReport decay_experiment(const VectorState& v0, const std::vector<double>& times) {
    DecayReport rep;
    rep.times = times;
    rep.slope = decay_fit(v0, times, &rep.linf);
    return rep;
}

// ---------------------------------------------------------------------------
// Small-data scattering: one rung = evolve, pull back at sample times, and
// accumulate the W-norm of the nonlinear-minus-free difference trajectory.

struct SmallDataRung {
    double amplitude = 0.0;
    ScatterReport scatter;
    double w_gap = 0.0; // W-norm of (nonlinear - free) over the full run
};

struct SmallDataReport {
    std::vector<SmallDataRung> rungs;
    double gap_slope = 0.0; // d log(w_gap) / d log(amplitude)
};

inline SmallDataRung small_data_rung(const State& initial, const HartreeParams& params, double dt,
                                     const std::vector<double>& sample_times, int record_every) {
    SmallDataRung rung;
    rung.amplitude = l2_norm(initial.u);
    const double t_end = sample_times.back();
    const int d = initial.grid().dim();
    const double q = strichartz_exponent(d);

    std::vector<State> pulled;
    double gap_acc = 0.0, prev_integrand = 0.0, prev_time = initial.time;
    bool first = true;
    auto observer = [&](const State& s) {
        State fr = free_flow(initial, s.time - initial.time);
        Field diff = s.u;
        diff -= fr.u;
        const double integrand = std::pow(besov_norm(diff, 0.5, q), q);
        if (!first) gap_acc += 0.5 * (integrand + prev_integrand) * (s.time - prev_time);
        prev_integrand = integrand;
        prev_time = s.time;
        first = false;
        for (double T : sample_times)
            if (std::abs(s.time - T) < 0.5 * dt) pulled.push_back(free_flow(s, -s.time));
    };

    EvolveConfig c;
    c.dt = dt;
    c.t_end = t_end;
    c.params = params;
    c.record_every = record_every;
    c.full_diagnostics = false;
    Trajectory traj = evolve(initial, c, observer);
    rung.w_gap = std::pow(gap_acc, 1.0 / q);

    double w_total = 0.0;
    for (const auto& r : traj.records) w_total += std::pow(r.w_norm_increment, q);
    w_total = std::pow(w_total, 1.0 / q);

    if (pulled.size() != sample_times.size())
        throw std::runtime_error("small_data_rung: missed a sample time");
    rung.scatter = assess_scattering(pulled, sample_times, w_total);
    return rung;
}

// Rung k evolves lambda_k * base_state; the gap slope is fitted against the
// ladder values lambda.
inline SmallDataReport small_data_experiment(const State& base_state, const HartreeParams& params,
                                             const std::vector<double>& ladder, double dt,
                                             const std::vector<double>& sample_times,
                                             int record_every) {
    SmallDataReport rep;
    std::vector<double> gap;
    for (double lam : ladder) {
        State s0 = base_state;
        s0.u *= lam;
        s0.ut *= lam;
        rep.rungs.push_back(small_data_rung(s0, params, dt, sample_times, record_every));
        rep.rungs.back().amplitude = lam;
        gap.push_back(rep.rungs.back().w_gap);
    }
    rep.gap_slope = loglog_slope(ladder, gap);
    return rep;
}

// ---------------------------------------------------------------------------
// Perturbation stability: W-norm of the difference of two nearby nonlinear
// trajectories under epsilon-halving of the data perturbation.

struct PerturbationReport {
    std::vector<double> epsilons;
    std::vector<double> w_diffs;
    std::vector<double> ratios; // w(eps) / w(eps/2)
};

inline double trajectory_w_difference(const State& a0, const State& b0,
                                      const HartreeParams& params, double dt, double t_end,
                                      int record_every) {
    const int d = a0.grid().dim();
    const double q = strichartz_exponent(d);
    EvolveConfig c;
    c.dt = dt;
    c.t_end = t_end;
    c.params = params;
    c.record_every = record_every;
    c.full_diagnostics = false;
    c.store_states = true;
    Trajectory ta = evolve(a0, c), tb = evolve(b0, c);
    double acc = 0.0, prev = 0.0, prev_t = a0.time;
    for (std::size_t k = 0; k < ta.states.size(); ++k) {
        Field diff = ta.states[k].u;
        diff -= tb.states[k].u;
        const double integrand = std::pow(besov_norm(diff, 0.5, q), q);
        if (k > 0) acc += 0.5 * (integrand + prev) * (ta.states[k].time - prev_t);
        prev = integrand;
        prev_t = ta.states[k].time;
    }
    return std::pow(acc, 1.0 / q);
}

inline PerturbationReport perturbation_experiment(const State& base, const Field& direction,
                                                  const HartreeParams& params,
                                                  const std::vector<double>& epsilons, double dt,
                                                  double t_end, int record_every) {
    PerturbationReport rep;
    rep.epsilons = epsilons;
    for (double eps : epsilons) {
        State pert = base;
        for (std::size_t i = 0; i < pert.u.size(); ++i) pert.u[i] += eps * direction[i];
        rep.w_diffs.push_back(
            trajectory_w_difference(base, pert, params, dt, t_end, record_every));
    }
    for (std::size_t k = 1; k < rep.w_diffs.size(); ++k)
        rep.ratios.push_back(rep.w_diffs[k - 1] / rep.w_diffs[k]);
    return rep;
}

// ---------------------------------------------------------------------------
// Profile-separation sweep: two bumps moved apart; orthogonality of the
// pairwise inner product and decoupling of the nonlinear energy.

struct ProfileSweepReport {
    std::vector<double> separations;
    std::vector<double> inner_products;
    std::vector<double> decoupling_residuals;
    double base_energy = 0.0;
};

inline ProfileSweepReport profile_sweep_experiment(const Grid& g, const HartreeParams& params,
                                                   double amplitude, double sigma,
                                                   const std::vector<double>& separations) {
    ProfileSweepReport rep;
    rep.separations = separations;
    Field bump = gaussian_bump(g, amplitude, sigma);
    rep.base_energy = energy(State(bump, zero_field(g)), params);
    for (double sep : separations) {
        SymmetryParams p1, p2;
        p1.x_shift.assign(g.dim(), 0.0);
        p2.x_shift.assign(g.dim(), 0.0);
        p1.x_shift[0] = -0.5 * sep;
        p2.x_shift[0] = 0.5 * sep;
        VectorState v1 = concentrating_wave(bump, p1, 0.0);
        VectorState v2 = concentrating_wave(bump, p2, 0.0);
        rep.inner_products.push_back(pairwise_inner(v1, v2));
        rep.decoupling_residuals.push_back(
            energy_decoupling_residual({bump, bump}, {p1, p2}, params));
    }
    return rep;
}

} // namespace kgh
