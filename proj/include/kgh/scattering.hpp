#pragma once

#include "integrator.hpp"

namespace kgh {

// Energy-space distance between two states, computed through the vector-form
// isometry: || (u1,ut1) - (u2,ut2) ||_{H^1 x L^2} = || v1 - v2 ||_{L^2}.
inline double h1l2_distance(const State& a, const State& b) {
    Field dv = to_vector(a).v;
    dv -= to_vector(b).v;
    return l2_norm(dv);
}

// Pull the state at time T back along the free flow: w(T) = V0(-T)(u(T), ut(T)).
// Convergence of w(T) as T grows is the scattering statement.
inline State extract_scattering_state(const Trajectory& traj, double T) {
    return free_flow(traj.state_at(T), -T);
}

inline State extract_scattering_state(const State& s) { return free_flow(s, -s.time); }

struct ScatterReport {
    std::vector<double> sample_times;  // T_1 < T_2 < ...
    std::vector<double> defects;       // || w(T_{k+1}) - w(T_k) ||_{H^1 x L^2}
    double w_norm_total = 0.0;         // W-norm of the run, for the finiteness check
    bool converged = false;
};

// Defects are the Cauchy increments of T -> w(T). Convergence requires a
// monotone decrease over at least three windows and a last increment < tol.
inline ScatterReport assess_scattering(const std::vector<State>& pulled_back,
                                       const std::vector<double>& times,
                                       double w_norm_total, double tol = 1e-4) {
    if (pulled_back.size() != times.size() || times.size() < 2)
        throw std::invalid_argument("assess_scattering: need >= 2 pulled-back states");
    ScatterReport rep;
    rep.sample_times = times;
    rep.w_norm_total = w_norm_total;
    for (std::size_t k = 1; k < pulled_back.size(); ++k)
        rep.defects.push_back(h1l2_distance(pulled_back[k], pulled_back[k - 1]));
    bool monotone = rep.defects.size() >= 3;
    for (std::size_t k = 1; k < rep.defects.size(); ++k)
        if (rep.defects[k] > rep.defects[k - 1]) monotone = false;
    rep.converged = monotone && rep.defects.back() < tol;
    return rep;
}

} // namespace kgh
