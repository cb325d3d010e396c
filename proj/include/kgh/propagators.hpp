#pragma once

#include <cmath>

#include "multiplier.hpp"

namespace kgh {

// The pair (u, u_dot) of real physical-space fields at one model time.
struct State {
    Field u;
    Field ut;
    double time = 0.0;

    State() = default;
    State(Field u_, Field ut_, double t = 0.0) : u(std::move(u_)), ut(std::move(ut_)), time(t) {
        check_same_grid(u, ut, "State");
        if (u.space != Space::physical || ut.space != Space::physical)
            throw std::invalid_argument("State: fields must be physical-space");
    }
    const Grid& grid() const { return u.grid; }
};

inline State zero_state(const Grid& g) { return State(zero_field(g), zero_field(g)); }

// Complex first-order form v = <nabla>u - i u_dot of the same data.
struct VectorState {
    Field v;
    double time = 0.0;

    VectorState() = default;
    VectorState(Field v_, double t = 0.0) : v(std::move(v_)), time(t) {
        if (v.space != Space::physical)
            throw std::invalid_argument("VectorState: field must be physical-space");
    }
    const Grid& grid() const { return v.grid; }
};

inline VectorState to_vector(const State& s) {
    Field v = apply_multiplier(s.u, detail::cached_omega(s.grid(), 1.0));
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = std::complex<double>(v[i].real(), -s.ut[i].real());
    return VectorState(std::move(v), s.time);
}

inline State from_vector(const VectorState& vs) {
    const Grid& g = vs.grid();
    Field re = real_part(vs.v);
    Field hat = to_frequency(re);
    const Multiplier& om = detail::cached_omega(g, 1.0);
    for (std::size_t i = 0; i < hat.size(); ++i) hat[i] /= om.values[i];
    Field u = to_physical(hat);
    Field ut(g, Space::physical);
    for (std::size_t i = 0; i < ut.size(); ++i)
        ut[i] = std::complex<double>(-vs.v[i].imag(), 0.0);
    return State(real_part(u), std::move(ut), vs.time);
}

// Exact free Klein-Gordon flow: the matrix propagator built from
// K(t) = sin(t*omega)/omega applied in frequency space.
//   u  <- cos(dt w) u + sin(dt w)/w ut
//   ut <- -w sin(dt w) u + cos(dt w) ut
inline State free_flow(const State& s, double dt) {
    if (dt == 0.0) return s;
    const Grid& g = s.grid();
    Field uh = to_frequency(s.u);
    Field vh = to_frequency(s.ut);
    const Multiplier& om = detail::cached_omega(g, 1.0);
    for (std::size_t i = 0; i < uh.size(); ++i) {
        const double w = om.values[i];
        const double c = std::cos(dt * w), sn = std::sin(dt * w);
        const auto a = uh[i], b = vh[i];
        uh[i] = c * a + (sn / w) * b;
        vh[i] = -w * sn * a + c * b;
    }
    return State(real_part(to_physical(uh)), real_part(to_physical(vh)), s.time + dt);
}

// Half-wave group e^{i dt omega} on the vector form.
inline VectorState half_wave(const VectorState& vs, double dt) {
    if (dt == 0.0) return vs;
    const Grid& g = vs.grid();
    Field hat = to_frequency(vs.v);
    const Multiplier& om = detail::cached_omega(g, 1.0);
    for (std::size_t i = 0; i < hat.size(); ++i)
        hat[i] *= std::polar(1.0, dt * om.values[i]);
    return VectorState(to_physical(hat), vs.time + dt);
}

// Quadratic (free) energy 1/2 \int (ut^2 + |grad u|^2 + u^2).
inline double free_energy(const State& s) {
    const Grid& g = s.grid();
    Field uh = to_frequency(s.u);
    const Multiplier& om = detail::cached_omega(g, 1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < uh.size(); ++i)
        acc += om.values[i] * om.values[i] * std::norm(uh[i]);
    for (const auto& z : s.ut.samples) acc += std::norm(z);
    return 0.5 * acc * g.cell_volume();
}

} // namespace kgh
