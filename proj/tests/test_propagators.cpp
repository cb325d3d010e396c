#include <catch2/catch_amalgamated.hpp>

#include "kgh/initial_data.hpp"
#include "kgh/propagators.hpp"

using namespace kgh;

namespace {

double state_distance(const State& a, const State& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.u.size(); ++i) {
        m = std::max(m, std::abs(a.u[i] - b.u[i]));
        m = std::max(m, std::abs(a.ut[i] - b.ut[i]));
    }
    return m;
}

} // namespace

TEST_CASE("free flow reproduces the plane-wave closed form", "[propagators]") {
    for (int d : {1, 2, 3}) {
        Grid g = make_grid(d, 32, 20.0);
        std::vector<int> modes(d, 0);
        modes[0] = 3;
        if (d > 1) modes[1] = -2;
        State s0 = plane_wave_state(g, modes, 0.7);
        State s10 = free_flow(s0, 10.0);
        State exact = plane_wave_state(g, modes, 0.7, 10.0);
        CHECK(state_distance(s10, exact) < 1e-10);
    }
}

TEST_CASE("free flow group law and reversibility", "[propagators]") {
    Grid g = make_grid(2, 16, 9.0);
    State s0 = gaussian_state(g, 1.0, 1.5);
    State a = free_flow(free_flow(s0, 0.7), 1.6);
    State b = free_flow(s0, 2.3);
    CHECK(state_distance(a, b) < 1e-12);
    State back = free_flow(free_flow(s0, 5.0), -5.0);
    CHECK(state_distance(back, s0) < 1e-12);
    CHECK(back.time == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("free flow conserves the quadratic energy exactly", "[propagators]") {
    Grid g = make_grid(2, 32, 16.0);
    State s0(gaussian_bump(g, 1.0, 1.5), gaussian_bump(g, 0.3, 2.0, {1.0, -2.0}));
    const double e0 = free_energy(s0);
    for (double t : {0.5, 3.0, 11.0})
        CHECK(free_energy(free_flow(s0, t)) == Catch::Approx(e0).epsilon(1e-12));
}

TEST_CASE("vector form round trip and isometry", "[propagators]") {
    Grid g = make_grid(2, 16, 8.0);
    State s(gaussian_bump(g, 0.8, 1.2), gaussian_bump(g, -0.4, 1.7));
    VectorState v = to_vector(s);
    State back = from_vector(v);
    CHECK(state_distance(back, s) < 1e-12);
    // ||v||_2^2 = 2 * free energy
    CHECK(l2_norm(v.v) * l2_norm(v.v) == Catch::Approx(2.0 * free_energy(s)).epsilon(1e-12));
}

TEST_CASE("half-wave group intertwines with the matrix propagator", "[propagators]") {
    Grid g = make_grid(2, 16, 12.0);
    State s0(gaussian_bump(g, 1.0, 1.4), gaussian_bump(g, 0.5, 1.1));
    const double t = 2.7;
    VectorState via_state = to_vector(free_flow(s0, t));
    VectorState via_group = half_wave(to_vector(s0), t);
    double err = 0.0;
    for (std::size_t i = 0; i < via_state.v.size(); ++i)
        err = std::max(err, std::abs(via_state.v[i] - via_group.v[i]));
    CHECK(err < 1e-12);
    // group law for the half wave
    VectorState v2 = half_wave(half_wave(to_vector(s0), 1.3), 1.4);
    err = 0.0;
    for (std::size_t i = 0; i < v2.v.size(); ++i)
        err = std::max(err, std::abs(v2.v[i] - via_group.v[i]));
    CHECK(err < 1e-12);
}

TEST_CASE("state constructors validate", "[propagators]") {
    Grid g = make_grid(1, 8, 4.0);
    Field p(g, Space::physical), q(g, Space::frequency);
    CHECK_THROWS_AS(State(p, q), std::invalid_argument);
    CHECK_THROWS_AS(VectorState(q), std::invalid_argument);
}

TEST_CASE("initial data families", "[initial_data]") {
    Grid g = make_grid(2, 32, 32.0);
    Field b = gaussian_bump(g, 2.0, 1.0);
    CHECK(max_abs(b) == Catch::Approx(2.0));
    CHECK(b[g.flatten({})].real() > 0.0);

    Field tb = two_bump(g, 1.0, 1.0, 8.0);
    // peaks at x = +-4 on the first axis
    const int i4 = int((4.0 + 16.0) / g.spacing());
    CHECK(tb[g.flatten({i4, 16})].real() == Catch::Approx(1.0).margin(1e-6));

    CHECK_THROWS_AS(gaussian_bump(g, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(two_bump(g, 1.0, 1.0, 40.0), std::invalid_argument);

    Field r1 = random_field(g, 42, 4, 1.5);
    Field r2 = random_field(g, 42, 4, 1.5);
    Field r3 = random_field(g, 43, 4, 1.5);
    CHECK(l2_norm(r1) == Catch::Approx(1.5).epsilon(1e-12));
    CHECK(max_imag(r1) < 1e-12);
    double same = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < r1.size(); ++i) {
        same = std::max(same, std::abs(r1[i] - r2[i]));
        diff = std::max(diff, std::abs(r1[i] - r3[i]));
    }
    CHECK(same == 0.0); // determinism, bit-exact
    CHECK(diff > 1e-3);
}
