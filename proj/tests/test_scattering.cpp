#include <catch2/catch_amalgamated.hpp>

#include "kgh/experiments.hpp"
#include "kgh/initial_data.hpp"
#include "kgh/scattering.hpp"

using namespace kgh;

TEST_CASE("h1l2 distance is the vector-form L2 distance", "[scattering]") {
    Grid g = make_grid(2, 16, 8.0);
    State a(gaussian_bump(g, 1.0, 1.0), gaussian_bump(g, 0.2, 1.3));
    State b(gaussian_bump(g, 0.9, 1.1), gaussian_bump(g, 0.3, 1.2));
    // explicit H^1 x L^2 computation
    Field du = a.u - b.u, dut = a.ut - b.ut;
    Field hat = to_frequency(du);
    const Multiplier& om = detail::cached_omega(g, 1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < hat.size(); ++i)
        acc += om.values[i] * om.values[i] * std::norm(hat[i]);
    for (const auto& z : dut.samples) acc += std::norm(z);
    CHECK(h1l2_distance(a, b) == Catch::Approx(std::sqrt(acc * g.cell_volume())).epsilon(1e-12));
    CHECK(h1l2_distance(a, a) == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("free evolution pulls back to the initial data", "[scattering]") {
    Grid g = make_grid(2, 32, 16.0);
    State s0 = gaussian_state(g, 1.0, 1.5);
    EvolveConfig c;
    c.dt = 0.1;
    c.t_end = 6.0;
    c.params = HartreeParams{1.0, false}; // nonlinearity off
    c.record_every = 10;
    c.store_states = true;
    c.full_diagnostics = false;
    Trajectory traj = evolve(s0, c);
    for (double T : {2.0, 4.0, 6.0}) {
        State w = extract_scattering_state(traj, T);
        CHECK(h1l2_distance(w, s0) < 1e-10);
    }
    CHECK_THROWS_AS(extract_scattering_state(traj, 3.14), std::invalid_argument);
}

TEST_CASE("assess_scattering convergence logic", "[scattering]") {
    Grid g = make_grid(1, 8, 4.0);
    // synthetic pulled-back states with prescribed defects
    auto shifted = [&](double amp) {
        Field u(g, Space::physical);
        u[0] = amp;
        return State(u, zero_field(g));
    };
    std::vector<double> times = {1.0, 2.0, 4.0, 8.0};
    std::vector<State> monotone = {shifted(0.0), shifted(1e-3), shifted(1e-3 + 1e-4),
                                   shifted(1e-3 + 1e-4 + 1e-5)};
    ScatterReport rep = assess_scattering(monotone, times, 0.5, 1e-4);
    CHECK(rep.defects.size() == 3);
    CHECK(rep.defects[0] > rep.defects[1]);
    CHECK(rep.converged);

    std::vector<State> flat = {shifted(0.0), shifted(1e-3), shifted(2e-3), shifted(4e-3)};
    CHECK_FALSE(assess_scattering(flat, times, 0.5, 1e-4).converged);
    CHECK_THROWS_AS(assess_scattering({shifted(0.0)}, {1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("nonlinear small-data run produces decreasing defects", "[scattering][slow]") {
    // d = 3: the free decay t^{-3/2} is integrable, so the pulled-back states
    // form a Cauchy sequence already on short windows (d = 2 is borderline)
    Grid g = make_grid(3, 32, 64.0);
    HartreeParams hp{2.0, true};
    State base = gaussian_state(g, 0.2, 2.0);
    SmallDataRung rung = small_data_rung(base, hp, 0.1, {2.0, 4.0, 8.0, 16.0}, 5);
    REQUIRE(rung.scatter.defects.size() == 3);
    CHECK(rung.scatter.defects[0] > rung.scatter.defects[1]);
    CHECK(rung.scatter.defects[1] > rung.scatter.defects[2]);
    CHECK(rung.w_gap > 0.0);
    CHECK(rung.scatter.w_norm_total > 0.0);
}
