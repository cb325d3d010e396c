#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "kgh/experiments.hpp"
#include "kgh/initial_data.hpp"
#include "kgh/io.hpp"

using namespace kgh;

TEST_CASE("field snapshot round trip is bit-exact", "[io]") {
    Grid g = make_grid(2, 16, 12.5);
    Field f = random_field(g, 99, 6, 2.0);
    f[3] = {1.0 / 3.0, -2.0 / 7.0}; // non-representable decimals
    std::stringstream ss;
    write_field(ss, f);
    Field back = read_field(ss);
    REQUIRE(back.grid == f.grid);
    REQUIRE(back.space == f.space);
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(back[i].real() == f[i].real()); // exact, not approximate
        CHECK(back[i].imag() == f[i].imag());
    }

    Field hat = to_frequency(f);
    std::stringstream s2;
    write_field(s2, hat);
    CHECK(read_field(s2).space == Space::frequency);
}

TEST_CASE("field reader rejects malformed input", "[io]") {
    std::stringstream bad1("not-a-field 2 16 1.0 physical complex128\n");
    CHECK_THROWS_AS(read_field(bad1), std::runtime_error);
    std::stringstream bad2("kgh-field 2 16 12.5 physical complex128\ntruncated");
    CHECK_THROWS_AS(read_field(bad2), std::runtime_error);
    std::stringstream bad3("kgh-field 2 16 12.5 sideways complex128\n");
    CHECK_THROWS_AS(read_field(bad3), std::runtime_error);
}

TEST_CASE("csv layout has the documented column order", "[io]") {
    std::ostringstream os;
    write_csv_header(os, 2);
    CHECK(os.str() ==
          "time,energy,momentum_1,momentum_2,tail_energy,virial_I,virial_J,action_A,"
          "dA_dt_analytic,interaction_weighted,w_increment,linf\n");
    DiagnosticsRecord r;
    r.time = 0.5;
    r.energy = 1.0 / 3.0;
    r.momentum = {1.0, -2.0};
    r.linf_norm = 2.0;
    std::ostringstream row;
    write_csv_row(row, r, 2);
    CHECK(row.str() == "0.5,0.33333333333333331,1,-2,0,0,0,0,0,0,0,2\n");
}

TEST_CASE("config parsing: defaults, sections, comments", "[config]") {
    RunConfig c = parse_config("");
    CHECK(c.dim == 2);
    CHECK(c.n == 32);
    CHECK(c.experiment == "evolve");

    RunConfig c2 = parse_config(
        "# comment\n"
        "[grid]\n"
        "dim = 3\n"
        "n = 16  # inline comment\n"
        "length = 24\n"
        "[hartree]\n"
        "gamma = 2\n"
        "[evolve]\n"
        "dt = 0.05\n"
        "scheme = lie\n"
        "[cutoff]\n"
        "radius = 5\n"
        "center = 1, 0, -1\n"
        "[run]\n"
        "experiment = decay-fit\n"
        "seed = 7\n");
    CHECK(c2.dim == 3);
    CHECK(c2.n == 16);
    CHECK(c2.hartree.gamma == 2.0);
    CHECK(c2.evolve.scheme == Scheme::lie);
    CHECK(c2.evolve.dt == 0.05);
    REQUIRE(c2.cutoff.has_value());
    CHECK(c2.cutoff->radius == 5.0);
    CHECK(c2.cutoff->center == std::vector<double>{1.0, 0.0, -1.0});
    CHECK(c2.experiment == "decay-fit");
    CHECK(c2.seed == 7);
    // evolve config carries the cutoff and physics
    CHECK(c2.evolve.cutoff.has_value());
    CHECK(c2.evolve.params.gamma == 2.0);
}

TEST_CASE("config parsing: errors name the offending key", "[config]") {
    using Catch::Matchers::ContainsSubstring;
    CHECK_THROWS_WITH(parse_config("[grid]\nnn = 3\n"), ContainsSubstring("grid.nn"));
    CHECK_THROWS_WITH(parse_config("[grid]\nn = 16\nn = 32\n"), ContainsSubstring("duplicate"));
    CHECK_THROWS_WITH(parse_config("[grid]\ndim = 5\nn = 8\nlength = 8\n[hartree]\ngamma = 7\n"),
                      ContainsSubstring("gamma"));
    CHECK_THROWS_WITH(parse_config("[grid]\nn = 12\n"), ContainsSubstring("grid"));
    CHECK_THROWS_WITH(parse_config("[evolve]\ndt = fast\n"), ContainsSubstring("evolve.dt"));
    CHECK_THROWS_WITH(parse_config("[data]\nfamily = tsunami\n"), ContainsSubstring("family"));
    CHECK_THROWS_AS(parse_config("[run\nexperiment = evolve\n"), config_error);
    CHECK_THROWS_AS(parse_config("[run]\nno equals sign\n"), config_error);
    // cutoff violating 2R < L/2
    CHECK_THROWS_WITH(parse_config("[cutoff]\nradius = 10\n"), ContainsSubstring("cutoff"));
}

TEST_CASE("build_initial_state families", "[config]") {
    RunConfig c = parse_config("[data]\nfamily = plane-wave\nmodes = 1, 1\namplitude = 0.5\n");
    Grid g = make_grid(c.dim, c.n, c.length);
    State s = build_initial_state(c, g);
    CHECK(max_abs(s.u) == Catch::Approx(0.5).epsilon(1e-6));

    RunConfig r = parse_config("[data]\nfamily = random\nkmax = 3\namplitude = 1.25\n");
    State sr = build_initial_state(r, g);
    CHECK(l2_norm(sr.u) == Catch::Approx(1.25).epsilon(1e-12));
    // deterministic in the seed
    State sr2 = build_initial_state(r, g);
    double diff = 0.0;
    for (std::size_t i = 0; i < sr.u.size(); ++i)
        diff = std::max(diff, std::abs(sr.u[i] - sr2.u[i]));
    CHECK(diff == 0.0);
}

TEST_CASE("integrator config validation and instability guard", "[integrator]") {
    Grid g = make_grid(2, 16, 16.0);
    State s0 = gaussian_state(g, 1.0, 1.5);
    EvolveConfig c;
    c.dt = 0.0;
    CHECK_THROWS_AS(evolve(s0, c), std::invalid_argument);
    c.dt = 0.6; // beyond max_dt
    CHECK_THROWS_AS(evolve(s0, c), std::invalid_argument);
    c.dt = 0.3;
    c.t_end = 1.0; // not an integer multiple
    CHECK_THROWS_AS(evolve(s0, c), std::invalid_argument);

    // violent data + coarse step trips the 10% energy guard
    State big = gaussian_state(g, 40.0, 1.0);
    EvolveConfig cb;
    cb.dt = 0.5;
    cb.t_end = 50.0;
    cb.params = HartreeParams{1.0, true};
    cb.record_every = 0;
    cb.full_diagnostics = false;
    CHECK_THROWS_AS(evolve(big, cb), instability_error);
}

TEST_CASE("time-reversal symmetry of the splitting", "[integrator]") {
    Grid g = make_grid(2, 16, 16.0);
    HartreeParams p{1.0, true};
    State s0 = gaussian_state(g, 0.8, 1.5);
    State s = s0;
    const double dt = 0.05;
    for (int k = 0; k < 100; ++k) s = step(s, dt, p);
    for (int k = 0; k < 100; ++k) s = step(s, -dt, p);
    const double rel = h1l2_distance(s, s0) / std::sqrt(2.0 * energy(s0, p));
    CHECK(rel < 1e-6);
}

TEST_CASE("strang beats lie and both converge", "[integrator][slow]") {
    Grid g = make_grid(2, 32, 16.0);
    HartreeParams p{1.0, true};
    State s0 = gaussian_state(g, 1.0, 1.5);
    auto rep_s = strang_order_experiment(s0, p, 1.0, {0.04, 0.02, 0.01, 0.005}, Scheme::strang);
    auto rep_l = strang_order_experiment(s0, p, 1.0, {0.04, 0.02, 0.01, 0.005}, Scheme::lie);
    CHECK(rep_s.slope == Catch::Approx(2.0).margin(0.1));
    CHECK(rep_l.slope == Catch::Approx(1.0).margin(0.15));
    CHECK(rep_s.errors.back() < rep_l.errors.back());
}

TEST_CASE("w_increment column composes to the window W-norm", "[integrator]") {
    Grid g = make_grid(2, 16, 16.0);
    HartreeParams p{1.0, true};
    State s0 = gaussian_state(g, 0.5, 1.5);
    EvolveConfig c;
    c.dt = 0.05;
    c.t_end = 1.0;
    c.params = p;
    c.record_every = 4;
    c.store_states = true;
    c.full_diagnostics = false;
    Trajectory traj = evolve(s0, c);
    const double q = strichartz_exponent(2);
    double total_q = 0.0;
    for (const auto& r : traj.records) total_q += std::pow(r.w_norm_increment, q);
    std::vector<TimeSample> samples;
    for (const auto& s : traj.states) samples.push_back({s.time, s.u});
    const double direct = strichartz_W(samples, 0.0, 1.0);
    CHECK(std::pow(total_q, 1.0 / q) == Catch::Approx(direct).epsilon(1e-10));
}
