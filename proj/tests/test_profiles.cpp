#include <catch2/catch_amalgamated.hpp>

#include "kgh/initial_data.hpp"
#include "kgh/profiles.hpp"

using namespace kgh;

TEST_CASE("symmetry parameter validation", "[profiles]") {
    Grid g = make_grid(2, 32, 32.0);
    SymmetryParams p;
    CHECK_NOTHROW(check_symmetry(p, g));
    p.scale = 0.0;
    CHECK_THROWS_AS(check_symmetry(p, g), std::invalid_argument);
    p.scale = 1.5;
    CHECK_THROWS_AS(check_symmetry(p, g), std::invalid_argument);
    p.scale = 0.05; // scale*N = 1.6 < 4
    CHECK_THROWS_AS(check_symmetry(p, g), std::invalid_argument);
    p.scale = 1.0;
    p.x_shift = {1.0};
    CHECK_THROWS_AS(check_symmetry(p, g), std::invalid_argument);
}

TEST_CASE("apply_T identity and exact lattice translation", "[profiles]") {
    Grid g = make_grid(2, 32, 32.0);
    Field u = gaussian_bump(g, 1.0, 2.0);
    SymmetryParams ident;
    Field v = apply_T(u, ident);
    double err = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) err = std::max(err, std::abs(v[i] - u[i]));
    CHECK(err < 1e-12);

    // integer-lattice shift = circular shift (up to the windowed strip, where
    // the Gaussian tail is negligible)
    SymmetryParams sh;
    sh.x_shift = {3.0, -2.0};
    Field w = apply_T(u, sh);
    err = 0.0;
    for_each_point(g, [&](std::size_t flat, const std::array<int, kMaxDim>& idx) {
        const double x = g.coord(idx[0]), y = g.coord(idx[1]);
        if (std::abs(x - 3.0) > 12.0 || std::abs(y + 2.0) > 12.0) return;
        const double expect = std::exp(-0.5 * ((x - 3.0) * (x - 3.0) + (y + 2.0) * (y + 2.0)) / 4.0);
        err = std::max(err, std::abs(w[flat].real() - expect));
    });
    CHECK(err < 1e-10);
    CHECK(l2_norm(w) == Catch::Approx(l2_norm(u)).epsilon(1e-6));
}

TEST_CASE("apply_T rescaling is unitary and inverts", "[profiles]") {
    Grid g = make_grid(2, 64, 32.0);
    Field u = gaussian_bump(g, 1.0, 2.5);
    SymmetryParams half;
    half.scale = 0.5;
    Field v = apply_T(u, half);
    CHECK(l2_norm(v) == Catch::Approx(l2_norm(u)).epsilon(1e-3));
    // peak value scales like h^{-d/2} = 2
    CHECK(max_abs(v) == Catch::Approx(2.0 * max_abs(u)).epsilon(1e-3));
    // a profile too wide for the shrunken box overflows
    Field wide = gaussian_bump(g, 1.0, 2.5, {12.0, 0.0});
    SymmetryParams expand;
    expand.scale = 1.0;
    expand.x_shift = {10.0, 10.0};
    CHECK_THROWS_AS(apply_T(gaussian_bump(g, 1.0, 8.0), expand), std::runtime_error);
}

TEST_CASE("concentrating wave: the two factorizations agree", "[profiles]") {
    Grid g = make_grid(2, 64, 64.0);
    Field u = gaussian_bump(g, 1.0, 3.0);
    SymmetryParams p;
    p.scale = 0.5;
    p.t_shift = 1.0;
    p.x_shift = {2.0, -1.0};
    CHECK(concentrating_wave_mismatch(u, p, p.t_shift) < 1e-10); // both reduce to apply_T
    CHECK(concentrating_wave_mismatch(u, p, 0.0) < 1e-3);
    CHECK(concentrating_wave_mismatch(u, p, 2.5) < 1e-3);
}

TEST_CASE("separation functional closed-form values", "[profiles]") {
    SymmetryParams a, b;
    CHECK(separation_functional(a, a) == Catch::Approx(2.0));
    b.scale = 0.25; // ratio 4, no shifts
    CHECK(separation_functional(a, b) == Catch::Approx(4.25));
    SymmetryParams c, d;
    c.scale = 0.5;
    d.scale = 0.5;
    c.x_shift = {0.0};
    d.x_shift = {8.0};
    CHECK(separation_functional(c, d) == Catch::Approx(18.0));
}

TEST_CASE("pairwise inner product decays with separation", "[profiles]") {
    Grid g = make_grid(2, 64, 64.0);
    Field u = gaussian_bump(g, 1.0, 1.5);
    std::vector<double> vals;
    for (double sep : {2.0, 4.0, 8.0, 16.0}) {
        SymmetryParams p1, p2;
        p1.x_shift = {-0.5 * sep, 0.0};
        p2.x_shift = {0.5 * sep, 0.0};
        VectorState v1 = concentrating_wave(u, p1, 0.0);
        VectorState v2 = concentrating_wave(u, p2, 0.0);
        vals.push_back(pairwise_inner(v1, v2));
    }
    for (std::size_t k = 1; k < vals.size(); ++k) CHECK(vals[k] < vals[k - 1]);
    CHECK(vals.back() < 1e-3);

    // multiplier hook: mu = omega leaves orthogonality intact
    SymmetryParams p1, p2;
    p1.x_shift = {-8.0, 0.0};
    p2.x_shift = {8.0, 0.0};
    const Multiplier& om = detail::cached_omega(g, 1.0);
    CHECK(pairwise_inner(concentrating_wave(u, p1, 0.0), concentrating_wave(u, p2, 0.0), &om) <
          1e-2);
}

TEST_CASE("energy decoupling residual", "[profiles]") {
    Grid g = make_grid(2, 64, 64.0);
    HartreeParams hp{1.0, true};
    Field u = gaussian_bump(g, 1e-3, 1.0);
    SymmetryParams p1, p2;
    p1.x_shift = {-8.0, 0.0};
    p2.x_shift = {8.0, 0.0};
    CHECK(energy_decoupling_residual({u}, {p1}, hp) == 0.0);
    const double r8 = energy_decoupling_residual({u, u}, {p1, p2}, hp);
    SymmetryParams q1 = p1, q2 = p2;
    q1.x_shift = {-2.0, 0.0};
    q2.x_shift = {2.0, 0.0};
    const double r2 = energy_decoupling_residual({u, u}, {q1, q2}, hp);
    CHECK(r8 < r2);
    CHECK_THROWS_AS(energy_decoupling_residual({}, {}, hp), std::invalid_argument);
}
