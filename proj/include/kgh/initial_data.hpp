#pragma once

#include <random>

#include "propagators.hpp"

namespace kgh {

// A cos(sum_a k_a x_a - w t) solves the free equation with w = sqrt(1+|k|^2);
// the returned state carries u and ut at the given time, so the pair
// (plane_wave_state(g,k,A,0), plane_wave_state(g,k,A,t)) is an exact-flow
// oracle. k is in integer modes.
inline State plane_wave_state(const Grid& g, const std::vector<int>& modes, double amplitude,
                              double t = 0.0) {
    if (int(modes.size()) != g.dim())
        throw std::invalid_argument("plane_wave_state: modes length != dim");
    double k2 = 0.0;
    std::vector<double> k(g.dim());
    for (int a = 0; a < g.dim(); ++a) {
        k[a] = 2.0 * M_PI * modes[a] / g.length();
        k2 += k[a] * k[a];
    }
    const double w = std::sqrt(1.0 + k2);
    Field u(g, Space::physical), ut(g, Space::physical);
    for_each_point(g, [&](std::size_t flat, const std::array<int, kMaxDim>& idx) {
        double ph = -w * t;
        for (int a = 0; a < g.dim(); ++a) ph += k[a] * g.coord(idx[a]);
        u[flat] = amplitude * std::cos(ph);
        ut[flat] = amplitude * w * std::sin(ph);
    });
    return State(std::move(u), std::move(ut), t);
}

// Gaussian bump A exp(-|x-c|^2 / (2 sigma^2)), optionally modulated by
// cos(k.x) through `modes`.
inline Field gaussian_bump(const Grid& g, double amplitude, double sigma,
                           const std::vector<double>& center = {},
                           const std::vector<int>& modes = {}) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_bump: sigma must be positive");
    if (!center.empty() && int(center.size()) != g.dim())
        throw std::invalid_argument("gaussian_bump: center length != dim");
    Field u(g, Space::physical);
    for_each_point(g, [&](std::size_t flat, const std::array<int, kMaxDim>& idx) {
        double r2 = 0.0, ph = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            const double x = g.coord(idx[a]);
            const double z = x - (center.empty() ? 0.0 : center[a]);
            r2 += z * z;
            if (!modes.empty()) ph += 2.0 * M_PI * modes[a] * x / g.length();
        }
        double v = amplitude * std::exp(-0.5 * r2 / (sigma * sigma));
        if (!modes.empty()) v *= std::cos(ph);
        u[flat] = v;
    });
    return u;
}

inline State gaussian_state(const Grid& g, double amplitude, double sigma,
                            const std::vector<double>& center = {}) {
    return State(gaussian_bump(g, amplitude, sigma, center), zero_field(g));
}

// Two well-separated bumps along the first axis.
inline Field two_bump(const Grid& g, double amplitude, double sigma, double separation) {
    if (!(separation > 0.0 && separation < g.length()))
        throw std::invalid_argument("two_bump: separation must lie in (0, L)");
    std::vector<double> c1(g.dim(), 0.0), c2(g.dim(), 0.0);
    c1[0] = -0.5 * separation;
    c2[0] = 0.5 * separation;
    Field u = gaussian_bump(g, amplitude, sigma, c1);
    u += gaussian_bump(g, amplitude, sigma, c2);
    return u;
}

// Seeded band-limited random field: i.i.d. N(0,1) Fourier coefficients
// (mt19937_64 + std::normal_distribution, coefficients drawn in flat index
// order) restricted to |mode|_inf <= kmax, real part taken in physical
// space, then scaled to the requested L^2 norm.
inline Field random_field(const Grid& g, std::uint64_t seed, int kmax, double l2_target) {
    if (kmax < 1 || kmax > g.n() / 2) throw std::invalid_argument("random_field: bad kmax");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Field hat(g, Space::frequency);
    for_each_point(g, [&](std::size_t flat, const std::array<int, kMaxDim>& idx) {
        bool band = true;
        for (int a = 0; a < g.dim(); ++a)
            if (std::abs(g.mode(idx[a])) > kmax) band = false;
        const double re = normal(rng), im = normal(rng); // always draw: layout-stable stream
        if (band) hat[flat] = std::complex<double>(re, im);
    });
    Field u = real_part(to_physical(hat));
    const double n = l2_norm(u);
    if (n == 0.0) throw std::runtime_error("random_field: degenerate draw");
    const double s = l2_target / n;
    for (auto& z : u.samples) z *= s;
    return u;
}

inline State random_state(const Grid& g, std::uint64_t seed, int kmax, double l2_target) {
    return State(random_field(g, seed, kmax, l2_target),
                 random_field(g, seed + 1, kmax, l2_target));
}

} // namespace kgh
