#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "fft.hpp"

namespace kgh {

// Real Fourier symbol sampled on the frequency lattice of a Grid.
struct Multiplier {
    Grid grid;
    std::vector<double> values;

    Multiplier() = default;
    Multiplier(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (values.size() != g.total())
            throw std::invalid_argument("Multiplier: values length != N^d");
        for (double x : values)
            if (!std::isfinite(x)) throw std::invalid_argument("Multiplier: non-finite value");
    }
};

// Builds a multiplier from a function of the frequency vector xi (length dim).
inline Multiplier make_multiplier(const Grid& g,
                                  const std::function<double(const std::array<double, kMaxDim>&)>& symbol) {
    std::vector<double> vals(g.total());
    std::array<double, kMaxDim> xi{};
    for_each_point(g, [&](std::size_t flat, const std::array<int, kMaxDim>& idx) {
        for (int a = 0; a < g.dim(); ++a) xi[a] = g.freq(idx[a]);
        vals[flat] = symbol(xi);
    });
    return Multiplier(g, std::move(vals));
}

// Symbol of sqrt(mass^2 - Laplacian): mass=1 gives omega = (1-Delta)^{1/2},
// mass=h the scaled operator, mass=0 the half-Laplacian |nabla|.
inline Multiplier omega_multiplier(const Grid& g, double mass = 1.0) {
    if (mass < 0.0) throw std::invalid_argument("omega_multiplier: mass must be >= 0");
    return make_multiplier(g, [&](const std::array<double, kMaxDim>& xi) {
        double k2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) k2 += xi[a] * xi[a];
        return std::sqrt(mass * mass + k2);
    });
}

// Continuum Fourier-transform constant of |x|^{-gamma} in R^d:
//   \int |x|^{-gamma} e^{-i xi.x} dx = c(d,gamma) |xi|^{gamma-d}.
inline double riesz_constant(int d, double gamma) {
    return std::pow(2.0, d - gamma) * std::pow(M_PI, 0.5 * d) *
           std::tgamma(0.5 * (d - gamma)) / std::tgamma(0.5 * gamma);
}

// Symbol of convolution with |x|^{-gamma} on the torus; the zero mode is set
// to 0 (mean-zero convention for the Hartree potential).
inline Multiplier riesz_multiplier(const Grid& g, double gamma) {
    if (!(gamma > 0.0 && gamma < g.dim()))
        throw std::invalid_argument("riesz_multiplier: gamma must lie in (0, d)");
    const double c = riesz_constant(g.dim(), gamma);
    const double p = gamma - g.dim();
    return make_multiplier(g, [&](const std::array<double, kMaxDim>& xi) {
        double k2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) k2 += xi[a] * xi[a];
        if (k2 == 0.0) return 0.0;
        return c * std::pow(std::sqrt(k2), p);
    });
}

// Symbol i*xi_axis is purely imaginary; derivative application is handled by
// apply_derivative below. This helper provides xi_axis as a real multiplier.
inline Multiplier freq_component(const Grid& g, int axis) {
    if (axis < 0 || axis >= g.dim()) throw std::invalid_argument("freq_component: bad axis");
    return make_multiplier(g, [&](const std::array<double, kMaxDim>& xi) { return xi[axis]; });
}

// Pointwise product with the symbol in frequency space; a physical-space
// input comes back in physical space.
inline Field apply_multiplier(const Field& f, const Multiplier& m) {
    if (f.grid != m.grid) throw std::invalid_argument("apply_multiplier: grid mismatch");
    const bool was_physical = f.space == Space::physical;
    Field hat = to_frequency(f);
    for (std::size_t i = 0; i < hat.size(); ++i) hat[i] *= m.values[i];
    return was_physical ? to_physical(hat) : hat;
}

// Spectral partial derivative along an axis (symbol i*xi_axis).
inline Field apply_derivative(const Field& f, int axis) {
    if (axis < 0 || axis >= f.grid.dim()) throw std::invalid_argument("apply_derivative: bad axis");
    const bool was_physical = f.space == Space::physical;
    Field hat = to_frequency(f);
    const Grid& g = f.grid;
    for_each_point(g, [&](std::size_t flat, const std::array<int, kMaxDim>& idx) {
        // Zero the unmatched Nyquist mode so the derivative of a real field stays real.
        const int mode = g.mode(idx[axis]);
        if (mode == -g.n() / 2) {
            hat[flat] = 0.0;
        } else {
            hat[flat] *= std::complex<double>(0.0, g.freq(idx[axis]));
        }
    });
    return was_physical ? to_physical(hat) : hat;
}

// Per-grid caches for the symbols used in inner loops.
namespace detail {

template <class Key>
class MultiplierCache {
public:
    const Multiplier& get(const Grid& g, const Key& key,
                          const std::function<Multiplier()>& build) {
        std::lock_guard<std::mutex> lock(mu_);
        auto full_key = std::make_tuple(g.dim(), g.n(), g.length(), key);
        auto it = cache_.find(full_key);
        if (it == cache_.end()) it = cache_.emplace(full_key, build()).first;
        return it->second;
    }

private:
    std::mutex mu_;
    std::map<std::tuple<int, int, double, Key>, Multiplier> cache_;
};

inline const Multiplier& cached_omega(const Grid& g, double mass) {
    static MultiplierCache<double> cache;
    return cache.get(g, mass, [&] { return omega_multiplier(g, mass); });
}

inline const Multiplier& cached_riesz(const Grid& g, double gamma) {
    static MultiplierCache<double> cache;
    return cache.get(g, gamma, [&] { return riesz_multiplier(g, gamma); });
}

} // namespace detail

} // namespace kgh
