#pragma once

#include <optional>

#include "nonlinearity.hpp"

namespace kgh {

// Parameters (t_n, x_n, h_n) of the profile-decomposition group action.
struct SymmetryParams {
    double t_shift = 0.0;
    std::vector<double> x_shift;
    double scale = 1.0;
};

inline void check_symmetry(const SymmetryParams& p, const Grid& g) {
    if (!(p.scale > 0.0 && p.scale <= 1.0))
        throw std::invalid_argument("SymmetryParams: scale must lie in (0,1]");
    if (p.scale * g.n() < 4.0)
        throw std::invalid_argument("SymmetryParams: scale*N < 4 (unresolvable)");
    if (!p.x_shift.empty() && int(p.x_shift.size()) != g.dim())
        throw std::invalid_argument("SymmetryParams: x_shift length != dim");
}

namespace detail {

// Apply a dense per-axis matrix E (n_out x n_in) along one tensor axis.
inline std::vector<std::complex<double>> apply_along_axis(
    const std::vector<std::complex<double>>& in, int dim, int n, int axis,
    const std::vector<std::complex<double>>& E) {
    std::vector<std::complex<double>> out(in.size(), std::complex<double>(0.0, 0.0));
    std::size_t inner = 1; // stride of the axis (product of faster axes)
    for (int a = axis + 1; a < dim; ++a) inner *= std::size_t(n);
    const std::size_t outer = in.size() / (inner * std::size_t(n));
    for (std::size_t o = 0; o < outer; ++o) {
        const std::size_t base = o * std::size_t(n) * inner;
        for (int j = 0; j < n; ++j) {
            const std::size_t row = base + std::size_t(j) * inner;
            for (int k = 0; k < n; ++k) {
                const auto e = E[std::size_t(j) * n + k];
                if (e == std::complex<double>(0.0, 0.0)) continue;
                const std::size_t src = base + std::size_t(k) * inner;
                for (std::size_t i = 0; i < inner; ++i) out[row + i] += e * in[src + i];
            }
        }
    }
    return out;
}

} // namespace detail

// The unitary scaling/translation T phi(x) = h^{-d/2} phi((x - x_n)/h),
// realized by evaluating the trigonometric interpolant of phi on the scaled
// lattice and windowing to the single fundamental copy.
inline Field apply_T(const Field& phi, const SymmetryParams& p) {
    const Grid& g = phi.grid;
    check_symmetry(p, g);
    const int d = g.dim(), n = g.n();
    const double h = p.scale, L = g.length();

    Field hat = to_frequency(phi);
    std::vector<std::complex<double>> data = hat.samples;
    for (int a = 0; a < d; ++a) {
        const double xs = p.x_shift.empty() ? 0.0 : p.x_shift[a];
        std::vector<std::complex<double>> E(std::size_t(n) * n);
        for (int j = 0; j < n; ++j) {
            const double z = (g.coord(j) - xs) / h;
            const bool inside = z >= -0.5 * L && z < 0.5 * L;
            // interpolant basis is e^{i xi (x + L/2)}: storage index 0 sits at x = -L/2
            for (int k = 0; k < n; ++k)
                E[std::size_t(j) * n + k] = inside
                    ? std::polar(1.0, g.freq(k) * (z + 0.5 * L))
                    : std::complex<double>(0.0, 0.0);
        }
        data = detail::apply_along_axis(data, d, n, a, E);
    }
    Field out(g, Space::physical);
    const double scale = std::pow(h, -0.5 * d) / std::sqrt(double(g.total()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale * data[i];

    const double n_in = l2_norm(phi), n_out = l2_norm(out);
    if (n_in > 0.0 && std::abs(n_out - n_in) > 1e-3 * n_in)
        throw std::runtime_error("apply_T: support overflow (rescaled profile does not fit the box)");
    return out;
}

// Free concentrating wave v_n(t) = e^{i<nabla>(t-t_n)} T phi. Both
// factorizations of the wave are available; `concentrating_wave_mismatch`
// measures their relative difference (an identity up to resampling error).
inline VectorState concentrating_wave(const Field& profile, const SymmetryParams& p, double t) {
    Field tphi = apply_T(profile, p);
    Field hat = to_frequency(tphi);
    const Multiplier& om = detail::cached_omega(profile.grid, 1.0);
    for (std::size_t i = 0; i < hat.size(); ++i)
        hat[i] *= std::polar(1.0, (t - p.t_shift) * om.values[i]);
    return VectorState(to_physical(hat), t);
}

inline Field concentrating_wave_scaled_route(const Field& profile, const SymmetryParams& p,
                                             double t) {
    Field hat = to_frequency(profile);
    const Multiplier& omh = detail::cached_omega(profile.grid, p.scale);
    const double phase_t = (t - p.t_shift) / p.scale;
    for (std::size_t i = 0; i < hat.size(); ++i)
        hat[i] *= std::polar(1.0, phase_t * omh.values[i]);
    return apply_T(to_physical(hat), p);
}

inline double concentrating_wave_mismatch(const Field& profile, const SymmetryParams& p, double t) {
    VectorState v1 = concentrating_wave(profile, p, t);
    Field v2 = concentrating_wave_scaled_route(profile, p, t);
    const double ref = l2_norm(v1.v);
    return ref > 0.0 ? l2_norm(v1.v - v2) / ref : 0.0;
}

// |<mu v1, mu v2>_{L^2}| with an optional bounded Fourier multiplier mu.
inline double pairwise_inner(const VectorState& v1, const VectorState& v2,
                             const Multiplier* mu = nullptr) {
    Field a = v1.v, b = v2.v;
    if (mu) {
        a = apply_multiplier(a, *mu);
        b = apply_multiplier(b, *mu);
    }
    return std::abs(inner_product(a, b));
}

// The displayed separation expression
//   h1/h2 + h2/h1 + (|t1 - t2| + |x1 - x2|) / h1.
inline double separation_functional(const SymmetryParams& p1, const SymmetryParams& p2) {
    double dx = 0.0;
    const std::size_t d = std::max(p1.x_shift.size(), p2.x_shift.size());
    for (std::size_t a = 0; a < d; ++a) {
        const double x1 = a < p1.x_shift.size() ? p1.x_shift[a] : 0.0;
        const double x2 = a < p2.x_shift.size() ? p2.x_shift[a] : 0.0;
        dx += (x1 - x2) * (x1 - x2);
    }
    dx = std::sqrt(dx);
    return p1.scale / p2.scale + p2.scale / p1.scale +
           (std::abs(p1.t_shift - p2.t_shift) + dx) / p1.scale;
}

// |E(sum_j v^j) - sum_j E(v^j)| at t = 0 for a synthetic superposition
// (remainder identically zero).
inline double energy_decoupling_residual(const std::vector<Field>& profiles,
                                         const std::vector<SymmetryParams>& params,
                                         const HartreeParams& hartree) {
    if (profiles.size() != params.size() || profiles.empty())
        throw std::invalid_argument("energy_decoupling_residual: bad inputs");
    if (profiles.size() == 1) return 0.0;
    Field sum;
    double e_sum = 0.0;
    for (std::size_t j = 0; j < profiles.size(); ++j) {
        VectorState vj = concentrating_wave(profiles[j], params[j], 0.0);
        e_sum += energy(from_vector(vj), hartree);
        if (j == 0) sum = vj.v;
        else sum += vj.v;
    }
    const double e_total = energy(from_vector(VectorState(sum, 0.0)), hartree);
    return std::abs(e_total - e_sum);
}

} // namespace kgh
