#pragma once

#include <cmath>

#include "diagnostics.hpp"

namespace kgh {

// Dyadic partition of unity on the integer frequency radius kappa = |xi| L / (2 pi),
// realized as quintic smoothsteps in log2 kappa. P0 lives in the ball kappa <= 2,
// block j in the annulus [2^{j-1}, 2^{j+1}]; the topmost block keeps its upper
// shoulder open so the partition sums to 1 up to the lattice corners and the
// reconstruction is exact.
inline int lp_block_count(const Grid& g) {
    int jmax = 0, n = g.n();
    while ((1 << (jmax + 2)) < n) ++jmax; // jmax = log2(N) - 2
    return jmax + 1;                      // blocks: P0, 1, ..., jmax
}

namespace detail {

// Ramp s(log2(kappa) - (j-1)) that rises across [2^{j-1}, 2^j].
inline double lp_ramp(double kappa, int j) {
    if (kappa <= 0.0) return 0.0;
    return smoothstep5(std::log2(kappa) - (j - 1));
}

inline const std::vector<Multiplier>& lp_multipliers(const Grid& g) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, double>, std::vector<Multiplier>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(g.dim(), g.n(), g.length());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const int nblocks = lp_block_count(g);
    const int jmax = nblocks - 1;
    std::vector<std::vector<double>> vals(nblocks, std::vector<double>(g.total()));
    for_each_point(g, [&](std::size_t flat, const std::array<int, kMaxDim>& idx) {
        double k2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) {
            const double m = g.mode(idx[a]);
            k2 += m * m;
        }
        const double kappa = std::sqrt(k2);
        vals[0][flat] = 1.0 - lp_ramp(kappa, 1);
        for (int j = 1; j <= jmax; ++j) {
            const double up = lp_ramp(kappa, j);
            const double down = j < jmax ? lp_ramp(kappa, j + 1) : 0.0;
            vals[j][flat] = up - down;
        }
    });
    std::vector<Multiplier> ms;
    ms.reserve(nblocks);
    for (auto& v : vals) ms.emplace_back(g, std::move(v));
    return cache.emplace(key, std::move(ms)).first->second;
}

} // namespace detail

struct LPDecomposition {
    std::vector<Field> blocks; // physical space; blocks[0] = P0 u
};

inline LPDecomposition lp_decompose(const Field& u) {
    if (u.space != Space::physical)
        throw std::invalid_argument("lp_decompose: physical-space field expected");
    const auto& ms = detail::lp_multipliers(u.grid);
    Field hat = to_frequency(u);
    LPDecomposition out;
    out.blocks.reserve(ms.size());
    for (const auto& m : ms) {
        Field bh = hat;
        for (std::size_t i = 0; i < bh.size(); ++i) bh[i] *= m.values[i];
        out.blocks.push_back(to_physical(bh));
    }
    return out;
}

// Inhomogeneous Besov norm B^s_{r,2}:
//   ( ||P0 u||_r^2 + sum_j (2^{js} ||Delta_j u||_r)^2 )^{1/2}.
inline double besov_norm(const Field& u, double s, double r) {
    auto lp = lp_decompose(u);
    double acc = 0.0;
    for (std::size_t j = 0; j < lp.blocks.size(); ++j) {
        const double w = j == 0 ? 1.0 : std::pow(2.0, double(j) * s);
        const double nr = w * lr_norm(lp.blocks[j], r);
        acc += nr * nr;
    }
    return std::sqrt(acc);
}

// B^s_{inf,inf} seminorm variant used by the interpolation check.
inline double besov_sup_norm(const Field& u, double s) {
    auto lp = lp_decompose(u);
    double acc = 0.0;
    for (std::size_t j = 0; j < lp.blocks.size(); ++j) {
        const double w = j == 0 ? 1.0 : std::pow(2.0, double(j) * s);
        acc = std::max(acc, w * max_abs(lp.blocks[j]));
    }
    return acc;
}

inline double h1_norm(const Field& u) {
    Field hat = to_frequency(u);
    const Multiplier& om = detail::cached_omega(u.grid, 1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < hat.size(); ++i)
        acc += om.values[i] * om.values[i] * std::norm(hat[i]);
    return std::sqrt(acc * u.grid.cell_volume());
}

// Lebesgue exponent of the space-time norm W(I): q = 2(d+1)/(d-1).
inline double strichartz_exponent(int d) {
    if (d < 2) throw std::invalid_argument("strichartz_exponent: requires d >= 2");
    return 2.0 * (d + 1) / (d - 1);
}

struct TimeSample {
    double time;
    Field u;
};

// Composite-trapezoid L^q-in-time norm of besov_norm(u(t), 1/2, q) over [t0, t1].
inline double strichartz_W(const std::vector<TimeSample>& samples, double t0, double t1) {
    if (samples.empty()) throw std::invalid_argument("strichartz_W: no samples");
    const int d = samples.front().u.grid.dim();
    const double q = strichartz_exponent(d);
    std::vector<std::pair<double, double>> pts; // (t, integrand)
    for (const auto& s : samples) {
        if (s.time < t0 - 1e-12 || s.time > t1 + 1e-12) continue;
        pts.emplace_back(s.time, std::pow(besov_norm(s.u, 0.5, q), q));
    }
    if (pts.size() < 2) throw std::invalid_argument("strichartz_W: insufficient samples in window");
    if (pts.front().first > t0 + 1e-9 + (pts[1].first - pts[0].first) ||
        pts.back().first < t1 - 1e-9 - (pts[1].first - pts[0].first))
        throw std::invalid_argument("strichartz_W: samples do not cover the window");
    double acc = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        acc += 0.5 * (pts[i].second + pts[i - 1].second) * (pts[i].first - pts[i - 1].first);
    return std::pow(acc, 1.0 / q);
}

// Ratio of the Sobolev-embedding interpolation inequality
//   ||u||_{2*} <= C ||u||_{H^1}^{(d-2)/d} ||u||_{B^{1-d/2}_{inf,inf}}^{2/d}.
inline double interpolation_check(const Field& u) {
    const int d = u.grid.dim();
    if (d < 3) throw std::invalid_argument("interpolation_check: requires d >= 3");
    const double lhs = lr_norm(u, 2.0 * d / (d - 2.0));
    if (lhs == 0.0) return 0.0;
    const double rhs = std::pow(h1_norm(u), (d - 2.0) / d) *
                       std::pow(besov_sup_norm(u, 1.0 - 0.5 * d), 2.0 / d);
    return lhs / rhs;
}

// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("loglog_slope: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Free L^inf decay-rate measurement: evolves the vector state by the exact
// half-wave group, records ||e^{it omega} v||_inf at the given times, and
// fits the log-log slope. (The complex modulus is the dispersive-estimate
// quantity; it avoids the mass-frequency beat that pollutes Re v.) Refuses
// to fit once the solution has reached the box boundary (wraparound would
// pollute the decay law).
inline double decay_fit(const VectorState& v0, const std::vector<double>& times,
                        std::vector<double>* linf_out = nullptr) {
    if (times.size() < 2) throw std::invalid_argument("decay_fit: need >= 2 times");
    const Grid& g = v0.grid();
    std::vector<double> linf;
    for (double t : times) {
        if (!(t > 0.0)) throw std::invalid_argument("decay_fit: times must be positive");
        VectorState vt = half_wave(v0, t - v0.time);
        const double m = max_abs(vt.v);
        // boundary shell: within two cells of any box face
        double edge = 0.0;
        const double lim = 0.5 * g.length() - 2.5 * g.spacing();
        for_each_point(g, [&](std::size_t flat, const std::array<int, kMaxDim>& idx) {
            for (int a = 0; a < g.dim(); ++a)
                if (std::abs(g.coord(idx[a])) > lim) {
                    edge = std::max(edge, std::abs(vt.v[flat]));
                    return;
                }
        });
        if (edge > 1e-2 * m)
            throw std::runtime_error("decay_fit: wraparound detected before t=" + std::to_string(t));
        linf.push_back(m);
    }
    if (linf_out) *linf_out = linf;
    return loglog_slope(times, linf);
}

} // namespace kgh
