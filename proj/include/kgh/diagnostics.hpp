#pragma once

#include <optional>

#include "nonlinearity.hpp"

namespace kgh {

// Quintic smoothstep: C^2 ramp from 0 to 1 on [0,1].
inline double smoothstep5(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}
inline double smoothstep5_deriv(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double u = 1.0 - t;
    return 30.0 * t * t * u * u;
}

// Radial bump phi: 1 on |z|<=1, 0 on |z|>=2, quintic-smoothstep ramp between.
inline double phi_profile(double s) { return 1.0 - smoothstep5(s - 1.0); }
inline double phi_profile_deriv(double s) { return -smoothstep5_deriv(s - 1.0); }

// Cutoff phi_R(z) = phi(|z|/R), z = x - center. Requires 2R < L/2 so the
// support of phi_R fits inside the box.
struct CutoffSpec {
    double radius = 1.0;
    std::vector<double> center;

    CutoffSpec() = default;
    CutoffSpec(double R, std::vector<double> c = {}) : radius(R), center(std::move(c)) {
        if (!(radius > 0.0)) throw std::invalid_argument("CutoffSpec: radius must be positive");
    }
};

inline void check_cutoff(const CutoffSpec& c, const Grid& g) {
    if (!(2.0 * c.radius < 0.5 * g.length()))
        throw std::invalid_argument("CutoffSpec: need 2R < L/2");
    if (!c.center.empty() && int(c.center.size()) != g.dim())
        throw std::invalid_argument("CutoffSpec: center length != dim");
}

// The distinguished direction of the virial action ("x_2" in a frame where the
// momentum is parallel to the first axis): second axis when d >= 2.
inline int virial_axis(const Grid& g) { return g.dim() >= 2 ? 1 : 0; }

// Grid tabulations of the cutoff and its analytic gradient.
struct CutoffTables {
    Field phi;                 // phi_R(z)
    Field z2;                  // second component of z
    Field dphi2;               // d_2 phi_R(z)
    std::vector<Field> grad;   // all components of grad phi_R(z)
    Field dist;                // |z|

    CutoffTables(const Grid& g, const CutoffSpec& spec) {
        check_cutoff(spec, g);
        const int d = g.dim();
        const int ax = virial_axis(g);
        const double R = spec.radius;
        phi = zero_field(g);
        z2 = zero_field(g);
        dphi2 = zero_field(g);
        dist = zero_field(g);
        grad.assign(d, zero_field(g));
        for_each_point(g, [&](std::size_t flat, const std::array<int, kMaxDim>& idx) {
            double z[kMaxDim], r2 = 0.0;
            for (int a = 0; a < d; ++a) {
                const double c = spec.center.empty() ? 0.0 : spec.center[a];
                z[a] = g.coord(idx[a]) - c;
                r2 += z[a] * z[a];
            }
            const double r = std::sqrt(r2);
            const double s = r / R;
            phi[flat] = phi_profile(s);
            z2[flat] = z[ax];
            dist[flat] = r;
            if (r > 0.0) {
                const double dp = phi_profile_deriv(s) / (R * r);
                for (int a = 0; a < d; ++a) grad[a][flat] = dp * z[a];
                dphi2[flat] = dp * z[ax];
            }
        });
    }
};

// Record of every scalar functional at one time sample.
struct DiagnosticsRecord {
    double time = 0.0;
    double energy = 0.0;
    std::vector<double> momentum;
    double tail_energy = 0.0;
    double virial_I = 0.0;
    double virial_J = 0.0;
    double action_A = 0.0;
    double dA_dt_analytic = 0.0;
    double interaction_weighted = 0.0;
    double w_norm_increment = 0.0;
    double linf_norm = 0.0;
};

namespace detail {

inline double quad(const Grid& g, const Field& a) {
    double s = 0.0;
    for (const auto& z : a.samples) s += z.real();
    return s * g.cell_volume();
}

// Riemann sum of the pointwise product of real parts.
inline double quad2(const Grid& g, const Field& a, const Field& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].real() * b[i].real();
    return s * g.cell_volume();
}

inline double quad3(const Grid& g, const Field& a, const Field& b, const Field& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].real() * b[i].real() * c[i].real();
    return s * g.cell_volume();
}

inline Field squared(const Field& u) {
    Field a(u.grid, Space::physical);
    for (std::size_t i = 0; i < u.size(); ++i)
        a[i] = std::complex<double>(std::norm(u[i]), 0.0);
    return a;
}

inline std::vector<Field> gradient(const Field& u) {
    std::vector<Field> g;
    g.reserve(u.grid.dim());
    for (int a = 0; a < u.grid.dim(); ++a) g.push_back(apply_derivative(u, a));
    return g;
}

// Periodized tabulation of the Corollary-4.3 kernel z_2^2 |z|^{-6} with the
// singular cell set to 0; cached spectrum per grid. The image sum uses one
// shell of periodic copies in low dimension; for d >= 4 the principal image
// dominates and the copies are dropped.
inline const Field& interaction_kernel_hat(const Grid& g) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, double>, Field> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(g.dim(), g.n(), g.length());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const int d = g.dim();
    const int ax = virial_axis(g);
    const double L = g.length();
    const int shell = d <= 3 ? 1 : 0;
    Field k(g, Space::physical);
    for_each_point(g, [&](std::size_t flat, const std::array<int, kMaxDim>& idx) {
        double z0[kMaxDim];
        for (int a = 0; a < d; ++a) {
            double z = g.coord(idx[a]) + 0.5 * L; // offsets relative to the origin corner
            z0[a] = z >= 0.5 * L ? z - L : z;     // principal image of the lattice offset
        }
        // offsets are grid displacements x - y; enumerate periodic images
        double val = 0.0;
        int img[kMaxDim] = {0, 0, 0, 0, 0};
        for (int a = 0; a < d; ++a) img[a] = -shell;
        while (true) {
            double r2 = 0.0, z2c = 0.0;
            for (int a = 0; a < d; ++a) {
                const double za = z0[a] + L * img[a];
                r2 += za * za;
                if (a == ax) z2c = za;
            }
            if (r2 > 0.0) val += z2c * z2c / (r2 * r2 * r2);
            int a = d - 1;
            for (; a >= 0; --a) {
                if (++img[a] <= shell) break;
                img[a] = -shell;
            }
            if (a < 0) break;
        }
        k[flat] = val;
    });
    // displacement 0 (the singular cell) is excluded
    k[g.flatten({})] = 0.0;
    Field khat = transform(k, Direction::forward);
    return cache.emplace(key, std::move(khat)).first->second;
}

// Circular convolution sum conv(x) = sum_y k(x-y) a(y) given khat.
inline Field circular_convolve(const Field& khat, const Field& a) {
    Field ahat = to_frequency(a);
    const double scale = std::sqrt(double(a.grid.total()));
    for (std::size_t i = 0; i < ahat.size(); ++i) ahat[i] *= scale * khat[i];
    return to_physical(ahat);
}

} // namespace detail

// Corollary 4.2 tail energy with a sharp indicator on |x-c| >= R:
//   \int_{|z|>=R} (u^2 + |grad u|^2 + ut^2) + \int_{|z|>=R} (V*|u|^2) u^2.
inline double tail_energy(const State& s, const CutoffSpec& cutoff, const HartreeParams& p) {
    const Grid& g = s.grid();
    check_cutoff(cutoff, g);
    CutoffTables tab(g, cutoff);
    auto grad = detail::gradient(s.u);
    Field rho = p.enabled ? hartree_potential(s.u, p) : zero_field(g);
    double acc = 0.0;
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        if (tab.dist[i].real() < cutoff.radius) continue;
        double gsq = 0.0;
        for (int a = 0; a < g.dim(); ++a) gsq += std::norm(grad[a][i]);
        const double u2 = std::norm(s.u[i]);
        acc += u2 + gsq + std::norm(s.ut[i]) + rho[i].real() * u2;
    }
    return acc * g.cell_volume();
}

// Corollary 4.3 interaction functional
//   \iint (x_2-y_2)^2 / |x-y|^6  |u(x)|^2 |u(y)|^2 dx dy
// via one convolution with the periodized tabulated kernel. Clamped at 0.
inline double interaction_weighted(const Field& u, double* raw = nullptr) {
    const Grid& g = u.grid;
    Field a = detail::squared(u);
    Field conv = detail::circular_convolve(detail::interaction_kernel_hat(g), a);
    const double val = detail::quad2(g, a, conv) * g.cell_volume();
    if (raw) *raw = val;
    return std::max(val, 0.0);
}

// Virial action I(t) = \int z_2 phi_R(z) d_2 u  u_t dx.
inline double virial_I(const State& s, const CutoffSpec& cutoff) {
    const Grid& g = s.grid();
    CutoffTables tab(g, cutoff);
    Field d2u = apply_derivative(s.u, virial_axis(g));
    double acc = 0.0;
    for (std::size_t i = 0; i < s.u.size(); ++i)
        acc += tab.z2[i].real() * tab.phi[i].real() * d2u[i].real() * s.ut[i].real();
    return acc * g.cell_volume();
}

// Equirepartition action J(t) = \int phi_R(z) u u_t dx.
inline double virial_J(const State& s, const CutoffSpec& cutoff) {
    const Grid& g = s.grid();
    CutoffTables tab(g, cutoff);
    return detail::quad3(g, tab.phi, s.u, s.ut);
}

inline double action_A(const State& s, const CutoffSpec& cutoff) {
    return virial_I(s, cutoff) + 0.5 * virial_J(s, cutoff);
}

// gamma-matched symmetrized interaction functional appearing in the virial
// identity: (gamma/4) \iint (x_2-y_2)^2 |x-y|^{-gamma-2} |u(x)|^2 |u(y)|^2.
// Evaluated through the same Riesz symbol as the Hartree force, by the exact
// discrete regrouping
//   -1/4 [ <z2 a, d2 rho> - <a, d2 (V * (z2 a))> ],   rho = V * a,
// so the identity closes to quadrature precision. Coordinates are taken
// relative to `center` (default 0).
inline double virial_interaction(const Field& u, const HartreeParams& p,
                                 const std::vector<double>& center = {}) {
    if (!p.enabled) return 0.0;
    const Grid& g = u.grid;
    const int ax = virial_axis(g);
    Field a = detail::squared(u);
    Field z2a = a;
    for_each_point(g, [&](std::size_t flat, const std::array<int, kMaxDim>& idx) {
        const double c = center.empty() ? 0.0 : center[ax];
        z2a[flat] *= g.coord(idx[ax]) - c;
    });
    const Multiplier& riesz = detail::cached_riesz(g, p.gamma);
    Field d2rho = apply_derivative(apply_multiplier(a, riesz), ax);
    Field m_z2a = apply_derivative(apply_multiplier(z2a, riesz), ax);
    return -0.25 * (detail::quad2(g, z2a, d2rho) - detail::quad2(g, a, m_z2a));
}

// Term-by-term right side of the symmetrized identity for dA/dt.
struct VirialRhs {
    double d2u_sq = 0.0;       // \int phi_R (d_2 u)^2
    double interaction = 0.0;  // gamma-matched symmetrized double integral
    double i2 = 0.0;           // cross term with the cutoff weights
    double boundary = 0.0;     // terms supported on the transition shell R<=|z|<=2R
    double cdot = 0.0;         // prescribed center-motion terms
    double dA_dt = 0.0;        // total: dA/dt = cdot - (d2u_sq + interaction + i2 + boundary)
};

// Evaluates dA/dt analytically from one state, term by term:
//   -dA/dt = \int phi_R (d_2 u)^2 + interaction + I_2 + boundary - cdot terms.
// All derivatives are spectral; the cutoff gradient is analytic.
inline VirialRhs virial_rhs(const State& s, const CutoffSpec& cutoff, const HartreeParams& p,
                            const std::vector<double>& c_dot = {}) {
    const Grid& g = s.grid();
    const int d = g.dim();
    const int ax = virial_axis(g);
    check_cutoff(cutoff, g);
    if (!c_dot.empty() && int(c_dot.size()) != d)
        throw std::invalid_argument("virial_rhs: c_dot length != dim");
    CutoffTables tab(g, cutoff);

    auto grad = detail::gradient(s.u);
    const Field& d2u = grad[ax];
    Field a = detail::squared(s.u);
    Field rho = p.enabled ? hartree_potential(s.u, p) : zero_field(g);

    // d2(z2 phi_R) = phi_R + z2 d2 phi_R, tabulated analytically
    Field d2w(g, Space::physical);
    for (std::size_t i = 0; i < d2w.size(); ++i)
        d2w[i] = tab.phi[i].real() + tab.z2[i].real() * tab.dphi2[i].real();

    double acc = 0.0; // accumulates dI/dt + (1/2) dJ/dt, exact discrete terms

    // dI/dt pieces
    double gsq_int = 0.0, phi_d2u2 = 0.0, shell_grad = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double gsq = 0.0, gphi_gu = 0.0;
        for (int ax2 = 0; ax2 < d; ++ax2) {
            gsq += std::norm(grad[ax2][i]);
            gphi_gu += tab.grad[ax2][i].real() * grad[ax2][i].real();
        }
        const double dw = d2w[i].real();
        acc += -0.5 * dw * std::norm(s.ut[i])                     // kick of z2 phi
               + 0.5 * dw * gsq                                   // from w d2u Lap u
               + 0.5 * dw * std::norm(s.u[i])                     // mass term
               + 0.5 * dw * rho[i].real() * a[i].real();          // Hartree, local part
        phi_d2u2 += tab.phi[i].real() * std::norm(d2u[i]);
        shell_grad += tab.z2[i].real() * gphi_gu * d2u[i].real();
        gsq_int += gsq;
    }
    (void)gsq_int;
    acc *= g.cell_volume();
    phi_d2u2 *= g.cell_volume();
    shell_grad *= g.cell_volume();
    acc += -phi_d2u2 - shell_grad;

    // Hartree nonlocal part: (1/2) \int w a d2 rho = -interaction - i2
    double interaction = 0.0, i2 = 0.0;
    if (p.enabled) {
        interaction = virial_interaction(s.u, p, cutoff.center);
        Field d2rho = apply_derivative(rho, ax);
        // g_w = z2 (phi_R - 1)
        double gad2rho = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            gad2rho += tab.z2[i].real() * (tab.phi[i].real() - 1.0) * a[i].real() * d2rho[i].real();
        i2 = -0.5 * gad2rho * g.cell_volume();
        acc += -interaction - i2;
    }

    // (1/2) dJ/dt pieces: phi ut^2 - grad u . grad(phi u) - phi u^2 - phi rho u^2
    Field phiu = pointwise(tab.phi, s.u);
    auto grad_phiu = detail::gradient(phiu);
    double jacc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double dot = 0.0;
        for (int ax2 = 0; ax2 < d; ++ax2) dot += grad[ax2][i].real() * grad_phiu[ax2][i].real();
        jacc += tab.phi[i].real() * (std::norm(s.ut[i]) - std::norm(s.u[i]) -
                                     rho[i].real() * a[i].real()) - dot;
    }
    acc += 0.5 * jacc * g.cell_volume();

    // center-motion terms
    double cdot = 0.0;
    if (!c_dot.empty()) {
        double s1 = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            double gphi_c = 0.0;
            for (int ax2 = 0; ax2 < d; ++ax2) gphi_c += tab.grad[ax2][i].real() * c_dot[ax2];
            const double dt_w = -c_dot[ax] * tab.phi[i].real() - tab.z2[i].real() * gphi_c;
            s1 += dt_w * d2u[i].real() * s.ut[i].real()
                  - 0.5 * gphi_c * s.u[i].real() * s.ut[i].real();
        }
        cdot = s1 * g.cell_volume();
        acc += cdot;
    }

    VirialRhs out;
    out.d2u_sq = phi_d2u2;
    out.interaction = interaction;
    out.i2 = i2;
    out.cdot = cdot;
    out.dA_dt = acc;
    out.boundary = -(acc - cdot) - phi_d2u2 - interaction - i2;
    return out;
}

inline double dA_dt_analytic(const State& s, const CutoffSpec& cutoff, const HartreeParams& p,
                             const std::vector<double>& c_dot = {}) {
    return virial_rhs(s, cutoff, p, c_dot).dA_dt;
}

// Analytic right side of the dJ/dt display.
inline double dJ_dt_analytic(const State& s, const CutoffSpec& cutoff, const HartreeParams& p,
                             const std::vector<double>& c_dot = {}) {
    const Grid& g = s.grid();
    const int d = g.dim();
    CutoffTables tab(g, cutoff);
    auto grad = detail::gradient(s.u);
    Field rho = p.enabled ? hartree_potential(s.u, p) : zero_field(g);
    Field phiu = pointwise(tab.phi, s.u);
    auto grad_phiu = detail::gradient(phiu);
    double acc = 0.0;
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        double dot = 0.0, gphi_c = 0.0;
        for (int ax2 = 0; ax2 < d; ++ax2) {
            dot += grad[ax2][i].real() * grad_phiu[ax2][i].real();
            if (!c_dot.empty()) gphi_c += tab.grad[ax2][i].real() * c_dot[ax2];
        }
        acc += tab.phi[i].real() * (std::norm(s.ut[i]) - std::norm(s.u[i]) -
                                    rho[i].real() * std::norm(s.u[i])) -
               dot - gphi_c * s.u[i].real() * s.ut[i].real();
    }
    return acc * g.cell_volume();
}

} // namespace kgh
