#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "grid.hpp"

namespace kgh {

enum class Space { physical, frequency };

// Scalar sample array over a Grid, in physical or frequency space.
// Real-valued physical fields carry zero imaginary part.
struct Field {
    Grid grid;
    Space space = Space::physical;
    std::vector<std::complex<double>> samples;

    Field() = default;
    Field(const Grid& g, Space s)
        : grid(g), space(s), samples(g.total(), std::complex<double>(0.0, 0.0)) {}

    std::size_t size() const { return samples.size(); }
    std::complex<double>& operator[](std::size_t i) { return samples[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return samples[i]; }
};

inline Field zero_field(const Grid& g, Space s = Space::physical) { return Field(g, s); }

inline void check_same_grid(const Field& a, const Field& b, const char* what) {
    if (a.grid != b.grid) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

// Riemann-sum L^2 norm, cell volume (L/N)^d.
inline double l2_norm(const Field& f) {
    double s = 0.0;
    for (const auto& z : f.samples) s += std::norm(z);
    return std::sqrt(s * f.grid.cell_volume());
}

inline double max_abs(const Field& f) {
    double m = 0.0;
    for (const auto& z : f.samples) m = std::max(m, std::abs(z));
    return m;
}

inline double max_imag(const Field& f) {
    double m = 0.0;
    for (const auto& z : f.samples) m = std::max(m, std::abs(z.imag()));
    return m;
}

// Grid L^r norm by Riemann sum; r = infinity is the max norm.
inline double lr_norm(const Field& f, double r) {
    if (std::isinf(r)) return max_abs(f);
    if (r < 1.0) throw std::invalid_argument("lr_norm: r must be >= 1");
    double s = 0.0;
    for (const auto& z : f.samples) s += std::pow(std::abs(z), r);
    return std::pow(s * f.grid.cell_volume(), 1.0 / r);
}

inline std::complex<double> inner_product(const Field& a, const Field& b) {
    check_same_grid(a, b, "inner_product");
    std::complex<double> s(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s * a.grid.cell_volume();
}

inline Field& operator+=(Field& a, const Field& b) {
    check_same_grid(a, b, "operator+=");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline Field& operator-=(Field& a, const Field& b) {
    check_same_grid(a, b, "operator-=");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline Field& operator*=(Field& a, double c) {
    for (auto& z : a.samples) z *= c;
    return a;
}

inline Field operator+(Field a, const Field& b) { a += b; return a; }
inline Field operator-(Field a, const Field& b) { a -= b; return a; }
inline Field operator*(double c, Field a) { a *= c; return a; }

inline Field real_part(const Field& f) {
    Field out = f;
    for (auto& z : out.samples) z = std::complex<double>(z.real(), 0.0);
    return out;
}

// Pointwise product of two physical-space fields.
inline Field pointwise(const Field& a, const Field& b) {
    check_same_grid(a, b, "pointwise");
    Field out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] *= b[i];
    return out;
}

} // namespace kgh
