#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace kgh {

inline constexpr int kMaxDim = 5;
// Point-count budget: 2^24 complex samples per field (~256 MB per field).
inline constexpr std::size_t kMaxPoints = std::size_t(1) << 24;

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Periodic box [-L/2, L/2)^d sampled with N points per axis.
// Frequency lattice: xi_k = 2*pi*k/L, k integer in [-N/2, N/2).
class Grid {
public:
    Grid() = default;
    Grid(int dim, int n_per_axis, double box_length)
        : dim_(dim), n_(n_per_axis), length_(box_length) {
        if (dim < 1 || dim > kMaxDim)
            throw std::invalid_argument("Grid: dim must be in [1," + std::to_string(kMaxDim) +
                                        "], got " + std::to_string(dim));
        if (n_per_axis < 4 || !is_power_of_two(n_per_axis))
            throw std::invalid_argument("Grid: n_per_axis must be a power of two >= 4, got " +
                                        std::to_string(n_per_axis));
        if (!(box_length > 0.0))
            throw std::invalid_argument("Grid: box_length must be positive");
        std::size_t total = 1;
        for (int a = 0; a < dim; ++a) {
            if (total > kMaxPoints / std::size_t(n_per_axis))
                throw std::invalid_argument("Grid: N^d exceeds the memory budget");
            total *= std::size_t(n_per_axis);
        }
        total_ = total;
    }

    int dim() const { return dim_; }
    int n() const { return n_; }
    double length() const { return length_; }
    std::size_t total() const { return total_; }

    double spacing() const { return length_ / n_; }
    double cell_volume() const { return std::pow(spacing(), dim_); }
    double box_volume() const { return std::pow(length_, dim_); }

    bool operator==(const Grid& o) const {
        return dim_ == o.dim_ && n_ == o.n_ && length_ == o.length_;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }

    // Signed integer mode number for storage index i along one axis (FFT layout).
    int mode(int i) const { return i < n_ / 2 ? i : i - n_; }

    // Frequency component for storage index i along one axis.
    double freq(int i) const { return 2.0 * M_PI * mode(i) / length_; }

    // Physical coordinate for storage index i along one axis.
    double coord(int i) const { return -0.5 * length_ + i * spacing(); }

    // Decompose a flat index (row-major, last axis fastest) into per-axis indices.
    std::array<int, kMaxDim> unflatten(std::size_t flat) const {
        std::array<int, kMaxDim> idx{};
        for (int a = dim_ - 1; a >= 0; --a) {
            idx[a] = int(flat % std::size_t(n_));
            flat /= std::size_t(n_);
        }
        return idx;
    }

    std::size_t flatten(const std::array<int, kMaxDim>& idx) const {
        std::size_t flat = 0;
        for (int a = 0; a < dim_; ++a)
            flat = flat * std::size_t(n_) + std::size_t((idx[a] % n_ + n_) % n_);
        return flat;
    }

private:
    int dim_ = 0;
    int n_ = 0;
    double length_ = 0.0;
    std::size_t total_ = 0;
};

inline Grid make_grid(int dim, int n_per_axis, double box_length) {
    return Grid(dim, n_per_axis, box_length);
}

// Iterates all lattice points, exposing the flat index plus per-axis indices.
template <class F>
void for_each_point(const Grid& g, F&& f) {
    std::array<int, kMaxDim> idx{};
    const int d = g.dim(), n = g.n();
    const std::size_t total = g.total();
    for (std::size_t flat = 0; flat < total; ++flat) {
        f(flat, idx);
        for (int a = d - 1; a >= 0; --a) {
            if (++idx[a] < n) break;
            idx[a] = 0;
        }
    }
}

} // namespace kgh
