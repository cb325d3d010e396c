#pragma once

#include <complex>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include <fftw3.h>

#include "field.hpp"

namespace kgh {

enum class Direction { forward, inverse };

namespace detail {

// One cached FFTW plan pair per (dim, n). Plans are built once on aligned
// buffers and reused; data is copied in and out so callers keep value semantics.
class FftPlan {
public:
    FftPlan(int dim, int n, std::size_t total) : total_(total) {
        buf_ = fftw_alloc_complex(total);
        int dims[kMaxDim];
        for (int a = 0; a < dim; ++a) dims[a] = n;
        fwd_ = fftw_plan_dft(dim, dims, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        inv_ = fftw_plan_dft(dim, dims, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~FftPlan() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(inv_);
        fftw_free(buf_);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    void execute(std::vector<std::complex<double>>& data, Direction dir) {
        std::memcpy(static_cast<void*>(buf_), data.data(), total_ * sizeof(fftw_complex));
        fftw_execute(dir == Direction::forward ? fwd_ : inv_);
        std::memcpy(static_cast<void*>(data.data()), buf_, total_ * sizeof(fftw_complex));
    }

private:
    std::size_t total_;
    fftw_complex* buf_;
    fftw_plan fwd_, inv_;
};

inline void run_fft(const Grid& g, std::vector<std::complex<double>>& data, Direction dir) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<FftPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(g.dim(), g.n());
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<FftPlan>(g.dim(), g.n(), g.total())).first;
    it->second->execute(data, dir);
}

} // namespace detail

// Unitary d-dimensional DFT: both directions carry the N^{-d/2} factor,
// so Parseval holds without bookkeeping and a round trip is the identity.
inline Field transform(const Field& f, Direction dir) {
    const Space want = dir == Direction::forward ? Space::physical : Space::frequency;
    if (f.space != want)
        throw std::invalid_argument("transform: field space does not match direction");
    Field out = f;
    detail::run_fft(f.grid, out.samples, dir);
    const double scale = 1.0 / std::sqrt(double(f.grid.total()));
    for (auto& z : out.samples) z *= scale;
    out.space = dir == Direction::forward ? Space::frequency : Space::physical;
    return out;
}

inline Field to_frequency(const Field& f) {
    return f.space == Space::frequency ? f : transform(f, Direction::forward);
}

inline Field to_physical(const Field& f) {
    return f.space == Space::physical ? f : transform(f, Direction::inverse);
}

} // namespace kgh
