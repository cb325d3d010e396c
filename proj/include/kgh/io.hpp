#pragma once

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "diagnostics.hpp"

namespace kgh {

static_assert(std::endian::native == std::endian::little,
              "field snapshots assume a little-endian host");

// Snapshot format: one text header line
//   kgh-field <dim> <N> <L> <physical|frequency> complex128
// followed by N^d interleaved re/im doubles in flat index order.
inline void write_field(std::ostream& os, const Field& f) {
    os << "kgh-field " << f.grid.dim() << ' ' << f.grid.n() << ' ';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", f.grid.length());
    os << buf << ' ' << (f.space == Space::physical ? "physical" : "frequency")
       << " complex128\n";
    os.write(reinterpret_cast<const char*>(f.samples.data()),
             std::streamsize(f.samples.size() * sizeof(std::complex<double>)));
    if (!os) throw std::runtime_error("write_field: stream failure");
}

inline void write_field(const std::string& path, const Field& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_field: cannot open " + path);
    write_field(os, f);
}

inline Field read_field(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("read_field: missing header");
    std::istringstream hs(line);
    std::string magic, space, kind;
    int dim = 0, n = 0;
    double length = 0.0;
    hs >> magic >> dim >> n >> length >> space >> kind;
    if (!hs || magic != "kgh-field" || kind != "complex128")
        throw std::runtime_error("read_field: malformed header: " + line);
    if (space != "physical" && space != "frequency")
        throw std::runtime_error("read_field: bad space tag: " + space);
    Field f(make_grid(dim, n, length),
            space == "physical" ? Space::physical : Space::frequency);
    is.read(reinterpret_cast<char*>(f.samples.data()),
            std::streamsize(f.samples.size() * sizeof(std::complex<double>)));
    if (is.gcount() != std::streamsize(f.samples.size() * sizeof(std::complex<double>)))
        throw std::runtime_error("read_field: truncated payload");
    return f;
}

inline Field read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_field: cannot open " + path);
    return read_field(is);
}

namespace detail {

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace detail

// CSV time series with a fixed column order; momentum expands per axis.
inline void write_csv_header(std::ostream& os, int dim) {
    os << "time,energy";
    for (int a = 1; a <= dim; ++a) os << ",momentum_" << a;
    os << ",tail_energy,virial_I,virial_J,action_A,dA_dt_analytic,"
          "interaction_weighted,w_increment,linf\n";
}

inline void write_csv_row(std::ostream& os, const DiagnosticsRecord& r, int dim) {
    using detail::fmt17;
    os << fmt17(r.time) << ',' << fmt17(r.energy);
    for (int a = 0; a < dim; ++a)
        os << ',' << fmt17(a < int(r.momentum.size()) ? r.momentum[a] : 0.0);
    os << ',' << fmt17(r.tail_energy) << ',' << fmt17(r.virial_I) << ','
       << fmt17(r.virial_J) << ',' << fmt17(r.action_A) << ','
       << fmt17(r.dA_dt_analytic) << ',' << fmt17(r.interaction_weighted) << ','
       << fmt17(r.w_norm_increment) << ',' << fmt17(r.linf_norm) << '\n';
}

inline void write_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records,
                      int dim) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_csv: cannot open " + path);
    write_csv_header(os, dim);
    for (const auto& r : records) write_csv_row(os, r, dim);
    if (!os) throw std::runtime_error("write_csv: stream failure");
}

} // namespace kgh
