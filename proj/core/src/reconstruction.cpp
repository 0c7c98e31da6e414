#include "sze/reconstruction.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "sze/parallel.hpp"

namespace sze {

void validate_density_matrix(const DensityMatrix& a) {
    if (a.rows() != a.cols()) throw contract_error("density matrix must be square");
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        if (a(i, i) != 0.0) throw contract_error("density matrix diagonal must be zero");
        for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
            if (a(i, j) != a(j, i)) throw contract_error("density matrix must be symmetric");
            if (!(a(i, j) >= 0.0 && a(i, j) <= 1.0))
                throw contract_error("density matrix entry outside [0,1]");
        }
    }
}

DensityMatrix blow_up(const ReducedGraph& r, const std::vector<double>& internal) {
    if (static_cast<int>(r.membership.size()) != r.n)
        throw contract_error("blow_up: membership does not cover the vertex range");
    if (r.weights.rows() != r.k || r.weights.cols() != r.k)
        throw contract_error("blow_up: weight matrix shape mismatch");
    if (static_cast<int>(internal.size()) != r.k)
        throw contract_error("blow_up: need one internal density per class");
    for (int c : r.membership)
        if (c < -1 || c >= r.k) throw contract_error("blow_up: membership id out of range");

    DensityMatrix a = DensityMatrix::Zero(r.n, r.n);
    parallel_for(r.n, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t u = lo; u < hi; ++u) {
            const int cu = r.membership[u];
            if (cu < 0) continue;  // C0 rows stay zero
            for (int v = 0; v < r.n; ++v) {
                if (v == u) continue;
                const int cv = r.membership[v];
                if (cv < 0) continue;
                a(u, v) = cu == cv ? internal[cu] : r.weights(cu, cv);
            }
        }
    });
    return a;
}

DensityMatrix to_density_matrix(const Graph& g) {
    DensityMatrix a = DensityMatrix::Zero(g.n(), g.n());
    for (int u = 0; u < g.n(); ++u)
        g.for_neighbours(u, [&](int v, float w) { a(u, v) = w; });
    return a;
}

double reconstruction_error(const DensityMatrix& a, const DensityMatrix& b, double p,
                            bool normalized) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw contract_error("reconstruction_error: shape mismatch");
    if (!(p >= 1.0)) throw contract_error("reconstruction_error: p must be at least 1");

    const Eigen::Index n = a.rows();
    // fixed chunk grid, so partial sums combine identically for any worker count
    constexpr std::int64_t kChunks = 64;
    std::vector<double> partial(kChunks, 0.0);
    const std::int64_t rows_per_chunk = (n + kChunks - 1) / kChunks;
    parallel_for(kChunks, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t c = lo; c < hi; ++c) {
            const Eigen::Index r0 = c * rows_per_chunk;
            const Eigen::Index r1 = std::min<Eigen::Index>(r0 + rows_per_chunk, n);
            if (r0 >= r1) continue;
            double sum = 0.0;
            if (p == 1.0) {
                sum = (a.middleRows(r0, r1 - r0) - b.middleRows(r0, r1 - r0))
                          .array()
                          .abs()
                          .sum();
            } else if (p == 2.0) {
                sum = (a.middleRows(r0, r1 - r0) - b.middleRows(r0, r1 - r0)).squaredNorm();
            } else {
                sum = (a.middleRows(r0, r1 - r0) - b.middleRows(r0, r1 - r0))
                          .array()
                          .abs()
                          .pow(p)
                          .sum();
            }
            partial[c] = sum;
        }
    });
    double total = 0.0;
    for (double s : partial) total += s;
    double err = std::pow(total, 1.0 / p);
    if (normalized && n > 0) err /= std::pow(static_cast<double>(n), 2.0 / p);
    return err;
}

namespace {
constexpr char kMagic[8] = {'S', 'Z', 'E', 'D', 'M', 'v', '1', '\0'};
}

void dump_density_matrix(const DensityMatrix& a, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path);
    out.write(kMagic, sizeof kMagic);
    const std::uint64_t n = static_cast<std::uint64_t>(a.rows());
    char nbuf[8];
    for (int i = 0; i < 8; ++i) nbuf[i] = static_cast<char>((n >> (8 * i)) & 0xff);
    out.write(nbuf, 8);
    std::vector<float> row(a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) row[j] = static_cast<float>(a(i, j));
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
    if (!out) throw io_error("write failed: " + path);
}

DensityMatrix load_density_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0)
        throw parse_error("not a density-matrix dump (bad magic)");
    char nbuf[8];
    in.read(nbuf, 8);
    if (!in) throw parse_error("density-matrix dump truncated");
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i)
        n |= static_cast<std::uint64_t>(static_cast<unsigned char>(nbuf[i])) << (8 * i);
    if (n > (1u << 20)) throw parse_error("density-matrix dump: implausible size");
    DensityMatrix a(n, n);
    std::vector<float> row(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(row.size() * sizeof(float)));
        if (!in) throw parse_error("density-matrix dump truncated");
        for (std::uint64_t j = 0; j < n; ++j) a(i, j) = row[j];
    }
    return a;
}

}  // namespace sze
