#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "sze/errors.hpp"

namespace sze {

// Distinct 0-based vertex ids, each < n of the graph they index into.
using VertexSet = std::vector<int>;

struct LoadStats {
    int dropped_self_loops = 0;
};

// Undirected simple graph, optionally edge-weighted with weights in [0,1],
// no self-loops. Immutable after construction and safe for concurrent reads.
//
// Storage is a dense row-major weight matrix below `dense_threshold`
// vertices and compressed sparse rows above it; both answer adjacency
// queries and row extraction in amortized O(1) per entry.
class Graph {
public:
    static constexpr int kDefaultDenseThreshold = 8192;

    Graph() = default;

    // Edges may repeat (the last weight wins) and may be given in either
    // orientation. Self-loops and out-of-range weights are rejected here;
    // the edge-list loader applies its own dropping rules first.
    // assume_unique skips deduplication for callers that guarantee one entry
    // per unordered pair (the synthetic generators).
    static Graph from_edges(int n, const std::vector<std::tuple<int, int, float>>& edges,
                            int dense_threshold = kDefaultDenseThreshold,
                            bool assume_unique = false);

    int n() const { return n_; }
    std::int64_t edge_count() const { return edge_count_; }
    bool weighted() const { return weighted_; }
    bool dense_storage() const { return use_dense_; }

    float weight(int u, int v) const;
    double degree(int u) const { return degree_[u]; }          // weighted degree
    double total_weight() const { return total_weight_; }      // each edge once

    // Calls f(v, w) for every neighbour v of u.
    template <typename F>
    void for_neighbours(int u, F&& f) const {
        if (use_dense_) {
            const float* row = dense_.data() + static_cast<std::size_t>(u) * n_;
            for (int v = 0; v < n_; ++v)
                if (row[v] > 0.0f) f(v, row[v]);
        } else {
            for (std::int64_t i = offsets_[u]; i < offsets_[u + 1]; ++i)
                f(adj_[i], csr_w_[i]);
        }
    }

    // |a| x |b| block with (i,j) = w(a[i], b[j]).
    Eigen::MatrixXf gather_block(const VertexSet& a, const VertexSet& b) const;

    // Canonical form: "# n=<n>" directive, then ascending (min,max) edge
    // lines, three columns when the graph is weighted.
    void save_edge_list(std::ostream& out) const;
    void save_edge_list(const std::string& path) const;

private:
    int n_ = 0;
    bool weighted_ = false;
    bool use_dense_ = true;
    std::int64_t edge_count_ = 0;
    double total_weight_ = 0.0;
    std::vector<double> degree_;
    std::vector<float> dense_;          // n*n row-major, zero diagonal
    std::vector<std::int64_t> offsets_; // CSR
    std::vector<int> adj_;
    std::vector<float> csr_w_;
};

// Line-oriented text, '#'-prefixed comments, "u v" or "u v w" per line.
// A "# n=<count>" comment raises the vertex-count hint. Duplicate edges keep
// the last weight; self-loop lines are dropped and counted in `stats`.
Graph load_edge_list(const std::string& path, std::optional<int> n_hint = {},
                     LoadStats* stats = nullptr,
                     int dense_threshold = Graph::kDefaultDenseThreshold);
Graph load_edge_list(std::istream& in, std::optional<int> n_hint = {},
                     LoadStats* stats = nullptr,
                     int dense_threshold = Graph::kDefaultDenseThreshold);

// Throws contract_error unless s holds distinct ids inside [0, n).
void validate_vertex_set(const VertexSet& s, int n);

// d(ci,cj) = e(ci,cj) / (|ci|·|cj|) over disjoint non-empty sets, where e
// sums the weights of cross edges.
double edge_density(const Graph& g, const VertexSet& ci, const VertexSet& cj);

// e(c,c)/|c|^2 with each internal edge counted once, so a clique of size m
// yields (m(m-1)/2)/m^2 rather than 1.
double internal_density(const Graph& g, const VertexSet& c);

struct BipartiteDegrees {
    std::vector<double> a;  // degree of a[i] into b
    std::vector<double> b;  // degree of b[j] into a
    double average = 0.0;   // (1/2m) * sum over both sides
};

// Requires |a| == |b| and disjointness.
BipartiteDegrees bipartite_degrees(const Graph& g, const VertexSet& a, const VertexSet& b);

}  // namespace sze
