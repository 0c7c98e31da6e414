#pragma once

#include "sze/regularity.hpp"
#include "sze/rng.hpp"

namespace sze {

struct UnzipResult {
    VertexSet first, second;
    std::optional<int> leftover;  // last vertex of an odd-length input, bound for C0
};

// Input must be sorted by internal degree (descending, ties by ascending
// id); odd 1-based ranks go to `first`, even ranks to `second`.
UnzipResult unzip(const VertexSet& sorted_vertices);

// Members of c ordered by weighted degree restricted to c, descending,
// ties by ascending vertex id.
VertexSet sort_by_internal_degree(const Graph& g, const VertexSet& c);

// argmax_j of S = d(C_i,C_j) + (1 − |d(C_i,C_i) − d(C_j,C_j)|) over the
// candidate indices; ties break to the lowest class index.
int select_partner(const Graph& g, const std::vector<VertexSet>& classes, int i,
                   const std::vector<int>& candidates);

struct SplitResult {
    VertexSet first, second;
    VertexSet to_c0;  // certificate overflow beyond the two targets
};

// Randomly halves a sparse certificate (internal density < threshold) and
// tops each half up to target_size with the pool vertices sharing the fewest
// connections with that half. Consumed vertices are removed from `pool`;
// throws degenerate_split when the pool runs dry, leaving `pool` untouched.
SplitResult sparsification(const Graph& g, const VertexSet& cert, VertexSet& pool,
                           int target_size, Rng& rng);

// Dense counterpart: certificate sorted by internal degree and unzipped,
// halves topped up with the pool vertices sharing the most connections.
SplitResult densification(const Graph& g, const VertexSet& cert, VertexSet& pool,
                          int target_size);

struct RefineOptions {
    std::uint64_t seed = 0;
    double density_split_threshold = 0.5;  // sparsify below, densify at or above
    bool random_partner = false;           // seeded-random partner choice instead of the S score
};

struct RefinementOutcome {
    enum class Verdict { regular, irregular };

    EquitablePartition partition;  // 2k classes of size floor(m/2)
    Verdict verdict = Verdict::regular;
    bool had_degenerate_split = false;
};

// One refinement pass: regular classes unzip by internal degree, irregular
// ones split via their pair certificates (each class consumes at most one
// irregular partner). Oversized C0 is redistributed round-robin and classes
// re-equalized before returning.
RefinementOutcome refine(const Graph& g, const EquitablePartition& p,
                         const PairVerdicts& verdicts, const RefineOptions& opts = {});

}  // namespace sze
