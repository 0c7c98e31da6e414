#pragma once

#include <iosfwd>

#include "sze/refinement.hpp"

namespace sze {

enum class LoopMode {
    literal,  // abort when irregular pairs exceed the eps budget
    classic,  // accept within budget, refine otherwise
};

struct SummaryConfig {
    double epsilon = 0.45;
    double c_min = 0.9;     // minimum compression rate, stops the refinement
    double d_prime = 0.0;   // density floor for reduced-graph edges
    int initial_k = 4;
    std::uint64_t seed = 42;
    LoopMode loop = LoopMode::literal;
    bool fallback_last = false;  // on failure, use the last examined partition
    double density_split_threshold = 0.5;
    bool random_partner = false;

    void validate() const;
};

// k-supernode weighted summary: w(Ci,Cj) = pair density when the pair is
// regular and the density clears d', 0 otherwise.
struct ReducedGraph {
    int k = 0;
    int m = 0;  // class size of the partition it came from
    int n = 0;  // original vertex count
    double epsilon = 0.0;
    std::vector<int> membership;  // n entries, class id or -1 for C0
    Eigen::MatrixXd weights;      // k x k, symmetric, zero diagonal
};

struct Summary {
    ReducedGraph reduced;
    std::vector<double> internal;  // per-class internal density
    double d_prime = 0.0;
    double sze = 0.0;
};

struct IterationStats {
    int iteration = 0;
    int k = 0;
    int m = 0;
    int irregular_pairs = 0;
    int total_pairs = 0;
    double sze = 0.0;
    double compression = 0.0;
    bool refined = false;
    bool kept = false;       // the refined partition joined the candidate list
    double kept_sze = 0.0;   // its index, when kept
};

class summary_failed : public error {
public:
    summary_failed(const std::string& what, std::vector<IterationStats> trace)
        : error(what), trace(std::move(trace)) {}

    std::vector<IterationStats> trace;
};

struct SummarizeResult {
    EquitablePartition best;
    Summary summary;
    std::vector<IterationStats> trace;
    bool from_fallback = false;
};

// Seeded shuffle into k classes of floor(n/k); the remainder lands in C0.
EquitablePartition initial_partition(const Graph& g, int k, std::uint64_t seed,
                                     double epsilon = 0.0);

// 1 - k/n: fraction saved by representing n vertices with k supernodes.
double compression_rate(const EquitablePartition& p);

ReducedGraph build_reduced(const Graph& g, const EquitablePartition& p,
                           const PairVerdicts& verdicts, double d_prime);

// Iterates check/refine, collects refined partitions whose refinement
// verdict is regular, and returns the collected partition with the highest
// index (ties to the fewest classes) together with its reduced graph.
SummarizeResult summarize(const Graph& g, const SummaryConfig& cfg);

// Summary file v1 (text, versioned header, 6 fractional digits for weights).
void save_summary(const Summary& s, std::ostream& out);
void save_summary(const Summary& s, const std::string& path);
Summary load_summary(std::istream& in);
Summary load_summary(const std::string& path);

}  // namespace sze
