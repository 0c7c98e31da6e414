#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "sze/database.hpp"
#include "sze/metrics.hpp"
#include "sze/synthgen.hpp"

namespace sze::bench {

// Structured inputs need the refine-until-regular loop; every driver here
// uses it with the last-partition fallback enabled.
SummaryConfig default_config();

// ---- noise robustness (reconstruction error vs ground truth) ----

struct NoiseCell {
    std::string section;  // grid | grid_median | sweep_inter | sweep_intra
    int size = 0;
    double eta1 = 0.0, eta2 = 0.0;
    int seed_index = -1;   // -1 on aggregate rows
    bool failed = false;   // summarization failed for this cell
    double err_reconstructed = 0.0;       // l2(A_G', A_GT)
    double err_input = 0.0;               // l2(A_G, A_GT)
    double err_reconstructed_norm = 0.0;
    double err_input_norm = 0.0;
};

struct NoiseOptions {
    std::vector<int> sizes{500, 1000, 2000};
    std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5};
    std::vector<double> sweep{0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
    double sweep_fixed = 0.2;  // the pinned noise level of the single-axis sweeps
    int num_clusters = 5;
    int seeds_per_cell = 5;
    std::uint64_t base_seed = 1;
    SummaryConfig cfg = default_config();
    bool paper_scale = false;  // sizes 1000..10000, one seed per cell
};

struct NoiseResult {
    std::vector<NoiseCell> cells;      // raw per-cell values
    std::vector<NoiseCell> medians;    // grid_median per size + sweep medians
};

NoiseResult run_noise_experiment(NoiseOptions opts, std::ostream* csv);

// ---- search quality (MAP@k, two-stage vs one-stage) ----

struct QualityOptions {
    int n = 1000;
    int k_max = 36;
    std::vector<int> cluster_counts{4, 8, 12, 16, 20};
    std::vector<double> noise_levels{0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
    std::uint64_t base_seed = 7;
    SummaryConfig cfg = default_config();
    std::optional<int> l;  // spectral head count; empty = half per pair
};

struct QualityResult {
    // index [k-1]
    std::vector<double> map_two, map_one;
    // index [k-1][query group]
    std::vector<std::vector<double>> ap_two, ap_one;
    std::vector<int> query_index;  // sampled record per group
};

QualityResult run_quality_experiment(const QualityOptions& opts, std::ostream* csv);

// ---- scalability (query-time decomposition) ----

struct ScaleOptions {
    enum class Mode { db_size, graph_size };
    Mode mode = Mode::db_size;

    int fixed_n = 2000;                              // db_size mode
    std::vector<int> db_sizes{1000, 2000, 3000, 4000, 5000};
    std::vector<int> graph_sizes{500, 1000, 2000, 4000};  // graph_size mode
    int fixed_db = 200;

    std::vector<int> cluster_counts{4, 12, 20};
    std::vector<double> noise_levels{0.1, 0.3};
    int sd_repeats = 50;  // distance sweeps averaged per timing point
    std::uint64_t base_seed = 11;
    SummaryConfig cfg = default_config();
    std::optional<int> l;
    bool paper_scale = false;  // 108-graph base, db sizes up to 10^4
};

struct ScalePoint {
    int x = 0;  // db cardinality or graph size
    QueryTiming two_stage;
    double t1_eig = 0.0, t1_sd = 0.0;
    double t1_total() const { return t1_eig + t1_sd; }
};

std::vector<ScalePoint> run_scalability_experiment(ScaleOptions opts, std::ostream* csv);

}  // namespace sze::bench
