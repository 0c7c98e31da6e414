#include "sze/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "sze/parallel.hpp"
#include "sze/reconstruction.hpp"

namespace sze::bench {

namespace {

double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace

SummaryConfig default_config() {
    SummaryConfig cfg;
    cfg.loop = LoopMode::classic;
    cfg.fallback_last = true;
    return cfg;
}

// ---- noise ----

namespace {

void compute_noise_cell(NoiseCell& cell, const SummaryConfig& cfg, int num_clusters,
                        std::uint64_t gen_seed) {
    GeneratorConfig gen;
    gen.n = cell.size;
    gen.num_clusters = num_clusters;
    gen.eta1 = cell.eta1;
    gen.eta2 = cell.eta2;
    gen.seed = gen_seed;
    GeneratedGraph data = generate(gen);

    const DensityMatrix a_gt = to_density_matrix(data.gt);
    {
        const DensityMatrix a_g = to_density_matrix(data.g);
        cell.err_input = reconstruction_error(a_g, a_gt, 2.0, false);
        cell.err_input_norm = reconstruction_error(a_g, a_gt, 2.0, true);
    }
    try {
        const SummarizeResult res = summarize(data.g, cfg);
        const DensityMatrix a_rec = blow_up(res.summary.reduced, res.summary.internal);
        cell.err_reconstructed = reconstruction_error(a_rec, a_gt, 2.0, false);
        cell.err_reconstructed_norm = reconstruction_error(a_rec, a_gt, 2.0, true);
    } catch (const summary_failed&) {
        cell.failed = true;
    }
}

void emit_noise_csv(const NoiseResult& result, std::ostream& csv) {
    csv << "section,size,eta1,eta2,seed,l2_reconstructed,l2_input,"
           "l2_reconstructed_norm,l2_input_norm\n";
    auto row = [&](const NoiseCell& c) {
        csv << c.section << ',' << c.size << ',' << fmt(c.eta1) << ',' << fmt(c.eta2) << ','
            << c.seed_index << ',';
        if (c.failed)
            csv << ",";  // missing values, never aborts the sweep
        else
            csv << fmt(c.err_reconstructed) << ',' << fmt(c.err_input);
        csv << ',';
        if (!c.failed)
            csv << fmt(c.err_reconstructed_norm) << ',' << fmt(c.err_input_norm);
        else
            csv << ',';
        csv << '\n';
    };
    for (const auto& c : result.cells) row(c);
    for (const auto& c : result.medians) row(c);
}

}  // namespace

NoiseResult run_noise_experiment(NoiseOptions opts, std::ostream* csv) {
    if (opts.paper_scale) {
        opts.sizes.clear();
        for (int n = 1000; n <= 10000; n += 1000) opts.sizes.push_back(n);
        opts.seeds_per_cell = 1;
    }

    NoiseResult result;
    // canonical cell order: section, size, eta1, eta2, seed
    for (int size : opts.sizes)
        for (double e1 : opts.grid)
            for (double e2 : opts.grid)
                for (int s = 0; s < opts.seeds_per_cell; ++s)
                    result.cells.push_back({"grid", size, e1, e2, s});
    const int sweep_size = opts.sizes.empty() ? 0 : opts.sizes.back();
    for (double e1 : opts.sweep)
        for (int s = 0; s < opts.seeds_per_cell; ++s)
            result.cells.push_back({"sweep_inter", sweep_size, e1, opts.sweep_fixed, s});
    for (double e2 : opts.sweep)
        for (int s = 0; s < opts.seeds_per_cell; ++s)
            result.cells.push_back({"sweep_intra", sweep_size, opts.sweep_fixed, e2, s});

    parallel_for(static_cast<std::int64_t>(result.cells.size()),
                 [&](std::int64_t lo, std::int64_t hi) {
                     for (std::int64_t i = lo; i < hi; ++i)
                         compute_noise_cell(result.cells[i], opts.cfg, opts.num_clusters,
                                            opts.base_seed + 0x9e3779b9ULL * i);
                 });

    // grid medians per size, sweep medians per axis point
    for (int size : opts.sizes) {
        std::vector<double> rec, input, rec_n, input_n;
        for (const auto& c : result.cells)
            if (c.section == "grid" && c.size == size && !c.failed) {
                rec.push_back(c.err_reconstructed);
                input.push_back(c.err_input);
                rec_n.push_back(c.err_reconstructed_norm);
                input_n.push_back(c.err_input_norm);
            }
        NoiseCell m{"grid_median", size, -1.0, -1.0, -1};
        m.err_reconstructed = median(rec);
        m.err_input = median(input);
        m.err_reconstructed_norm = median(rec_n);
        m.err_input_norm = median(input_n);
        result.medians.push_back(m);
    }
    auto sweep_median = [&](const std::string& section, double value, bool inter) {
        std::vector<double> rec, input, rec_n, input_n;
        for (const auto& c : result.cells)
            if (c.section == section && (inter ? c.eta1 : c.eta2) == value && !c.failed) {
                rec.push_back(c.err_reconstructed);
                input.push_back(c.err_input);
                rec_n.push_back(c.err_reconstructed_norm);
                input_n.push_back(c.err_input_norm);
            }
        NoiseCell m{section + "_median", sweep_size, inter ? value : opts.sweep_fixed,
                    inter ? opts.sweep_fixed : value, -1};
        m.err_reconstructed = median(rec);
        m.err_input = median(input);
        m.err_reconstructed_norm = median(rec_n);
        m.err_input_norm = median(input_n);
        result.medians.push_back(m);
    };
    for (double e1 : opts.sweep) sweep_median("sweep_inter", e1, true);
    for (double e2 : opts.sweep) sweep_median("sweep_intra", e2, false);

    if (csv) emit_noise_csv(result, *csv);
    return result;
}

// ---- quality ----

QualityResult run_quality_experiment(const QualityOptions& opts, std::ostream* csv) {
    struct Entry {
        int group = 0;
        std::uint64_t gen_seed = 0;
        GeneratorConfig gen;
        SpectralSignature reduced_sig;
        SpectralSignature full_sig;
    };
    std::vector<Entry> entries;
    for (std::size_t gi = 0; gi < opts.cluster_counts.size(); ++gi)
        for (double e2 : opts.noise_levels)
            for (double e1 : opts.noise_levels) {
                Entry e;
                e.group = static_cast<int>(gi);
                e.gen.n = opts.n;
                e.gen.num_clusters = opts.cluster_counts[gi];
                e.gen.eta1 = e1;
                e.gen.eta2 = e2;
                e.gen.seed = opts.base_seed + 0x51ed2701ULL * entries.size();
                entries.push_back(std::move(e));
            }

    parallel_for(static_cast<std::int64_t>(entries.size()),
                 [&](std::int64_t lo, std::int64_t hi) {
                     for (std::int64_t i = lo; i < hi; ++i) {
                         Entry& e = entries[i];
                         const GeneratedGraph data = generate(e.gen);
                         const SummarizeResult res = summarize(data.g, opts.cfg);
                         e.reduced_sig = spectrum(res.summary.reduced);
                         e.full_sig = spectrum(data.g);
                     }
                 });

    std::vector<SpectralSignature> reduced_store, full_store;
    for (const auto& e : entries) {
        reduced_store.push_back(e.reduced_sig);
        full_store.push_back(e.full_sig);
    }

    // one query per group, sampled with the experiment seed
    const int per_group = static_cast<int>(opts.noise_levels.size() * opts.noise_levels.size());
    const int groups = static_cast<int>(opts.cluster_counts.size());
    Rng rng = make_rng(opts.base_seed, 1);
    QualityResult result;
    for (int gi = 0; gi < groups; ++gi)
        result.query_index.push_back(gi * per_group +
                                     static_cast<int>(bounded(rng, per_group)));

    const int total = static_cast<int>(entries.size());
    const int k_max = std::min(opts.k_max, total);
    result.map_two.assign(k_max, 0.0);
    result.map_one.assign(k_max, 0.0);
    result.ap_two.assign(k_max, std::vector<double>(groups, 0.0));
    result.ap_one.assign(k_max, std::vector<double>(groups, 0.0));

    for (int gi = 0; gi < groups; ++gi) {
        const Entry& q = entries[result.query_index[gi]];
        const GeneratedGraph data = generate(q.gen);  // regenerate the sampled query

        const SummarizeResult res = summarize(data.g, opts.cfg);
        const SpectralSignature q_two = spectrum(res.summary.reduced);
        const SpectralSignature q_one = spectrum(data.g);

        const auto hits_two = rank_by_spectral_distance(q_two, reduced_store, total, opts.l);
        const auto hits_one = rank_by_spectral_distance(q_one, full_store, total, opts.l);

        std::unordered_set<std::int64_t> relevant;
        for (int i = 0; i < total; ++i)
            if (entries[i].group == gi) relevant.insert(i);

        std::vector<std::int64_t> rank_two, rank_one;
        for (const auto& h : hits_two) rank_two.push_back(h.id);
        for (const auto& h : hits_one) rank_one.push_back(h.id);
        for (int k = 1; k <= k_max; ++k) {
            result.ap_two[k - 1][gi] = ap_at_k(rank_two, relevant, k);
            result.ap_one[k - 1][gi] = ap_at_k(rank_one, relevant, k);
        }
    }
    for (int k = 1; k <= k_max; ++k) {
        result.map_two[k - 1] = map_at_k(result.ap_two[k - 1]);
        result.map_one[k - 1] = map_at_k(result.ap_one[k - 1]);
    }

    if (csv) {
        *csv << "k,map_two_stage,map_one_stage";
        for (int gi = 0; gi < groups; ++gi) *csv << ",ap_two_g" << gi;
        for (int gi = 0; gi < groups; ++gi) *csv << ",ap_one_g" << gi;
        *csv << '\n';
        for (int k = 1; k <= k_max; ++k) {
            *csv << k << ',' << fmt(result.map_two[k - 1]) << ',' << fmt(result.map_one[k - 1]);
            for (int gi = 0; gi < groups; ++gi) *csv << ',' << fmt(result.ap_two[k - 1][gi]);
            for (int gi = 0; gi < groups; ++gi) *csv << ',' << fmt(result.ap_one[k - 1][gi]);
            *csv << '\n';
        }
    }
    return result;
}

// ---- scalability ----

namespace {

struct BaseCorpus {
    std::vector<SpectralSignature> reduced_sigs;
    std::vector<SpectralSignature> full_sigs;
};

BaseCorpus build_base(int n, const ScaleOptions& opts) {
    std::vector<GeneratorConfig> gens;
    for (int clusters : opts.cluster_counts)
        for (double e2 : opts.noise_levels)
            for (double e1 : opts.noise_levels) {
                GeneratorConfig g;
                g.n = n;
                g.num_clusters = clusters;
                g.eta1 = e1;
                g.eta2 = e2;
                g.seed = opts.base_seed + 0x2545f491ULL * gens.size();
                gens.push_back(g);
            }
    BaseCorpus base;
    base.reduced_sigs.resize(gens.size());
    base.full_sigs.resize(gens.size());
    parallel_for(static_cast<std::int64_t>(gens.size()), [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const GeneratedGraph data = generate(gens[i]);
            const SummarizeResult res = summarize(data.g, opts.cfg);
            base.reduced_sigs[i] = spectrum(res.summary.reduced);
            base.full_sigs[i] = spectrum(data.g);
        }
    });
    return base;
}

std::vector<SpectralSignature> replicate(const std::vector<SpectralSignature>& base,
                                         int target) {
    std::vector<SpectralSignature> out;
    out.reserve(target);
    for (int i = 0; i < target; ++i) out.push_back(base[i % base.size()]);
    return out;
}

Graph make_query(int n, const ScaleOptions& opts) {
    GeneratorConfig g;
    g.n = n;
    g.num_clusters = opts.cluster_counts.front();
    g.eta1 = opts.noise_levels.front();
    g.eta2 = opts.noise_levels.back();
    g.seed = opts.base_seed ^ 0xabcdef123ULL;
    return generate(g).g;
}

double timed_sd_sweep(const SpectralSignature& q, const std::vector<SpectralSignature>& store,
                      std::optional<int> l, int repeats) {
    double total = 0.0;
    for (int r = 0; r < repeats; ++r) {
        double t = 0.0;
        rank_by_spectral_distance(q, store, static_cast<int>(store.size()), l, &t);
        total += t;
    }
    return total / repeats;
}

ScalePoint measure_point(int x, const Graph& query, const BaseCorpus& base, int db_size,
                         const ScaleOptions& opts) {
    ScalePoint pt;
    pt.x = x;

    auto t0 = std::chrono::steady_clock::now();
    const SummarizeResult res = summarize(query, opts.cfg);
    pt.two_stage.t_summarize = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const SpectralSignature q_two = spectrum(res.summary.reduced);
    pt.two_stage.t_eig = seconds_since(t0);

    const auto reduced_store = replicate(base.reduced_sigs, db_size);
    pt.two_stage.t_sd = timed_sd_sweep(q_two, reduced_store, opts.l, opts.sd_repeats);

    t0 = std::chrono::steady_clock::now();
    const SpectralSignature q_one = spectrum(query);
    pt.t1_eig = seconds_since(t0);

    const auto full_store = replicate(base.full_sigs, db_size);
    pt.t1_sd = timed_sd_sweep(q_one, full_store, opts.l, std::max(1, opts.sd_repeats / 10));
    return pt;
}

}  // namespace

std::vector<ScalePoint> run_scalability_experiment(ScaleOptions opts, std::ostream* csv) {
    if (opts.paper_scale) {
        opts.noise_levels = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
        opts.cluster_counts = {4, 12, 20};
        opts.db_sizes.clear();
        for (int s = 1000; s <= 10000; s += 1000) opts.db_sizes.push_back(s);
        opts.fixed_db = 10000;
    }

    std::vector<ScalePoint> points;
    if (opts.mode == ScaleOptions::Mode::db_size) {
        const BaseCorpus base = build_base(opts.fixed_n, opts);
        const Graph query = make_query(opts.fixed_n, opts);
        for (int db_size : opts.db_sizes)
            points.push_back(measure_point(db_size, query, base, db_size, opts));
    } else {
        for (int n : opts.graph_sizes) {
            const BaseCorpus base = build_base(n, opts);
            const Graph query = make_query(n, opts);
            points.push_back(measure_point(n, query, base, opts.fixed_db, opts));
        }
    }

    if (csv) {
        *csv << "mode,x,t_summarize,t_eig,t_sd,t_total,t1_eig,t1_sd,t1_total\n";
        const char* mode = opts.mode == ScaleOptions::Mode::db_size ? "db-size" : "graph-size";
        for (const auto& pt : points)
            *csv << mode << ',' << pt.x << ',' << fmt(pt.two_stage.t_summarize) << ','
                 << fmt(pt.two_stage.t_eig) << ',' << fmt(pt.two_stage.t_sd) << ','
                 << fmt(pt.two_stage.total()) << ',' << fmt(pt.t1_eig) << ',' << fmt(pt.t1_sd)
                 << ',' << fmt(pt.t1_total()) << '\n';
    }
    return points;
}

}  // namespace sze::bench
