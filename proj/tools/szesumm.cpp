// szesumm: summarize graphs into reduced graphs via approximately regular
// partitions, reconstruct them with quantified lp error, and run top-k
// spectral similarity search over a summary store.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sze/bench.hpp"
#include "sze/database.hpp"
#include "sze/parallel.hpp"
#include "sze/reconstruction.hpp"

namespace {

constexpr const char* kVersionLine =
    "szesumm 1.0.0 (summary format v1, store format v1, density-matrix dump SZEDMv1)";

struct SummarizerFlags {
    sze::SummaryConfig cfg;
    bool classic_loop = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--eps", cfg.epsilon, "regularity tolerance in (0,1)")
            ->capture_default_str();
        cmd->add_option("--cmin", cfg.c_min, "minimum compression rate in (0,1)")
            ->capture_default_str();
        cmd->add_option("--dprime", cfg.d_prime, "density floor for reduced-graph edges")
            ->capture_default_str();
        cmd->add_option("--initk", cfg.initial_k, "initial class count")
            ->capture_default_str();
        cmd->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
        cmd->add_flag("--classic-loop", classic_loop,
                      "refine while irregular instead of aborting on irregularity");
        cmd->add_flag("--fallback-last", cfg.fallback_last,
                      "use the last examined partition when no partition is collected");
        cmd->add_flag("--random-partner", cfg.random_partner,
                      "pick irregular partners at random instead of by score");
        cmd->add_option("--split-threshold", cfg.density_split_threshold,
                        "certificate density separating sparsification from densification")
            ->capture_default_str();
    }

    sze::SummaryConfig resolve() const {
        sze::SummaryConfig out = cfg;
        if (classic_loop) out.loop = sze::LoopMode::classic;
        return out;
    }
};

std::unique_ptr<std::ofstream> open_out(const std::string& path) {
    if (path.empty()) return nullptr;
    auto out = std::make_unique<std::ofstream>(path);
    if (!*out) throw sze::io_error("cannot open for writing: " + path);
    return out;
}

std::ostream& out_or_stdout(const std::unique_ptr<std::ofstream>& f) {
    return f ? *f : std::cout;
}

void print_trace(const std::vector<sze::IterationStats>& trace) {
    for (const auto& s : trace)
        std::fprintf(stderr,
                     "iter %d: k=%d m=%d irregular=%d/%d sze=%.6f compression=%.4f%s%s\n",
                     s.iteration, s.k, s.m, s.irregular_pairs, s.total_pairs, s.sze,
                     s.compression, s.refined ? " refined" : "", s.kept ? " kept" : "");
}

int run(int argc, char** argv) {
    CLI::App app{"graph summarization via regular partitions + spectral graph search"};
    app.set_version_flag("--version", kVersionLine);
    app.set_config("--config", "", "key=value config file ([subcommand] sections); flags override");
    int threads = 0;
    app.add_option("--threads", threads, "worker cap for all parallel stages (0 = auto)");
    app.require_subcommand(1);

    // --- summarize ---
    auto* cmd_sum = app.add_subcommand("summarize", "build a summary file from an edge list");
    std::string sum_input, sum_out;
    bool sum_trace = false;
    cmd_sum->add_option("edgelist", sum_input, "input edge list")->required();
    cmd_sum->add_option("--out", sum_out, "summary path (default: stdout)");
    cmd_sum->add_flag("--trace", sum_trace, "print one line per iteration to stderr");
    SummarizerFlags sum_flags;
    sum_flags.attach(cmd_sum);

    // --- reconstruct ---
    auto* cmd_rec = app.add_subcommand("reconstruct",
                                       "blow a summary up and measure reconstruction error");
    std::string rec_summary, rec_ref, rec_dump, rec_out;
    double rec_p = 2.0;
    cmd_rec->add_option("summary", rec_summary, "summary file")->required();
    cmd_rec->add_option("--ref", rec_ref, "reference edge list to compare against");
    cmd_rec->add_option("--p", rec_p, "norm order (1 or 2)")->capture_default_str();
    cmd_rec->add_option("--dump", rec_dump, "write the reconstructed density matrix (binary)");
    cmd_rec->add_option("--out", rec_out, "result path (default: stdout)");

    // --- gen ---
    auto* cmd_gen = app.add_subcommand("gen", "generate a planted-cluster graph");
    sze::GeneratorConfig gen_cfg;
    gen_cfg.n = 1000;
    gen_cfg.num_clusters = 5;
    std::string gen_out, gen_gt_out, gen_labels_out;
    cmd_gen->add_option("--n", gen_cfg.n, "vertex count")->capture_default_str();
    cmd_gen->add_option("--clusters", gen_cfg.num_clusters, "cluster count")
        ->capture_default_str();
    cmd_gen->add_option("--eta1", gen_cfg.eta1, "inter-cluster noise probability")
        ->capture_default_str();
    cmd_gen->add_option("--eta2", gen_cfg.eta2, "intra-cluster noise probability")
        ->capture_default_str();
    cmd_gen->add_option("--seed", gen_cfg.seed, "RNG seed")->capture_default_str();
    cmd_gen->add_option("--out", gen_out, "edge list path (default: stdout)");
    cmd_gen->add_option("--gt-out", gen_gt_out, "also write the noiseless ground truth");
    cmd_gen->add_option("--labels-out", gen_labels_out, "also write cluster labels");

    // --- perturb ---
    auto* cmd_pert = app.add_subcommand("perturb", "add spurious edges to an edge list");
    std::string pert_input, pert_out;
    double pert_prob = 0.05;
    std::uint64_t pert_seed = 42;
    cmd_pert->add_option("edgelist", pert_input, "input edge list")->required();
    cmd_pert->add_option("--prob", pert_prob, "edge-addition probability")
        ->capture_default_str();
    cmd_pert->add_option("--seed", pert_seed, "RNG seed")->capture_default_str();
    cmd_pert->add_option("--out", pert_out, "output path (default: stdout)");

    // --- db add / db query ---
    auto* cmd_db = app.add_subcommand("db", "summary store operations");
    cmd_db->require_subcommand(1);

    auto* cmd_add = cmd_db->add_subcommand("add", "summarize a graph into the store");
    std::string add_input, add_db;
    bool add_with_full = false;
    cmd_add->add_option("edgelist", add_input, "input edge list")->required();
    cmd_add->add_option("--db", add_db, "store path")->required();
    cmd_add->add_flag("--with-full", add_with_full,
                      "also keep the full-graph spectrum (enables one-stage queries)");
    SummarizerFlags add_flags;
    add_flags.attach(cmd_add);

    auto* cmd_query = cmd_db->add_subcommand("query", "top-k most similar stored graphs");
    std::string query_input, query_db, query_out;
    int query_k = 5;
    int query_l = -1;
    bool query_one_stage = false;
    cmd_query->add_option("edgelist", query_input, "query edge list")->required();
    cmd_query->add_option("--db", query_db, "store path")->required();
    cmd_query->add_option("-k,--k", query_k, "result count")->capture_default_str();
    cmd_query->add_option("--l", query_l, "spectral head count (default: half)");
    cmd_query->add_flag("--one-stage", query_one_stage,
                        "rank by full-graph spectra instead of summaries");
    cmd_query->add_option("--out", query_out, "ranking path (default: stdout)");
    SummarizerFlags query_flags;
    query_flags.attach(cmd_query);

    // --- bench ---
    auto* cmd_bench = app.add_subcommand("bench", "experiment drivers (CSV output)");
    cmd_bench->require_subcommand(1);

    auto* cmd_noise = cmd_bench->add_subcommand("noise", "reconstruction error vs noise");
    sze::bench::NoiseOptions noise_opts;
    std::string noise_out;
    cmd_noise->add_option("--sizes", noise_opts.sizes, "graph sizes")->delimiter(',');
    cmd_noise->add_option("--seeds", noise_opts.seeds_per_cell, "seeds per cell")
        ->capture_default_str();
    cmd_noise->add_option("--clusters", noise_opts.num_clusters, "planted cluster count")
        ->capture_default_str();
    cmd_noise->add_option("--base-seed", noise_opts.base_seed, "experiment seed")
        ->capture_default_str();
    bool noise_paper = false;
    cmd_noise->add_flag("--paper-scale", noise_paper, "full-size grids (slow)");
    cmd_noise->add_option("--out", noise_out, "CSV path (default: stdout)");
    SummarizerFlags noise_flags;
    noise_flags.cfg = sze::bench::default_config();
    noise_flags.attach(cmd_noise);

    auto* cmd_quality = cmd_bench->add_subcommand("quality", "MAP@k, two-stage vs one-stage");
    sze::bench::QualityOptions quality_opts;
    std::string quality_out;
    int quality_l = -1;
    cmd_quality->add_option("--n", quality_opts.n, "graph size")->capture_default_str();
    cmd_quality->add_option("--kmax", quality_opts.k_max, "largest k")->capture_default_str();
    cmd_quality->add_option("--l", quality_l, "spectral head count (default: half)");
    cmd_quality->add_option("--base-seed", quality_opts.base_seed, "experiment seed")
        ->capture_default_str();
    bool quality_paper = false;
    cmd_quality->add_flag("--paper-scale", quality_paper, "n=1500 as in the smallest full run");
    cmd_quality->add_option("--out", quality_out, "CSV path (default: stdout)");
    SummarizerFlags quality_flags;
    quality_flags.cfg = sze::bench::default_config();
    quality_flags.attach(cmd_quality);

    auto* cmd_scale = cmd_bench->add_subcommand("scale", "query-time scalability");
    sze::bench::ScaleOptions scale_opts;
    std::string scale_mode = "db-size", scale_out;
    cmd_scale->add_option("--mode", scale_mode, "db-size or graph-size")
        ->check(CLI::IsMember({"db-size", "graph-size"}))
        ->capture_default_str();
    cmd_scale->add_option("--base-seed", scale_opts.base_seed, "experiment seed")
        ->capture_default_str();
    bool scale_paper = false;
    cmd_scale->add_flag("--paper-scale", scale_paper, "full-size sweeps (slow)");
    cmd_scale->add_option("--out", scale_out, "CSV path (default: stdout)");
    SummarizerFlags scale_flags;
    scale_flags.cfg = sze::bench::default_config();
    scale_flags.attach(cmd_scale);

    // global flags (--threads, --config) may follow the subcommand name
    for (CLI::App* sub : app.get_subcommands(nullptr)) {
        sub->fallthrough();
        for (CLI::App* nested : sub->get_subcommands(nullptr)) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints usage or version text
        return code == 0 ? 0 : 1;
    }
    sze::set_max_threads(threads);

    if (cmd_sum->parsed()) {
        const sze::Graph g = sze::load_edge_list(sum_input);
        const sze::SummarizeResult res = sze::summarize(g, sum_flags.resolve());
        if (sum_trace) print_trace(res.trace);
        if (res.from_fallback)
            std::fprintf(stderr, "note: no partition collected; using the last one examined\n");
        auto out = open_out(sum_out);
        sze::save_summary(res.summary, out_or_stdout(out));
        std::fprintf(stderr, "summary: n=%d k=%d sze=%.6f\n", res.summary.reduced.n,
                     res.summary.reduced.k, res.summary.sze);
        return 0;
    }

    if (cmd_rec->parsed()) {
        if (rec_ref.empty() && rec_dump.empty())
            throw CLI::ValidationError("reconstruct", "need --ref and/or --dump");
        if (rec_p != 1.0 && rec_p != 2.0)
            throw sze::contract_error("--p must be 1 or 2");
        const sze::Summary s = sze::load_summary(rec_summary);
        const sze::DensityMatrix a = sze::blow_up(s.reduced, s.internal);
        if (!rec_dump.empty()) sze::dump_density_matrix(a, rec_dump);
        if (!rec_ref.empty()) {
            const sze::Graph ref = sze::load_edge_list(rec_ref, s.reduced.n);
            const sze::DensityMatrix b = sze::to_density_matrix(ref);
            auto out = open_out(rec_out);
            char line[160];
            std::snprintf(line, sizeof line, "l%g raw=%.9g normalized=%.9g\n", rec_p,
                          sze::reconstruction_error(a, b, rec_p, false),
                          sze::reconstruction_error(a, b, rec_p, true));
            out_or_stdout(out) << line;
        }
        return 0;
    }

    if (cmd_gen->parsed()) {
        const sze::GeneratedGraph data = sze::generate(gen_cfg);
        auto out = open_out(gen_out);
        data.g.save_edge_list(out_or_stdout(out));
        if (!gen_gt_out.empty()) data.gt.save_edge_list(gen_gt_out);
        if (!gen_labels_out.empty()) {
            std::ofstream lf(gen_labels_out);
            if (!lf) throw sze::io_error("cannot open for writing: " + gen_labels_out);
            for (std::size_t v = 0; v < data.labels.size(); ++v)
                lf << data.labels[v] << '\n';
        }
        return 0;
    }

    if (cmd_pert->parsed()) {
        sze::LoadStats stats;
        const sze::Graph g = sze::load_edge_list(pert_input, {}, &stats);
        if (stats.dropped_self_loops)
            std::fprintf(stderr, "warning: dropped %d self-loop line(s)\n",
                         stats.dropped_self_loops);
        const sze::Graph noisy = sze::perturb(g, pert_prob, pert_seed);
        auto out = open_out(pert_out);
        noisy.save_edge_list(out_or_stdout(out));
        return 0;
    }

    if (cmd_add->parsed()) {
        sze::LoadStats stats;
        const sze::Graph g = sze::load_edge_list(add_input, {}, &stats);
        if (stats.dropped_self_loops)
            std::fprintf(stderr, "warning: dropped %d self-loop line(s)\n",
                         stats.dropped_self_loops);
        sze::SummaryDb db = sze::SummaryDb::open(add_db);
        const std::int64_t id = db.add(g, add_flags.resolve(), add_input, add_with_full);
        std::fprintf(stderr, "added record %lld (store now holds %zu)\n",
                     static_cast<long long>(id), db.size());
        return 0;
    }

    if (cmd_query->parsed()) {
        const sze::Graph q = sze::load_edge_list(query_input);
        const sze::SummaryDb db = sze::SummaryDb::open(query_db);
        if (query_k > static_cast<int>(db.size()))
            std::fprintf(stderr, "note: k=%d exceeds store size %zu; returning all records\n",
                         query_k, db.size());
        std::optional<int> l;
        if (query_l >= 0) l = query_l;
        sze::QueryTiming timing;
        const auto hits = query_one_stage
                              ? db.query_one_stage(q, query_k, l, &timing)
                              : db.query(q, query_k, query_flags.resolve(), l, &timing);
        auto out = open_out(query_out);
        std::ostream& os = out_or_stdout(out);
        for (std::size_t rank = 0; rank < hits.size(); ++rank) {
            char line[96];
            std::snprintf(line, sizeof line, "%zu %lld %.9g\n", rank + 1,
                          static_cast<long long>(hits[rank].id), hits[rank].distance);
            os << line;
        }
        std::fprintf(stderr, "t_summarize=%.4fs t_eig=%.4fs t_sd=%.4fs\n", timing.t_summarize,
                     timing.t_eig, timing.t_sd);
        return 0;
    }

    if (cmd_noise->parsed()) {
        noise_opts.cfg = noise_flags.resolve();
        noise_opts.paper_scale = noise_paper;
        auto out = open_out(noise_out);
        sze::bench::run_noise_experiment(noise_opts, &out_or_stdout(out));
        return 0;
    }

    if (cmd_quality->parsed()) {
        quality_opts.cfg = quality_flags.resolve();
        if (quality_paper && !cmd_quality->count("--n")) quality_opts.n = 1500;
        if (quality_l >= 0) quality_opts.l = quality_l;
        auto out = open_out(quality_out);
        sze::bench::run_quality_experiment(quality_opts, &out_or_stdout(out));
        return 0;
    }

    if (cmd_scale->parsed()) {
        scale_opts.cfg = scale_flags.resolve();
        scale_opts.mode = scale_mode == "db-size" ? sze::bench::ScaleOptions::Mode::db_size
                                                  : sze::bench::ScaleOptions::Mode::graph_size;
        scale_opts.paper_scale = scale_paper;
        auto out = open_out(scale_out);
        sze::bench::run_scalability_experiment(scale_opts, &out_or_stdout(out));
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const sze::io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const sze::summary_failed& e) {
        std::fprintf(stderr, "error: summarization failed: %s\n", e.what());
        print_trace(e.trace);
        return 1;
    } catch (const sze::error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
