#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "sze/summarizer.hpp"
#include "sze/synthgen.hpp"

using namespace sze;

namespace {

Graph complete_graph(int n) {
    std::vector<std::tuple<int, int, float>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v, 1.0f);
    return Graph::from_edges(n, edges);
}

SummaryConfig classic_config(double eps = 0.5) {
    SummaryConfig cfg;
    cfg.epsilon = eps;
    cfg.loop = LoopMode::classic;
    return cfg;
}

}  // namespace

TEST_CASE("initial_partition sizes and determinism") {
    const Graph g10 = Graph::from_edges(10, {});
    const auto p = initial_partition(g10, 3, 1);
    CHECK(p.k() == 3);
    CHECK(p.class_size() == 3);
    CHECK(p.c0.size() == 1);
    p.validate();

    const Graph g8 = Graph::from_edges(8, {});
    const auto q = initial_partition(g8, 2, 1);
    CHECK(q.class_size() == 4);
    CHECK(q.c0.empty());

    const auto p2 = initial_partition(g10, 3, 1);
    CHECK(p.classes == p2.classes);
    CHECK(p.c0 == p2.c0);
    const auto p3 = initial_partition(g10, 3, 2);
    CHECK(p.classes != p3.classes);

    CHECK_THROWS_AS(initial_partition(g8, 9, 0), contract_error);
}

TEST_CASE("compression_rate closed forms") {
    EquitablePartition p;
    p.n = 1000;
    p.classes.assign(10, VertexSet{});
    CHECK(compression_rate(p) == doctest::Approx(0.99));
    p.n = 4;
    p.classes.assign(4, VertexSet{});
    CHECK(compression_rate(p) == doctest::Approx(0.0));
    p.n = 2000;
    p.classes.assign(64, VertexSet{});
    CHECK(compression_rate(p) == doctest::Approx(0.968));
}

TEST_CASE("build_reduced applies the weight rule") {
    const int n = 12;
    Rng rng = make_rng(4);
    std::vector<std::tuple<int, int, float>> edges;
    // pair (0,1) dense 0.7-ish, pair (0,2) sparse 0.1-ish, pair (1,2) dense 0.9-ish
    auto block = [&](int a, int b, double p) {
        for (int u = 4 * a; u < 4 * a + 4; ++u)
            for (int v = 4 * b; v < 4 * b + 4; ++v)
                if (bernoulli(rng, p)) edges.emplace_back(u, v, 1.0f);
    };
    block(0, 1, 0.7);
    block(0, 2, 0.1);
    block(1, 2, 0.9);
    const Graph g = Graph::from_edges(n, edges);
    EquitablePartition p;
    p.n = n;
    p.epsilon = 0.5;
    p.classes = {oracle::range_set(0, 4), oracle::range_set(4, 8), oracle::range_set(8, 12)};

    PairVerdicts verdicts(3);
    verdicts.at(1, 2).status = PairVerdict::Status::irregular;  // irregularity gates
    verdicts.at(1, 2).definition_regular = false;
    const double d01 = edge_density(g, p.classes[0], p.classes[1]);
    const double d02 = edge_density(g, p.classes[0], p.classes[2]);

    const auto r = build_reduced(g, p, verdicts, /*d_prime=*/std::max(0.2, d02 + 0.01));
    CHECK(r.weights(0, 1) == doctest::Approx(d01));  // regular, above floor
    CHECK(r.weights(0, 2) == 0.0);                   // below floor
    CHECK(r.weights(1, 2) == 0.0);                   // irregular
    CHECK(r.weights(1, 0) == r.weights(0, 1));
    for (int c = 0; c < 3; ++c) CHECK(r.weights(c, c) == 0.0);
    // membership covers everything (no C0 here)
    for (int v = 0; v < n; ++v) CHECK(r.membership[v] == v / 4);
}

TEST_CASE("build_reduced zeroes pairs that fail the regularity definition outright") {
    // half of the second class fully attached, half detached: subsets larger
    // than eps*m show a density gap of ~0.5
    const int m = 40;
    std::vector<std::tuple<int, int, float>> edges;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m / 2; ++j) edges.emplace_back(i, m + j, 1.0f);
    const Graph g = Graph::from_edges(2 * m, edges);
    EquitablePartition p;
    p.n = 2 * m;
    p.epsilon = 0.3;
    p.classes = {oracle::range_set(0, m), oracle::range_set(m, 2 * m)};
    const auto verdicts = check_all_pairs(g, p);
    CHECK_FALSE(verdicts.at(0, 1).definition_regular);
    const auto r = build_reduced(g, p, verdicts, 0.0);
    CHECK(r.weights(0, 1) == 0.0);
}

TEST_CASE("summarize on a complete graph via fallback returns the initial partition") {
    const Graph g = complete_graph(16);
    SummaryConfig cfg = classic_config();
    cfg.initial_k = 4;
    cfg.c_min = 0.9;  // 1 - 4/16 = 0.75 < 0.9, nothing is ever collected
    cfg.loop = LoopMode::literal;
    CHECK_THROWS_AS(summarize(g, cfg), summary_failed);

    cfg.fallback_last = true;
    const auto res = summarize(g, cfg);
    CHECK(res.from_fallback);
    CHECK(res.summary.reduced.k == 4);
    for (int s = 0; s < 4; ++s)
        for (int t = s + 1; t < 4; ++t)
            CHECK(res.summary.reduced.weights(s, t) == doctest::Approx(1.0));
    for (double d : res.summary.internal) CHECK(d == doctest::Approx(0.375));
}

TEST_CASE("summarize on an edgeless graph is regular with zero weights") {
    const Graph g = Graph::from_edges(64, {});
    const auto res = summarize(g, classic_config(0.3));
    CHECK(res.trace.front().irregular_pairs == 0);
    CHECK(res.summary.reduced.weights.norm() == 0.0);
    CHECK_FALSE(res.from_fallback);
}

TEST_CASE("summarize recovers planted cliques") {
    // union of 4 equal cliques; weighted-majority purity of the selected
    // partition's classes, measured over 10 seeds (frozen from the oracle:
    // mean 0.935, min 0.901 at these settings)
    double mean = 0.0, min_purity = 1.0;
    const int runs = 10;
    for (std::uint64_t seed = 0; seed < runs; ++seed) {
        GeneratorConfig gen;
        gen.n = 400;
        gen.num_clusters = 4;
        gen.eta1 = 0.0;
        gen.eta2 = 0.0;
        gen.seed = seed + 100;
        const GeneratedGraph data = generate(gen);
        SummaryConfig cfg = classic_config(0.3);
        cfg.c_min = 0.9;
        cfg.seed = seed;
        cfg.fallback_last = true;
        const auto res = summarize(data.g, cfg);
        const double purity = oracle::class_purity(res.best.classes, data.labels);
        mean += purity;
        min_purity = std::min(min_purity, purity);
    }
    mean /= runs;
    CHECK(mean >= 0.92);
    CHECK(min_purity >= 0.87);
}

TEST_CASE("summarize trace: argmax selection and iteration bound") {
    // complete graphs stay exactly regular at every scale, so the literal
    // loop refines down to the compression floor
    std::vector<std::tuple<int, int, float>> edges;
    const int n = 96;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v, 1.0f);
    const Graph g = Graph::from_edges(n, edges);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        SummaryConfig cfg = classic_config(0.5);
        cfg.loop = LoopMode::literal;
        cfg.c_min = 0.7;
        cfg.seed = seed;
        const auto res = summarize(g, cfg);
        double best_kept = -1.0;
        for (const auto& s : res.trace)
            if (s.kept) best_kept = std::max(best_kept, s.kept_sze);
        REQUIRE(best_kept >= 0.0);
        CHECK(res.summary.sze == doctest::Approx(best_kept));
        // K_n: densities all 1, the deepest collected partition wins
        CHECK(res.summary.reduced.k == 32);
        CHECK(res.summary.sze == doctest::Approx(31.0 / 64.0));
        // iteration count bounded by log2(n / initial_k) + 1
        const double bound = std::log2(96.0 / cfg.initial_k) + 1.0;
        CHECK(static_cast<double>(res.trace.size()) <= bound + 1e-9);
    }
}

TEST_CASE("summarize is deterministic") {
    GeneratorConfig gen;
    gen.n = 120;
    gen.num_clusters = 3;
    gen.eta1 = 0.15;
    gen.eta2 = 0.15;
    gen.seed = 42;
    const Graph g = generate(gen).g;
    SummaryConfig cfg = classic_config(0.5);
    cfg.fallback_last = true;
    const auto a = summarize(g, cfg);
    const auto b = summarize(g, cfg);
    std::ostringstream sa, sb;
    save_summary(a.summary, sa);
    save_summary(b.summary, sb);
    CHECK(sa.str() == sb.str());
}

TEST_CASE("summary file round-trips") {
    GeneratorConfig gen;
    gen.n = 90;
    gen.num_clusters = 3;
    gen.eta1 = 0.2;
    gen.eta2 = 0.2;
    gen.seed = 7;
    const Graph g = generate(gen).g;
    SummaryConfig cfg = classic_config(0.5);
    cfg.fallback_last = true;
    cfg.c_min = 0.8;
    cfg.d_prime = 0.05;
    const auto res = summarize(g, cfg);

    std::ostringstream first;
    save_summary(res.summary, first);
    std::istringstream in(first.str());
    const Summary loaded = load_summary(in);
    std::ostringstream second;
    save_summary(loaded, second);
    CHECK(first.str() == second.str());
    CHECK(loaded.reduced.k == res.summary.reduced.k);
    CHECK(loaded.reduced.n == res.summary.reduced.n);
    CHECK(loaded.reduced.membership == res.summary.reduced.membership);
    CHECK(loaded.d_prime == doctest::Approx(0.05));

    // header line is pinned
    CHECK(first.str().rfind("SZE-SUMMARY v1\n", 0) == 0);

    std::istringstream bad("SZE-SUMMARY v2\n");
    CHECK_THROWS_AS(load_summary(bad), parse_error);
}

TEST_CASE("config validation rejects out-of-range values") {
    SummaryConfig cfg;
    cfg.epsilon = 0.0;
    CHECK_THROWS_AS(cfg.validate(), contract_error);
    cfg = {};
    cfg.c_min = 1.5;
    CHECK_THROWS_AS(cfg.validate(), contract_error);
    cfg = {};
    cfg.initial_k = 1;
    CHECK_THROWS_AS(cfg.validate(), contract_error);
    cfg = {};
    CHECK_NOTHROW(cfg.validate());
}
