#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sze/metrics.hpp"
#include "sze/synthgen.hpp"

using namespace sze;

namespace {

// empirical density of a vertex-pair family
struct PairDensity {
    double edges = 0.0;
    double pairs = 0.0;
    double value() const { return pairs > 0 ? edges / pairs : 0.0; }
};

PairDensity measure(const Graph& g, const std::vector<int>& labels, bool intra) {
    PairDensity d;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v) {
            const bool same = labels[u] >= 0 && labels[u] == labels[v];
            if (same != intra) continue;
            d.pairs += 1.0;
            if (g.weight(u, v) > 0) d.edges += 1.0;
        }
    return d;
}

}  // namespace

TEST_CASE("generate without noise yields the ground truth itself") {
    GeneratorConfig cfg;
    cfg.n = 60;
    cfg.num_clusters = 3;
    cfg.seed = 5;
    const auto data = generate(cfg);
    CHECK(data.g.edge_count() == data.gt.edge_count());
    for (int u = 0; u < cfg.n; ++u)
        for (int v = u + 1; v < cfg.n; ++v) CHECK(data.g.weight(u, v) == data.gt.weight(u, v));
    // gt is the union of cliques on the label blocks
    for (int u = 0; u < cfg.n; ++u)
        for (int v = u + 1; v < cfg.n; ++v) {
            const bool same = data.labels[u] == data.labels[v];
            CHECK((data.gt.weight(u, v) > 0) == same);
        }
}

TEST_CASE("generate with full intra noise and no background is edgeless") {
    GeneratorConfig cfg;
    cfg.n = 40;
    cfg.num_clusters = 4;
    cfg.eta1 = 0.0;
    cfg.eta2 = 1.0;
    cfg.seed = 6;
    const auto data = generate(cfg);
    CHECK(data.g.edge_count() == 0);
    CHECK(data.gt.edge_count() > 0);
}

TEST_CASE("generated densities concentrate around 1-eta2 and eta1") {
    GeneratorConfig cfg;
    cfg.n = 2000;
    cfg.num_clusters = 5;
    cfg.eta1 = 0.4;
    cfg.eta2 = 0.2;
    cfg.seed = 7;
    const auto data = generate(cfg);
    const PairDensity intra = measure(data.g, data.labels, true);
    const PairDensity inter = measure(data.g, data.labels, false);
    const double sd_intra = std::sqrt(0.8 * 0.2 / intra.pairs);
    const double sd_inter = std::sqrt(0.4 * 0.6 / inter.pairs);
    CHECK(std::abs(intra.value() - 0.8) < 3.0 * sd_intra);
    CHECK(std::abs(inter.value() - 0.4) < 3.0 * sd_inter);
}

TEST_CASE("generate is deterministic per seed and validates its config") {
    GeneratorConfig cfg;
    cfg.n = 50;
    cfg.num_clusters = 5;
    cfg.eta1 = 0.3;
    cfg.eta2 = 0.3;
    cfg.seed = 11;
    const auto a = generate(cfg);
    const auto b = generate(cfg);
    CHECK(a.labels == b.labels);
    CHECK(a.g.edge_count() == b.g.edge_count());
    for (int u = 0; u < cfg.n; ++u)
        for (int v = u + 1; v < cfg.n; ++v) CHECK(a.g.weight(u, v) == b.g.weight(u, v));

    cfg.num_clusters = 30;  // cluster_dim = 1
    CHECK_THROWS_AS(generate(cfg), contract_error);
    cfg.num_clusters = 5;
    cfg.eta1 = 1.5;
    CHECK_THROWS_AS(generate(cfg), contract_error);
}

TEST_CASE("perturb keeps existing edges and respects the extremes") {
    const Graph g = oracle::er_graph(60, 0.2, 21);
    const Graph same = perturb(g, 0.0, 9);
    CHECK(same.edge_count() == g.edge_count());

    const Graph full = perturb(g, 1.0, 9);
    CHECK(full.edge_count() == 60LL * 59 / 2);

    const Graph noisy = perturb(g, 0.3, 9);
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (g.weight(u, v) > 0) CHECK(noisy.weight(u, v) == g.weight(u, v));
}

TEST_CASE("perturb edge count concentrates binomially") {
    const Graph empty = Graph::from_edges(500, {});
    const Graph noisy = perturb(empty, 0.1, 33);
    const double pairs = 500.0 * 499.0 / 2.0;
    const double expected = 0.1 * pairs;
    const double sd = std::sqrt(pairs * 0.1 * 0.9);
    CHECK(std::abs(static_cast<double>(noisy.edge_count()) - expected) < 3.0 * sd);
}

TEST_CASE("ap_at_k closed forms") {
    const std::vector<std::int64_t> ranking = {10, 11, 12, 13};
    CHECK(ap_at_k(ranking, {10, 11}, 2) == doctest::Approx(1.0));
    CHECK(ap_at_k(ranking, {11, 13}, 2) == doctest::Approx(0.25));  // (1/2)(0 + 1/2)
    CHECK(ap_at_k(ranking, {10, 11}, 0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(ap_at_k(ranking, {}, 2), contract_error);
    CHECK_THROWS_AS(ap_at_k(ranking, {10}, 9), contract_error);
}

TEST_CASE("ap_at_k is monotone in k and 1 for a perfect prefix") {
    Rng rng = make_rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::int64_t> ranking(20);
        std::iota(ranking.begin(), ranking.end(), 0);
        shuffle(ranking, rng);
        std::unordered_set<std::int64_t> relevant;
        for (int i = 0; i < 6; ++i) relevant.insert(static_cast<std::int64_t>(bounded(rng, 20)));
        double prev = 0.0;
        for (int k = 0; k <= 20; ++k) {
            const double ap = ap_at_k(ranking, relevant, k);
            CHECK(ap >= prev - 1e-12);
            prev = ap;
        }
    }
    // all relevant at the head: AP@|relevant| = 1
    const std::vector<std::int64_t> perfect = {0, 1, 2, 3, 4};
    CHECK(ap_at_k(perfect, {0, 1, 2}, 3) == doctest::Approx(1.0));
}

TEST_CASE("map_at_k averages per-query precision") {
    CHECK(map_at_k({1.0, 0.5}) == doctest::Approx(0.75));
    CHECK(map_at_k({0.0, 0.0, 0.0}) == doctest::Approx(0.0));
    CHECK(map_at_k({0.7}) == doctest::Approx(0.7));
    CHECK_THROWS_AS(map_at_k({}), contract_error);
}
