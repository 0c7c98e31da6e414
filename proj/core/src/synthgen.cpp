#include "sze/synthgen.hpp"

#include <numeric>

#include "sze/rng.hpp"

namespace sze {

void GeneratorConfig::validate() const {
    if (n < 1) throw contract_error("generator: n must be positive");
    if (num_clusters < 1) throw contract_error("generator: need at least one cluster");
    if (cluster_dim() < 2) throw contract_error("generator: clusters need at least 2 vertices");
    if (!(eta1 >= 0.0 && eta1 <= 1.0) || !(eta2 >= 0.0 && eta2 <= 1.0))
        throw contract_error("generator: noise probabilities must lie in [0,1]");
}

GeneratedGraph generate(const GeneratorConfig& cfg) {
    cfg.validate();
    Rng rng = make_rng(cfg.seed);

    std::vector<int> perm(cfg.n);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle(perm, rng);

    const int dim = cfg.cluster_dim();
    GeneratedGraph out;
    out.labels.assign(cfg.n, -1);
    for (int c = 0; c < cfg.num_clusters; ++c)
        for (int i = 0; i < dim; ++i) out.labels[perm[static_cast<std::size_t>(c) * dim + i]] = c;

    std::vector<std::tuple<int, int, float>> noisy, clean;
    for (int u = 0; u < cfg.n; ++u)
        for (int v = u + 1; v < cfg.n; ++v) {
            const bool same = out.labels[u] >= 0 && out.labels[u] == out.labels[v];
            if (same) {
                clean.emplace_back(u, v, 1.0f);
                if (!bernoulli(rng, cfg.eta2)) noisy.emplace_back(u, v, 1.0f);
            } else if (bernoulli(rng, cfg.eta1)) {
                noisy.emplace_back(u, v, 1.0f);
            }
        }
    out.g = Graph::from_edges(cfg.n, noisy, Graph::kDefaultDenseThreshold, /*assume_unique=*/true);
    out.gt = Graph::from_edges(cfg.n, clean, Graph::kDefaultDenseThreshold, /*assume_unique=*/true);
    return out;
}

Graph perturb(const Graph& g, double noise_probability, std::uint64_t seed) {
    if (!(noise_probability >= 0.0 && noise_probability <= 1.0))
        throw contract_error("perturb: probability must lie in [0,1]");
    Rng rng = make_rng(seed);
    std::vector<std::tuple<int, int, float>> edges;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v) {
            const float w = g.weight(u, v);
            if (w > 0.0f)
                edges.emplace_back(u, v, w);
            else if (bernoulli(rng, noise_probability))
                edges.emplace_back(u, v, 1.0f);
        }
    return Graph::from_edges(g.n(), edges, Graph::kDefaultDenseThreshold, /*assume_unique=*/true);
}

}  // namespace sze
