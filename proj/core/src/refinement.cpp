#include "sze/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sze {

UnzipResult unzip(const VertexSet& sorted_vertices) {
    UnzipResult r;
    std::size_t len = sorted_vertices.size();
    if (len % 2 == 1) {
        r.leftover = sorted_vertices[len - 1];
        --len;
    }
    for (std::size_t i = 0; i < len; ++i)
        (i % 2 == 0 ? r.first : r.second).push_back(sorted_vertices[i]);
    return r;
}

VertexSet sort_by_internal_degree(const Graph& g, const VertexSet& c) {
    std::vector<double> deg(c.size(), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j)
            if (i != j) deg[i] += g.weight(c[i], c[j]);
    std::vector<std::size_t> order(c.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (deg[a] != deg[b]) return deg[a] > deg[b];
        return c[a] < c[b];
    });
    VertexSet out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[order[i]];
    return out;
}

int select_partner(const Graph& g, const std::vector<VertexSet>& classes, int i,
                   const std::vector<int>& candidates) {
    if (candidates.empty()) throw contract_error("select_partner: no candidates");
    const double di = internal_density(g, classes[i]);
    int best = -1;
    double best_score = -1.0;
    for (int j : candidates) {
        const double score = edge_density(g, classes[i], classes[j]) +
                             (1.0 - std::abs(di - internal_density(g, classes[j])));
        if (score > best_score || (score == best_score && j < best)) {
            best_score = score;
            best = j;
        }
    }
    return best;
}

namespace {

// Moves pool vertices into `half` until it reaches target, picking the one
// with the extreme (min or max) weighted connection count into the half so
// far; ties by ascending vertex id. Updates counts incrementally.
void top_up(const Graph& g, VertexSet& half, std::vector<int>& pool,
            std::vector<double>& pool_conn, int target, bool want_max) {
    for (std::size_t p = 0; p < pool.size(); ++p) {
        pool_conn[p] = 0.0;
        for (int u : half) pool_conn[p] += g.weight(pool[p], u);
    }
    while (static_cast<int>(half.size()) < target) {
        if (pool.empty())
            throw degenerate_split("top-up pool exhausted before reaching target size");
        std::size_t pick = 0;
        for (std::size_t p = 1; p < pool.size(); ++p) {
            const bool better = want_max ? pool_conn[p] > pool_conn[pick]
                                         : pool_conn[p] < pool_conn[pick];
            if (better || (pool_conn[p] == pool_conn[pick] && pool[p] < pool[pick]))
                pick = p;
        }
        const int v = pool[pick];
        pool[pick] = pool.back();
        pool.pop_back();
        pool_conn[pick] = pool_conn.back();
        pool_conn.pop_back();
        half.push_back(v);
        for (std::size_t p = 0; p < pool.size(); ++p) pool_conn[p] += g.weight(pool[p], v);
    }
}

SplitResult finish_split(const Graph& g, VertexSet half1, VertexSet half2, VertexSet& pool,
                         int target_size, bool want_max) {
    SplitResult r;
    auto trim = [&](VertexSet& half) {
        while (static_cast<int>(half.size()) > target_size) {
            r.to_c0.push_back(half.back());
            half.pop_back();
        }
    };
    trim(half1);
    trim(half2);

    // stage the pool so a failed split leaves the caller's pool untouched
    std::vector<int> staged = pool;
    std::vector<double> conn(staged.size(), 0.0);
    top_up(g, half1, staged, conn, target_size, want_max);
    top_up(g, half2, staged, conn, target_size, want_max);
    pool.assign(staged.begin(), staged.end());

    std::sort(half1.begin(), half1.end());
    std::sort(half2.begin(), half2.end());
    std::sort(r.to_c0.begin(), r.to_c0.end());
    r.first = std::move(half1);
    r.second = std::move(half2);
    return r;
}

}  // namespace

SplitResult sparsification(const Graph& g, const VertexSet& cert, VertexSet& pool,
                           int target_size, Rng& rng) {
    if (cert.empty()) throw contract_error("sparsification: empty certificate");
    if (target_size < 0) throw contract_error("sparsification: negative target");
    VertexSet shuffled = cert;
    shuffle(shuffled, rng);
    const std::size_t cut = (shuffled.size() + 1) / 2;
    VertexSet half1(shuffled.begin(), shuffled.begin() + cut);
    VertexSet half2(shuffled.begin() + cut, shuffled.end());
    return finish_split(g, std::move(half1), std::move(half2), pool, target_size,
                        /*want_max=*/false);
}

SplitResult densification(const Graph& g, const VertexSet& cert, VertexSet& pool,
                          int target_size) {
    if (cert.empty()) throw contract_error("densification: empty certificate");
    if (target_size < 0) throw contract_error("densification: negative target");
    const VertexSet order = sort_by_internal_degree(g, cert);
    VertexSet half1, half2;
    const std::size_t cut = std::min(order.size(), static_cast<std::size_t>(std::max(target_size, 0)));
    half1.assign(order.begin(), order.begin() + cut);
    half2.assign(order.begin() + cut, order.end());
    return finish_split(g, std::move(half1), std::move(half2), pool, target_size,
                        /*want_max=*/true);
}

namespace {

// Pulls the vertices of `owner` out of `pool` (used when a split collapses
// and the whole class is routed to C0).
void drain_class_from_pool(const VertexSet& owner, VertexSet& pool, VertexSet& c0) {
    std::vector<char> is_owner;
    int max_id = 0;
    for (int v : owner) max_id = std::max(max_id, v);
    is_owner.assign(max_id + 1, 0);
    for (int v : owner) is_owner[v] = 1;
    VertexSet kept;
    kept.reserve(pool.size());
    for (int v : pool) {
        if (v <= max_id && is_owner[v])
            c0.push_back(v);
        else
            kept.push_back(v);
    }
    pool = std::move(kept);
}

}  // namespace

RefinementOutcome refine(const Graph& g, const EquitablePartition& p,
                         const PairVerdicts& verdicts, const RefineOptions& opts) {
    const int k = p.k();
    const int m = p.class_size();
    if (k == 0 || m == 0) throw contract_error("refine: empty partition");
    if (verdicts.k() != k) throw contract_error("refine: verdicts do not match partition");
    const int target = m / 2;
    if (target < 1) throw contract_error("refine: classes too small to split");

    Rng rng = make_rng(opts.seed);
    RefinementOutcome out;
    std::vector<VertexSet> next_classes;
    next_classes.reserve(2 * static_cast<std::size_t>(k));
    VertexSet c0 = p.c0;
    std::vector<char> done(k, 0);

    auto route_certificate = [&](int owner, const VertexSet& cert, VertexSet& pool) {
        try {
            // branch on the ordered-pair block density (a clique tends to 1),
            // so the 0.5 threshold can actually select densification
            const double density = 2.0 * internal_density(g, cert);
            SplitResult split =
                density < opts.density_split_threshold
                    ? sparsification(g, cert, pool, target, rng)
                    : densification(g, cert, pool, target);
            next_classes.push_back(std::move(split.first));
            next_classes.push_back(std::move(split.second));
            c0.insert(c0.end(), split.to_c0.begin(), split.to_c0.end());
        } catch (const degenerate_split&) {
            // whole class drops to C0 for this iteration
            out.had_degenerate_split = true;
            c0.insert(c0.end(), cert.begin(), cert.end());
            drain_class_from_pool(p.classes[owner], pool, c0);
        }
    };

    for (int i = 0; i < k; ++i) {
        if (done[i]) continue;
        std::vector<int> candidates;
        for (int j = 0; j < k; ++j)
            if (j != i && !done[j] && verdicts.at(i, j).irregular()) candidates.push_back(j);

        if (candidates.empty()) {
            // regular with every available class: unzip by internal degree
            const UnzipResult uz = unzip(sort_by_internal_degree(g, p.classes[i]));
            if (uz.leftover) c0.push_back(*uz.leftover);
            VertexSet first = uz.first, second = uz.second;
            std::sort(first.begin(), first.end());
            std::sort(second.begin(), second.end());
            next_classes.push_back(std::move(first));
            next_classes.push_back(std::move(second));
            done[i] = 1;
            continue;
        }

        int j;
        if (opts.random_partner) {
            j = candidates[bounded(rng, candidates.size())];
        } else {
            j = select_partner(g, p.classes, i, candidates);
        }
        const PairVerdict& v = verdicts.at(i, j);
        const VertexSet& cert_i = i < j ? v.cert_a : v.cert_b;
        const VertexSet& cert_j = i < j ? v.cert_b : v.cert_a;
        const VertexSet& compl_i = i < j ? v.compl_a : v.compl_b;
        const VertexSet& compl_j = i < j ? v.compl_b : v.compl_a;

        VertexSet pool;
        pool.reserve(compl_i.size() + compl_j.size());
        pool.insert(pool.end(), compl_i.begin(), compl_i.end());
        pool.insert(pool.end(), compl_j.begin(), compl_j.end());
        std::sort(pool.begin(), pool.end());

        route_certificate(i, cert_i, pool);
        route_certificate(j, cert_j, pool);
        c0.insert(c0.end(), pool.begin(), pool.end());
        done[i] = done[j] = 1;
    }

    EquitablePartition np;
    np.n = p.n;
    np.epsilon = p.epsilon;
    np.classes = std::move(next_classes);
    std::sort(c0.begin(), c0.end());
    np.c0 = std::move(c0);

    const int kprime = np.k();
    const double c0_budget = p.epsilon * p.n;
    if (static_cast<double>(np.c0.size()) > c0_budget &&
        static_cast<int>(np.c0.size()) > kprime) {
        // round-robin redistribution, lowest vertex ids first
        for (std::size_t idx = 0; idx < np.c0.size(); ++idx)
            np.classes[idx % kprime].push_back(np.c0[idx]);
        np.c0.clear();
        std::size_t uniform = np.classes[0].size();
        for (const auto& c : np.classes) uniform = std::min(uniform, c.size());
        // trim oversized classes back to C0 by lowest internal degree,
        // ties by ascending vertex id
        for (auto& c : np.classes) {
            while (c.size() > uniform) {
                std::size_t victim = 0;
                double victim_deg = 0.0;
                for (std::size_t a = 0; a < c.size(); ++a) {
                    double deg = 0.0;
                    for (std::size_t b = 0; b < c.size(); ++b)
                        if (a != b) deg += g.weight(c[a], c[b]);
                    if (a == 0 || deg < victim_deg ||
                        (deg == victim_deg && c[a] < c[victim])) {
                        victim = a;
                        victim_deg = deg;
                    }
                }
                np.c0.push_back(c[victim]);
                c.erase(c.begin() + victim);
            }
            std::sort(c.begin(), c.end());
        }
        std::sort(np.c0.begin(), np.c0.end());
        out.verdict = RefinementOutcome::Verdict::regular;
    } else if (static_cast<double>(np.c0.size()) > c0_budget) {
        out.verdict = RefinementOutcome::Verdict::irregular;
    } else {
        out.verdict = RefinementOutcome::Verdict::regular;
    }

    np.validate();
    out.partition = std::move(np);
    return out;
}

}  // namespace sze
