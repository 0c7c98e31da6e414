#include "sze/regularity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "sze/parallel.hpp"

namespace sze {

void EquitablePartition::validate() const {
    std::vector<char> seen(n, 0);
    auto mark = [&](const VertexSet& s) {
        for (int v : s) {
            if (v < 0 || v >= n) throw contract_error("partition: vertex out of range");
            if (seen[v]) throw contract_error("partition: vertex appears twice");
            seen[v] = 1;
        }
    };
    const int m = class_size();
    for (const auto& c : classes) {
        if (static_cast<int>(c.size()) != m)
            throw contract_error("partition: classes must be equally sized");
        mark(c);
    }
    mark(c0);
    for (int v = 0; v < n; ++v)
        if (!seen[v]) throw contract_error("partition: vertex missing from all classes");
}

namespace {

void warn_epsilon_once(double eps) {
    static std::atomic<bool> warned{false};
    if (eps >= 1.0 / 16.0 && !warned.exchange(true))
        std::fprintf(stderr,
                     "warning: eps=%g lies outside (0, 1/16); verdicts are heuristic only\n",
                     eps);
}

void check_epsilon(double eps) {
    if (!(eps > 0.0) || eps >= 1.0)
        throw contract_error("eps must lie in (0, 1)");
    warn_epsilon_once(eps);
}

// Everything check_pair needs about one class pair, built once.
struct PairContext {
    const Graph& g;
    const VertexSet& cr;
    const VertexSet& cs;
    double eps;
    int m = 0;
    Eigen::MatrixXf block;       // (i,j) = w(cr[i], cs[j])
    std::vector<double> deg_r;   // row sums
    std::vector<double> deg_s;   // column sums
    double dbar = 0.0;           // average bipartite degree, density·m
    double density = 0.0;
    int min_cert = 1;
};

PairContext make_context(const Graph& g, const VertexSet& cr, const VertexSet& cs, double eps) {
    PairContext ctx{g, cr, cs, eps, 0, {}, {}, {}, 0.0, 0.0, 1};
    ctx.m = static_cast<int>(cr.size());
    ctx.block = g.gather_block(cr, cs);
    ctx.deg_r.assign(ctx.m, 0.0);
    ctx.deg_s.assign(ctx.m, 0.0);
    double total = 0.0;
    for (int i = 0; i < ctx.m; ++i)
        for (int j = 0; j < ctx.m; ++j) {
            const double w = ctx.block(i, j);
            ctx.deg_r[i] += w;
            ctx.deg_s[j] += w;
            total += w;
        }
    ctx.dbar = total / ctx.m;
    ctx.density = total / (static_cast<double>(ctx.m) * ctx.m);
    ctx.min_cert = certificate_min_size(ctx.m, eps);
    return ctx;
}

// Deviation order: most deviating first, ties by ascending vertex id.
std::vector<int> deviation_order(const std::vector<double>& deg, const VertexSet& ids,
                                 double dbar) {
    std::vector<int> order(deg.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const double da = std::abs(deg[a] - dbar);
        const double db = std::abs(deg[b] - dbar);
        if (da != db) return da > db;
        return ids[a] < ids[b];
    });
    return order;
}

double block_density(const PairContext& ctx, const std::vector<int>& rows,
                     const std::vector<int>& cols, bool transposed) {
    double e = 0.0;
    for (int i : rows)
        for (int j : cols) e += transposed ? ctx.block(j, i) : ctx.block(i, j);
    return e / (static_cast<double>(rows.size()) * cols.size());
}

struct DirectionalCerts {
    VertexSet scanned;  // subset of the scanned side (B')
    VertexSet opposite; // subset of the other side (A')
    int condition = 0;
};

// Condition 2 in one orientation. `transposed` scans cr instead of cs.
// Certificates must clear the size bound and show the eps⁴ density gap; the
// winning y0 is the most deviating one, ties by lowest vertex id.
std::optional<DirectionalCerts> condition2(const PairContext& ctx, bool transposed,
                                           const Eigen::MatrixXf& co) {
    const auto& deg = transposed ? ctx.deg_r : ctx.deg_s;
    const auto& ids = transposed ? ctx.cr : ctx.cs;
    const double eps4m = std::pow(ctx.eps, 4) * ctx.m;

    std::vector<int> deviating;
    for (int j = 0; j < ctx.m; ++j)
        if (std::abs(deg[j] - ctx.dbar) >= eps4m) deviating.push_back(j);
    if (static_cast<double>(deviating.size()) <= eps4m / 8.0) return std::nullopt;

    std::stable_sort(deviating.begin(), deviating.end(), [&](int a, int b) {
        const double da = std::abs(deg[a] - ctx.dbar);
        const double db = std::abs(deg[b] - ctx.dbar);
        if (da != db) return da > db;
        return ids[a] < ids[b];
    });

    const double sigma_floor = 2.0 * eps4m;
    const double expected = ctx.dbar * ctx.dbar / ctx.m;
    for (int y0 : deviating) {
        std::vector<int> bprime;
        for (int j = 0; j < ctx.m; ++j)
            if (co(y0, j) - expected >= sigma_floor) bprime.push_back(j);
        std::vector<int> aprime;
        for (int i = 0; i < ctx.m; ++i) {
            const float w = transposed ? ctx.block(y0, i) : ctx.block(i, y0);
            if (w > 0.0f) aprime.push_back(i);
        }
        if (static_cast<int>(bprime.size()) < ctx.min_cert ||
            static_cast<int>(aprime.size()) < ctx.min_cert)
            continue;
        const double gap =
            std::abs(block_density(ctx, aprime, bprime, transposed) - ctx.density);
        if (gap < std::pow(ctx.eps, 4)) continue;

        DirectionalCerts out;
        out.condition = 2;
        for (int j : bprime) out.scanned.push_back(ids[j]);
        for (int i : aprime) out.opposite.push_back(transposed ? ctx.cs[i] : ctx.cr[i]);
        return out;
    }
    return std::nullopt;
}

// Condition 2 with σ-filtered certificates on both sides: each class
// contributes the co-neighbourhood deviation set of its own most deviating
// vertex. The plain neighbourhood N(y0) soaks up the whole background at
// noticeable inter-class noise, while the σ threshold strips it, so pairing
// two σ sets gives both classes a clean core to split on.
struct PairedCerts {
    VertexSet cert_r, cert_s;
};

std::optional<PairedCerts> condition2_paired(const PairContext& ctx,
                                             const Eigen::MatrixXf& co_cols,
                                             const Eigen::MatrixXf& co_rows) {
    const double eps4m = std::pow(ctx.eps, 4) * ctx.m;
    const double sigma_floor = 2.0 * eps4m;
    const double expected = ctx.dbar * ctx.dbar / ctx.m;

    auto deviating_sorted = [&](const std::vector<double>& deg, const VertexSet& ids) {
        std::vector<int> out;
        for (int j = 0; j < ctx.m; ++j)
            if (std::abs(deg[j] - ctx.dbar) >= eps4m) out.push_back(j);
        std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
            const double da = std::abs(deg[a] - ctx.dbar);
            const double db = std::abs(deg[b] - ctx.dbar);
            if (da != db) return da > db;
            return ids[a] < ids[b];
        });
        return out;
    };
    const std::vector<int> dev_s = deviating_sorted(ctx.deg_s, ctx.cs);
    const std::vector<int> dev_r = deviating_sorted(ctx.deg_r, ctx.cr);
    const bool count_fires = static_cast<double>(dev_s.size()) > eps4m / 8.0 ||
                             static_cast<double>(dev_r.size()) > eps4m / 8.0;
    if (!count_fires || dev_s.empty() || dev_r.empty()) return std::nullopt;

    auto sigma_set = [&](const std::vector<int>& candidates, const Eigen::MatrixXf& co,
                         std::vector<int>& out) -> bool {
        for (int y0 : candidates) {
            out.clear();
            for (int j = 0; j < ctx.m; ++j)
                if (co(y0, j) - expected >= sigma_floor) out.push_back(j);
            if (static_cast<int>(out.size()) >= ctx.min_cert) return true;
        }
        return false;
    };
    std::vector<int> bs, br;
    if (!sigma_set(dev_s, co_cols, bs)) return std::nullopt;
    if (!sigma_set(dev_r, co_rows, br)) return std::nullopt;
    if (std::abs(block_density(ctx, br, bs, false) - ctx.density) < std::pow(ctx.eps, 4))
        return std::nullopt;

    PairedCerts out;
    for (int i : br) out.cert_r.push_back(ctx.cr[i]);
    for (int j : bs) out.cert_s.push_back(ctx.cs[j]);
    return out;
}

// Greedy condition-3 search in one orientation: grow the candidate from the
// degree-deviation order, certificate on the other side = vertices adjacent
// to a strict majority of the candidate.
std::optional<DirectionalCerts> condition3(const PairContext& ctx, bool transposed) {
    const auto& deg = transposed ? ctx.deg_r : ctx.deg_s;
    const auto& scan_ids = transposed ? ctx.cr : ctx.cs;
    const auto& opp_ids = transposed ? ctx.cs : ctx.cr;
    const std::vector<int> order = deviation_order(deg, scan_ids, ctx.dbar);

    const double eps4 = std::pow(ctx.eps, 4);
    const int seed = std::max<int>(1, static_cast<int>(std::ceil(eps4 / 4.0 * ctx.m)));

    std::vector<int> counts(ctx.m, 0);   // adjacency count into the candidate
    std::vector<double> wsum(ctx.m, 0.0);
    std::vector<int> candidate;
    candidate.reserve(ctx.m);

    auto absorb = [&](int j) {
        candidate.push_back(j);
        for (int i = 0; i < ctx.m; ++i) {
            const float w = transposed ? ctx.block(j, i) : ctx.block(i, j);
            if (w > 0.0f) {
                ++counts[i];
                wsum[i] += w;
            }
        }
    };

    auto try_certificate = [&]() -> std::optional<DirectionalCerts> {
        std::vector<int> aprime;
        double e = 0.0;
        const int majority = static_cast<int>(candidate.size());
        for (int i = 0; i < ctx.m; ++i)
            if (2 * counts[i] > majority) {
                aprime.push_back(i);
                e += wsum[i];
            }
        if (static_cast<int>(aprime.size()) < ctx.min_cert ||
            static_cast<int>(candidate.size()) < ctx.min_cert || aprime.empty())
            return std::nullopt;
        const double d = e / (static_cast<double>(aprime.size()) * candidate.size());
        if (std::abs(d - ctx.density) < eps4) return std::nullopt;
        DirectionalCerts out;
        out.condition = 3;
        for (int j : candidate) out.scanned.push_back(scan_ids[j]);
        for (int i : aprime) out.opposite.push_back(opp_ids[i]);
        return out;
    };

    int next = 0;
    for (; next < seed && next < ctx.m; ++next) absorb(order[next]);
    while (true) {
        if (auto certs = try_certificate()) return certs;
        if (next >= ctx.m) return std::nullopt;
        absorb(order[next++]);
    }
}

// One-sided check of the regularity definition: hunt for subsets X, Y with
// |X|, |Y| > eps·m whose density deviates from the pair density by at least
// eps. Extremal candidates (densest / sparsest rows against the most
// extreme column block) maximise the gap at exactly the qualifying size;
// anything larger regresses toward the mean.
bool definition_screen_regular(const PairContext& ctx) {
    const int q = static_cast<int>(ctx.eps * ctx.m) + 1;  // smallest qualifying size
    if (q > ctx.m) return true;                           // Eq. 2 quantifies over nothing

    std::vector<int> row_order(ctx.m), col_order(ctx.m);
    std::iota(row_order.begin(), row_order.end(), 0);
    std::iota(col_order.begin(), col_order.end(), 0);

    auto probe = [&](bool dense_side) {
        std::sort(col_order.begin(), col_order.end(), [&](int a, int b) {
            return dense_side ? ctx.deg_s[a] > ctx.deg_s[b] : ctx.deg_s[a] < ctx.deg_s[b];
        });
        std::vector<double> into_block(ctx.m, 0.0);
        for (int j = 0; j < q; ++j)
            for (int i = 0; i < ctx.m; ++i) into_block[i] += ctx.block(i, col_order[j]);
        std::sort(row_order.begin(), row_order.end(), [&](int a, int b) {
            return dense_side ? into_block[a] > into_block[b] : into_block[a] < into_block[b];
        });
        double e = 0.0;
        for (int i = 0; i < q; ++i) e += into_block[row_order[i]];
        return e / (static_cast<double>(q) * q);
    };

    if (std::abs(probe(true) - ctx.density) >= ctx.eps) return false;
    if (std::abs(probe(false) - ctx.density) >= ctx.eps) return false;
    return true;
}

VertexSet set_minus(const VertexSet& all, const VertexSet& sub) {
    std::vector<char> drop;
    int max_id = 0;
    for (int v : all) max_id = std::max(max_id, v);
    drop.assign(max_id + 1, 0);
    for (int v : sub) drop[v] = 1;
    VertexSet out;
    out.reserve(all.size() - sub.size());
    for (int v : all)
        if (!drop[v]) out.push_back(v);
    return out;
}

PairVerdict irregular_verdict(const PairContext& ctx, DirectionalCerts certs, bool transposed) {
    PairVerdict v;
    v.status = PairVerdict::Status::irregular;
    v.condition = certs.condition;
    // normalise: cert_a ⊆ cr, cert_b ⊆ cs regardless of scan orientation
    if (transposed) {
        v.cert_a = std::move(certs.scanned);
        v.cert_b = std::move(certs.opposite);
    } else {
        v.cert_a = std::move(certs.opposite);
        v.cert_b = std::move(certs.scanned);
    }
    std::sort(v.cert_a.begin(), v.cert_a.end());
    std::sort(v.cert_b.begin(), v.cert_b.end());
    v.compl_a = set_minus(ctx.cr, v.cert_a);
    v.compl_b = set_minus(ctx.cs, v.cert_b);
    return v;
}

}  // namespace

int certificate_min_size(int m, double eps) {
    return static_cast<int>(std::ceil(std::pow(eps, 4) / 16.0 * m));
}

double neighbourhood_deviation(const Graph& g, const VertexSet& a, const VertexSet& b,
                               int y1, int y2) {
    if (a.size() != b.size() || a.empty())
        throw contract_error("neighbourhood_deviation: classes must be equal-sized");
    if (y1 == y2) throw contract_error("neighbourhood_deviation: vertices must differ");
    const bool y1_in = std::find(b.begin(), b.end(), y1) != b.end();
    const bool y2_in = std::find(b.begin(), b.end(), y2) != b.end();
    if (!y1_in || !y2_in) throw contract_error("neighbourhood_deviation: vertex not in b");
    const double dbar = bipartite_degrees(g, a, b).average;
    double common = 0.0;
    for (int x : a) common += static_cast<double>(g.weight(y1, x)) * g.weight(y2, x);
    return common - dbar * dbar / static_cast<double>(a.size());
}

double set_deviation(const Graph& g, const VertexSet& a, const VertexSet& b,
                     const VertexSet& y) {
    if (y.size() < 2) throw contract_error("set_deviation: need at least two vertices");
    for (int v : y)
        if (std::find(b.begin(), b.end(), v) == b.end())
            throw contract_error("set_deviation: y must be a subset of b");
    const double dbar = bipartite_degrees(g, a, b).average;
    const double expected = dbar * dbar / static_cast<double>(a.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (i == j) continue;  // σ is defined for distinct vertices only
            double common = 0.0;
            for (int x : a) common += static_cast<double>(g.weight(y[i], x)) * g.weight(y[j], x);
            sum += common - expected;
        }
    return sum / (static_cast<double>(y.size()) * y.size());
}

PairVerdict check_pair(const Graph& g, const VertexSet& cr, const VertexSet& cs, double eps) {
    check_epsilon(eps);
    if (cr.size() != cs.size())
        throw contract_error("check_pair: classes must have equal size");
    if (cr.empty()) throw degenerate_scale("check_pair: empty classes");
    PairContext ctx = make_context(g, cr, cs, eps);
    if (ctx.min_cert < 1)
        throw degenerate_scale("check_pair: certificate bound below one vertex; "
                               "use larger classes or a larger eps");
    const bool def_reg = definition_screen_regular(ctx);

    // condition 1
    if (ctx.dbar < std::pow(eps, 3) * ctx.m) {
        PairVerdict v;
        v.condition = 1;
        v.definition_regular = def_reg;
        return v;
    }

    // condition 2, σ-paired first, then both single orientations (the
    // latter keep the verdict swap-symmetric)
    {
        const Eigen::MatrixXf co_cols = ctx.block.transpose() * ctx.block;
        const Eigen::MatrixXf co_rows = ctx.block * ctx.block.transpose();
        if (auto paired = condition2_paired(ctx, co_cols, co_rows)) {
            PairVerdict v;
            v.status = PairVerdict::Status::irregular;
            v.condition = 2;
            v.cert_a = std::move(paired->cert_r);
            v.cert_b = std::move(paired->cert_s);
            std::sort(v.cert_a.begin(), v.cert_a.end());
            std::sort(v.cert_b.begin(), v.cert_b.end());
            v.compl_a = set_minus(ctx.cr, v.cert_a);
            v.compl_b = set_minus(ctx.cs, v.cert_b);
            v.definition_regular = def_reg;
            return v;
        }
        if (auto certs = condition2(ctx, false, co_cols)) {
            PairVerdict v = irregular_verdict(ctx, std::move(*certs), false);
            v.definition_regular = def_reg;
            return v;
        }
        if (auto certs = condition2(ctx, true, co_rows)) {
            PairVerdict v = irregular_verdict(ctx, std::move(*certs), true);
            v.definition_regular = def_reg;
            return v;
        }
    }

    // condition 3, both orientations
    if (auto certs = condition3(ctx, false)) {
        PairVerdict v = irregular_verdict(ctx, std::move(*certs), false);
        v.definition_regular = def_reg;
        return v;
    }
    if (auto certs = condition3(ctx, true)) {
        PairVerdict v = irregular_verdict(ctx, std::move(*certs), true);
        v.definition_regular = def_reg;
        return v;
    }

    PairVerdict v;  // nothing witnessed irregularity
    v.definition_regular = def_reg;
    return v;
}

std::optional<std::pair<VertexSet, VertexSet>> greedy_certificates(const Graph& g,
                                                                   const VertexSet& cr,
                                                                   const VertexSet& cs,
                                                                   double eps) {
    check_epsilon(eps);
    if (cr.size() != cs.size())
        throw contract_error("greedy_certificates: classes must have equal size");
    if (cr.empty()) throw degenerate_scale("greedy_certificates: empty classes");
    PairContext ctx = make_context(g, cr, cs, eps);
    if (ctx.min_cert < 1)
        throw degenerate_scale("greedy_certificates: certificate bound below one vertex");
    auto certs = condition3(ctx, false);
    if (!certs) return std::nullopt;
    VertexSet aprime = std::move(certs->opposite);
    VertexSet bprime = std::move(certs->scanned);
    std::sort(aprime.begin(), aprime.end());
    std::sort(bprime.begin(), bprime.end());
    return std::make_pair(std::move(aprime), std::move(bprime));
}

double sze_idx(const Graph& g, const EquitablePartition& p) {
    const int k = p.k();
    if (k < 2) throw contract_error("sze_idx: need at least two classes");
    double sum = 0.0;
    for (int s = 0; s < k; ++s)
        for (int t = s + 1; t < k; ++t) {
            const double d = edge_density(g, p.classes[s], p.classes[t]);
            sum += d * d;
        }
    return sum / (static_cast<double>(k) * k);
}

std::size_t PairVerdicts::index(int r, int s) const {
    if (r > s) std::swap(r, s);
    // row-major upper triangle
    return static_cast<std::size_t>(r) * k_ - static_cast<std::size_t>(r) * (r + 1) / 2 +
           (s - r - 1);
}

int PairVerdicts::irregular_count() const {
    int count = 0;
    for (const auto& v : flat_)
        if (v.irregular()) ++count;
    return count;
}

PairVerdicts check_all_pairs(const Graph& g, const EquitablePartition& p) {
    const int k = p.k();
    PairVerdicts verdicts(k);
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
    for (int r = 0; r < k; ++r)
        for (int s = r + 1; s < k; ++s) pairs.emplace_back(r, s);
    parallel_for(static_cast<std::int64_t>(pairs.size()), [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            const auto [r, s] = pairs[i];
            verdicts.at(r, s) = check_pair(g, p.classes[r], p.classes[s], p.epsilon);
        }
    });
    return verdicts;
}

}  // namespace sze
