#include "sze/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace sze {

namespace {

std::uint64_t pair_key(int u, int v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

}  // namespace

Graph Graph::from_edges(int n, const std::vector<std::tuple<int, int, float>>& edges,
                        int dense_threshold, bool assume_unique) {
    if (n < 0) throw contract_error("vertex count must be non-negative");
    // last write wins per unordered pair
    std::vector<std::pair<std::uint64_t, float>> dedup;
    dedup.reserve(edges.size());
    {
        std::unordered_map<std::uint64_t, std::size_t> slot;
        if (!assume_unique) slot.reserve(edges.size());
        for (const auto& [u, v, w] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw contract_error("edge endpoint out of range");
            if (u == v) throw contract_error("self-loops are not representable");
            if (!(w >= 0.0f && w <= 1.0f)) throw contract_error("edge weight outside [0,1]");
            const std::uint64_t key = pair_key(u, v);
            if (assume_unique) {
                dedup.emplace_back(key, w);
            } else if (auto [it, fresh] = slot.try_emplace(key, dedup.size()); fresh) {
                dedup.emplace_back(key, w);
            } else {
                dedup[it->second].second = w;
            }
        }
    }

    Graph g;
    g.n_ = n;
    g.use_dense_ = n < dense_threshold;
    g.degree_.assign(n, 0.0);
    for (const auto& [key, w] : dedup) {
        if (w == 0.0f) continue;  // zero weight = absent edge
        const int u = static_cast<int>(key >> 32);
        const int v = static_cast<int>(key & 0xffffffffu);
        g.degree_[u] += w;
        g.degree_[v] += w;
        g.total_weight_ += w;
        ++g.edge_count_;
        if (w != 1.0f) g.weighted_ = true;
    }

    if (g.use_dense_) {
        g.dense_.assign(static_cast<std::size_t>(n) * n, 0.0f);
        for (const auto& [key, w] : dedup) {
            if (w == 0.0f) continue;
            const int u = static_cast<int>(key >> 32);
            const int v = static_cast<int>(key & 0xffffffffu);
            g.dense_[static_cast<std::size_t>(u) * n + v] = w;
            g.dense_[static_cast<std::size_t>(v) * n + u] = w;
        }
    } else {
        std::vector<int> deg(n, 0);
        for (const auto& [key, w] : dedup) {
            if (w == 0.0f) continue;
            ++deg[static_cast<int>(key >> 32)];
            ++deg[static_cast<int>(key & 0xffffffffu)];
        }
        g.offsets_.assign(n + 1, 0);
        for (int u = 0; u < n; ++u) g.offsets_[u + 1] = g.offsets_[u] + deg[u];
        g.adj_.resize(g.offsets_[n]);
        g.csr_w_.resize(g.offsets_[n]);
        std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
        for (const auto& [key, w] : dedup) {
            if (w == 0.0f) continue;
            const int u = static_cast<int>(key >> 32);
            const int v = static_cast<int>(key & 0xffffffffu);
            g.adj_[cursor[u]] = v;
            g.csr_w_[cursor[u]++] = w;
            g.adj_[cursor[v]] = u;
            g.csr_w_[cursor[v]++] = w;
        }
        // sorted rows give log-time point lookups
        for (int u = 0; u < n; ++u) {
            std::vector<std::pair<int, float>> row;
            row.reserve(deg[u]);
            for (std::int64_t i = g.offsets_[u]; i < g.offsets_[u + 1]; ++i)
                row.emplace_back(g.adj_[i], g.csr_w_[i]);
            std::sort(row.begin(), row.end());
            for (std::int64_t i = g.offsets_[u]; i < g.offsets_[u + 1]; ++i) {
                g.adj_[i] = row[i - g.offsets_[u]].first;
                g.csr_w_[i] = row[i - g.offsets_[u]].second;
            }
        }
    }
    return g;
}

float Graph::weight(int u, int v) const {
    if (u == v) return 0.0f;
    if (use_dense_) return dense_[static_cast<std::size_t>(u) * n_ + v];
    const auto begin = adj_.begin() + offsets_[u];
    const auto end = adj_.begin() + offsets_[u + 1];
    const auto it = std::lower_bound(begin, end, v);
    if (it == end || *it != v) return 0.0f;
    return csr_w_[it - adj_.begin()];
}

Eigen::MatrixXf Graph::gather_block(const VertexSet& a, const VertexSet& b) const {
    Eigen::MatrixXf block(a.size(), b.size());
    if (use_dense_) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            const float* row = dense_.data() + static_cast<std::size_t>(a[i]) * n_;
            for (std::size_t j = 0; j < b.size(); ++j) block(i, j) = row[b[j]];
        }
    } else {
        block.setZero();
        std::vector<int> pos(n_, -1);
        for (std::size_t j = 0; j < b.size(); ++j) pos[b[j]] = static_cast<int>(j);
        for (std::size_t i = 0; i < a.size(); ++i)
            for_neighbours(a[i], [&](int v, float w) {
                if (pos[v] >= 0) block(i, pos[v]) = w;
            });
    }
    return block;
}

namespace {

void format_weight(std::ostream& out, float w) {
    char buf[32];
    // 9 significant digits round-trip any float32
    const int len = std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(w));
    out.write(buf, len);
}

}  // namespace

void Graph::save_edge_list(std::ostream& out) const {
    out << "# n=" << n_ << "\n";
    auto emit_row = [&](int u, int v, float w) {
        out << u << ' ' << v;
        if (weighted_) {
            out << ' ';
            format_weight(out, w);
        }
        out << '\n';
    };
    if (use_dense_) {
        for (int u = 0; u < n_; ++u) {
            const float* row = dense_.data() + static_cast<std::size_t>(u) * n_;
            for (int v = u + 1; v < n_; ++v)
                if (row[v] > 0.0f) emit_row(u, v, row[v]);
        }
    } else {
        for (int u = 0; u < n_; ++u)
            for (std::int64_t i = offsets_[u]; i < offsets_[u + 1]; ++i)
                if (adj_[i] > u) emit_row(u, adj_[i], csr_w_[i]);
    }
}

void Graph::save_edge_list(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    save_edge_list(out);
    if (!out) throw io_error("write failed: " + path);
}

namespace {

bool parse_int(std::string_view tok, long long& out) {
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

bool parse_double(std::string_view tok, double& out) {
    // from_chars for double is missing in some libstdc++ builds; strtod is fine here
    std::string tmp(tok);
    char* end = nullptr;
    out = std::strtod(tmp.c_str(), &end);
    return end == tmp.c_str() + tmp.size() && tmp.size() > 0;
}

}  // namespace

Graph load_edge_list(std::istream& in, std::optional<int> n_hint, LoadStats* stats,
                     int dense_threshold) {
    std::vector<std::tuple<int, int, float>> edges;
    int max_id = -1;
    int hint = n_hint.value_or(0);
    int dropped = 0;
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        if (line[begin] == '#') {
            // "# n=<count>" raises the vertex-count hint; other comments are skipped
            std::size_t eq = line.find("n=", begin);
            if (eq != std::string::npos) {
                long long v = 0;
                std::size_t numeric_end = line.find_first_not_of("0123456789", eq + 2);
                std::string_view num(line.data() + eq + 2,
                                     (numeric_end == std::string::npos ? line.size() : numeric_end) - (eq + 2));
                std::size_t before = line.find_first_not_of(" \t", begin + 1);
                if (before == eq && !num.empty() && parse_int(num, v) && v >= 0 &&
                    (numeric_end == std::string::npos ||
                     line.find_first_not_of(" \t\r", numeric_end) == std::string::npos))
                    hint = std::max<long long>(hint, v);
            }
            continue;
        }
        std::istringstream fields(line);
        std::vector<std::string> toks;
        std::string tok;
        while (fields >> tok) toks.push_back(tok);
        if (toks.size() < 2 || toks.size() > 3)
            throw parse_error("line " + std::to_string(line_no) + ": expected \"u v [w]\"");
        long long u = 0, v = 0;
        if (!parse_int(toks[0], u) || !parse_int(toks[1], v) || u < 0 || v < 0)
            throw parse_error("line " + std::to_string(line_no) + ": bad vertex id");
        double w = 1.0;
        if (toks.size() == 3) {
            if (!parse_double(toks[2], w))
                throw parse_error("line " + std::to_string(line_no) + ": bad weight");
            if (!(w >= 0.0 && w <= 1.0))
                throw parse_error("line " + std::to_string(line_no) + ": weight outside [0,1]");
        }
        if (u == v) {
            ++dropped;
            continue;
        }
        max_id = std::max<long long>(max_id, std::max(u, v));
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v), static_cast<float>(w));
    }
    if (stats) stats->dropped_self_loops = dropped;
    const int n = std::max(max_id + 1, hint);
    return Graph::from_edges(n, edges, dense_threshold);
}

Graph load_edge_list(const std::string& path, std::optional<int> n_hint, LoadStats* stats,
                     int dense_threshold) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    return load_edge_list(in, n_hint, stats, dense_threshold);
}

void validate_vertex_set(const VertexSet& s, int n) {
    std::vector<char> seen(n, 0);
    for (int v : s) {
        if (v < 0 || v >= n) throw contract_error("vertex id out of range");
        if (seen[v]) throw contract_error("duplicate vertex in set");
        seen[v] = 1;
    }
}

namespace {

void check_disjoint(const Graph& g, const VertexSet& a, const VertexSet& b) {
    std::vector<char> seen(g.n(), 0);
    for (int v : a) {
        if (v < 0 || v >= g.n()) throw contract_error("vertex id out of range");
        if (seen[v]) throw contract_error("duplicate vertex in set");
        seen[v] = 1;
    }
    for (int v : b) {
        if (v < 0 || v >= g.n()) throw contract_error("vertex id out of range");
        if (seen[v]) throw contract_error("sets overlap or repeat a vertex");
        seen[v] = 2;
    }
}

}  // namespace

double edge_density(const Graph& g, const VertexSet& ci, const VertexSet& cj) {
    if (ci.empty() || cj.empty()) throw contract_error("edge_density: empty set");
    check_disjoint(g, ci, cj);
    double e = 0.0;
    if (g.dense_storage()) {
        for (int u : ci)
            for (int v : cj) e += g.weight(u, v);
    } else {
        std::vector<char> in_cj(g.n(), 0);
        for (int v : cj) in_cj[v] = 1;
        for (int u : ci)
            g.for_neighbours(u, [&](int v, float w) {
                if (in_cj[v]) e += w;
            });
    }
    return e / (static_cast<double>(ci.size()) * static_cast<double>(cj.size()));
}

double internal_density(const Graph& g, const VertexSet& c) {
    if (c.empty()) throw contract_error("internal_density: empty set");
    validate_vertex_set(c, g.n());
    double e = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) e += g.weight(c[i], c[j]);
    return e / (static_cast<double>(c.size()) * static_cast<double>(c.size()));
}

BipartiteDegrees bipartite_degrees(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size())
        throw contract_error("bipartite_degrees: classes must have equal size");
    if (a.empty()) throw contract_error("bipartite_degrees: empty classes");
    check_disjoint(g, a, b);
    BipartiteDegrees d;
    d.a.assign(a.size(), 0.0);
    d.b.assign(b.size(), 0.0);
    std::vector<int> pos(g.n(), -1);
    for (std::size_t j = 0; j < b.size(); ++j) pos[b[j]] = static_cast<int>(j);
    for (std::size_t i = 0; i < a.size(); ++i)
        g.for_neighbours(a[i], [&](int v, float w) {
            if (pos[v] >= 0) {
                d.a[i] += w;
                d.b[pos[v]] += w;
            }
        });
    double sum = 0.0;
    for (double x : d.a) sum += x;
    for (double x : d.b) sum += x;
    d.average = sum / (2.0 * static_cast<double>(a.size()));
    return d;
}

}  // namespace sze
