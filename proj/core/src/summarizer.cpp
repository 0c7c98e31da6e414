#include "sze/summarizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace sze {

void SummaryConfig::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw contract_error("epsilon must lie in (0,1)");
    if (!(c_min > 0.0 && c_min < 1.0)) throw contract_error("c_min must lie in (0,1)");
    if (!(d_prime >= 0.0 && d_prime <= 1.0)) throw contract_error("d_prime must lie in [0,1]");
    if (initial_k < 2) throw contract_error("initial_k must be at least 2");
    if (!(density_split_threshold >= 0.0 && density_split_threshold <= 1.0))
        throw contract_error("density_split_threshold must lie in [0,1]");
}

EquitablePartition initial_partition(const Graph& g, int k, std::uint64_t seed,
                                     double epsilon) {
    if (k < 2) throw contract_error("initial_partition: k must be at least 2");
    if (k > g.n()) throw contract_error("initial_partition: k exceeds vertex count");
    std::vector<int> perm(g.n());
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng = make_rng(seed, 0);
    shuffle(perm, rng);

    EquitablePartition p;
    p.n = g.n();
    p.epsilon = epsilon;
    const int m = g.n() / k;
    p.classes.resize(k);
    for (int c = 0; c < k; ++c) {
        p.classes[c].assign(perm.begin() + static_cast<std::size_t>(c) * m,
                            perm.begin() + static_cast<std::size_t>(c + 1) * m);
        std::sort(p.classes[c].begin(), p.classes[c].end());
    }
    p.c0.assign(perm.begin() + static_cast<std::size_t>(k) * m, perm.end());
    std::sort(p.c0.begin(), p.c0.end());
    return p;
}

double compression_rate(const EquitablePartition& p) {
    if (p.n == 0) return 0.0;
    return 1.0 - static_cast<double>(p.k()) / static_cast<double>(p.n);
}

ReducedGraph build_reduced(const Graph& g, const EquitablePartition& p,
                           const PairVerdicts& verdicts, double d_prime) {
    const int k = p.k();
    if (verdicts.k() != k) throw contract_error("build_reduced: verdicts do not match partition");
    ReducedGraph r;
    r.k = k;
    r.m = p.class_size();
    r.n = p.n;
    r.epsilon = p.epsilon;
    r.membership.assign(p.n, -1);
    for (int c = 0; c < k; ++c)
        for (int v : p.classes[c]) r.membership[v] = c;
    r.weights = Eigen::MatrixXd::Zero(k, k);
    for (int s = 0; s < k; ++s)
        for (int t = s + 1; t < k; ++t) {
            const double d = edge_density(g, p.classes[s], p.classes[t]);
            // the weight rule gates on the definition-level screen; the
            // witness-level status over-flags at small class sizes
            if (verdicts.at(s, t).definition_regular && d >= d_prime) {
                r.weights(s, t) = d;
                r.weights(t, s) = d;
            }
        }
    return r;
}

namespace {

Summary make_summary(const Graph& g, const EquitablePartition& p, double d_prime) {
    const PairVerdicts verdicts = check_all_pairs(g, p);
    Summary s;
    s.reduced = build_reduced(g, p, verdicts, d_prime);
    s.internal.resize(p.k());
    for (int c = 0; c < p.k(); ++c) s.internal[c] = internal_density(g, p.classes[c]);
    s.d_prime = d_prime;
    s.sze = sze_idx(g, p);
    return s;
}

int iteration_cap(int n, int initial_k) {
    int cap = 1;
    for (int m = n / initial_k; m > 1; m /= 2) ++cap;
    return cap;
}

}  // namespace

SummarizeResult summarize(const Graph& g, const SummaryConfig& cfg) {
    cfg.validate();
    if (cfg.initial_k > g.n()) throw contract_error("summarize: initial_k exceeds vertex count");

    EquitablePartition current = initial_partition(g, cfg.initial_k, cfg.seed, cfg.epsilon);

    struct Candidate {
        EquitablePartition partition;
        double sze = 0.0;
        int iteration = 0;
    };
    std::vector<Candidate> candidates;
    std::vector<IterationStats> trace;
    int last_collect_iteration = 0;
    const int cap = iteration_cap(g.n(), cfg.initial_k);

    for (int it = 1;; ++it) {
        const PairVerdicts verdicts = check_all_pairs(g, current);
        IterationStats stats;
        stats.iteration = it;
        stats.k = current.k();
        stats.m = current.class_size();
        stats.irregular_pairs = verdicts.irregular_count();
        stats.total_pairs = current.k() * (current.k() - 1) / 2;
        stats.sze = sze_idx(g, current);
        stats.compression = compression_rate(current);
        const double budget = cfg.epsilon * stats.total_pairs;

        if (cfg.loop == LoopMode::literal) {
            if (stats.irregular_pairs > budget || stats.compression < cfg.c_min) {
                trace.push_back(stats);
                break;
            }
        } else {
            if (stats.irregular_pairs <= budget) {
                // regular enough: this partition is a result in its own right
                if (last_collect_iteration != it - 1 || candidates.empty()) {
                    candidates.push_back({current, stats.sze, it});
                    stats.kept = true;
                    stats.kept_sze = stats.sze;
                }
                trace.push_back(stats);
                break;
            }
            if (stats.compression < cfg.c_min) {
                trace.push_back(stats);
                break;
            }
        }

        if (current.class_size() / 2 < 1 || it >= cap) {
            trace.push_back(stats);
            break;
        }

        RefineOptions ropts;
        ropts.seed = cfg.seed + 0x9e37'79b9'7f4a'7c15ULL * static_cast<std::uint64_t>(it);
        ropts.density_split_threshold = cfg.density_split_threshold;
        ropts.random_partner = cfg.random_partner;
        RefinementOutcome refined = refine(g, current, verdicts, ropts);
        stats.refined = true;

        if (refined.verdict == RefinementOutcome::Verdict::regular) {
            current = std::move(refined.partition);
            stats.kept = true;
            stats.kept_sze = sze_idx(g, current);
            candidates.push_back({current, stats.kept_sze, it});
            last_collect_iteration = it;
            trace.push_back(stats);
        } else {
            trace.push_back(stats);
            break;
        }
    }

    const Candidate* best = nullptr;
    for (const auto& c : candidates)
        if (!best || c.sze > best->sze ||
            (c.sze == best->sze && c.partition.k() < best->partition.k()))
            best = &c;

    SummarizeResult result;
    if (!best) {
        if (!cfg.fallback_last)
            throw summary_failed("no partition was collected", std::move(trace));
        result.from_fallback = true;
        result.best = std::move(current);
    } else {
        result.best = best->partition;
    }
    result.summary = make_summary(g, result.best, cfg.d_prime);
    result.trace = std::move(trace);
    return result;
}

// ---- summary file v1 ----

namespace {

void append_fixed(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    out += buf;
}

std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void save_summary(const Summary& s, std::ostream& out) {
    const ReducedGraph& r = s.reduced;
    out << "SZE-SUMMARY v1\n";
    out << "n=" << r.n << " k=" << r.k << " m=" << r.m << " eps=" << format_g17(r.epsilon)
        << " dprime=" << format_g17(s.d_prime) << " sze=" << format_g17(s.sze) << "\n";
    std::string line;
    for (int v = 0; v < r.n; ++v) {
        if (v) line += ' ';
        line += std::to_string(r.membership[v]);
    }
    out << line << "\n";
    for (int i = 0; i < r.k; ++i) {
        line.clear();
        for (int j = i; j < r.k; ++j) {
            if (j > i) line += ' ';
            append_fixed(line, r.weights(i, j));
        }
        out << line << "\n";
    }
    line = "internal=";
    for (int c = 0; c < r.k; ++c) {
        if (c) line += ' ';
        append_fixed(line, s.internal[c]);
    }
    out << line << "\n";
}

void save_summary(const Summary& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    save_summary(s, out);
    if (!out) throw io_error("write failed: " + path);
}

namespace {

std::string next_line(std::istream& in, int& line_no) {
    std::string line;
    if (!std::getline(in, line))
        throw parse_error("summary truncated at line " + std::to_string(line_no + 1));
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

double parse_header_value(const std::string& header, const std::string& key, int line_no) {
    const std::string needle = key + "=";
    const std::size_t pos = header.find(needle);
    if (pos == std::string::npos)
        throw parse_error("summary line " + std::to_string(line_no) + ": missing " + key);
    return std::strtod(header.c_str() + pos + needle.size(), nullptr);
}

}  // namespace

Summary load_summary(std::istream& in) {
    int line_no = 0;
    if (next_line(in, line_no) != "SZE-SUMMARY v1")
        throw parse_error("not a summary file (bad magic line)");
    const std::string header = next_line(in, line_no);
    Summary s;
    ReducedGraph& r = s.reduced;
    r.n = static_cast<int>(parse_header_value(header, "n", line_no));
    r.k = static_cast<int>(parse_header_value(header, "k", line_no));
    r.m = static_cast<int>(parse_header_value(header, "m", line_no));
    r.epsilon = parse_header_value(header, "eps", line_no);
    s.d_prime = parse_header_value(header, "dprime", line_no);
    s.sze = parse_header_value(header, "sze", line_no);
    if (r.n < 0 || r.k < 1 || r.m < 0)
        throw parse_error("summary line 2: implausible dimensions");

    {
        std::istringstream fields(next_line(in, line_no));
        r.membership.resize(r.n);
        for (int v = 0; v < r.n; ++v)
            if (!(fields >> r.membership[v]))
                throw parse_error("summary line " + std::to_string(line_no) +
                                  ": membership too short");
    }
    r.weights = Eigen::MatrixXd::Zero(r.k, r.k);
    for (int i = 0; i < r.k; ++i) {
        std::istringstream fields(next_line(in, line_no));
        for (int j = i; j < r.k; ++j) {
            double w = 0.0;
            if (!(fields >> w))
                throw parse_error("summary line " + std::to_string(line_no) +
                                  ": weight row too short");
            r.weights(i, j) = w;
            r.weights(j, i) = w;
        }
    }
    {
        std::string line = next_line(in, line_no);
        if (line.rfind("internal=", 0) != 0)
            throw parse_error("summary line " + std::to_string(line_no) +
                              ": expected internal= densities");
        std::istringstream fields(line.substr(9));
        s.internal.resize(r.k);
        for (int c = 0; c < r.k; ++c)
            if (!(fields >> s.internal[c]))
                throw parse_error("summary line " + std::to_string(line_no) +
                                  ": internal densities too short");
    }
    return s;
}

Summary load_summary(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path);
    return load_summary(in);
}

}  // namespace sze
