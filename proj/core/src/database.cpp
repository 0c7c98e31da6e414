#include "sze/database.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "sze/parallel.hpp"

namespace sze {

namespace {

constexpr const char* kDbMagic = "SZE-DB v1";

std::int64_t now_epoch() {
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0') return v;
    }
    return static_cast<std::int64_t>(std::time(nullptr));
}

std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string config_string(const SummaryConfig& cfg) {
    std::ostringstream out;
    out << "eps=" << format_g17(cfg.epsilon) << " cmin=" << format_g17(cfg.c_min)
        << " dprime=" << format_g17(cfg.d_prime) << " initk=" << cfg.initial_k
        << " seed=" << cfg.seed << " loop=" << (cfg.loop == LoopMode::classic ? "classic" : "literal");
    return out.str();
}

void write_signature_line(std::ostream& out, const char* key, const SpectralSignature& sig) {
    out << key << '=';
    for (std::size_t i = 0; i < sig.eigs.size(); ++i) {
        if (i) out << ' ';
        out << format_g17(sig.eigs[i]);
    }
    out << '\n';
}

SpectralSignature parse_signature_line(const std::string& line, const std::string& key,
                                       int source_n) {
    SpectralSignature sig;
    sig.source_n = source_n;
    std::istringstream fields(line.substr(key.size() + 1));
    double v = 0.0;
    while (fields >> v) sig.eigs.push_back(v);
    if (sig.eigs.empty()) throw parse_error("store: empty " + key + " line");
    return sig;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void write_record(const SummaryRecord& rec, std::ostream& out) {
    out << "REC " << rec.id << '\n';
    out << "meta n=" << rec.meta.original_n << " created=" << rec.meta.created << ' '
        << rec.meta.config << " src=" << rec.meta.source << '\n';
    save_summary(rec.summary, out);
    write_signature_line(out, "eigs", rec.sig);
    if (rec.full_sig) write_signature_line(out, "fulleigs", *rec.full_sig);
    out << "ENDREC\n";
}

SummaryDb SummaryDb::open(const std::string& path, bool create_missing) {
    SummaryDb db;
    db.path_ = path;
    std::ifstream in(path);
    if (!in) {
        if (!create_missing) throw io_error("cannot open store: " + path);
        std::ofstream create(path);
        if (!create) throw io_error("cannot create store: " + path);
        create << kDbMagic << '\n';
        return db;
    }

    std::string line;
    if (!std::getline(in, line) || line != kDbMagic)
        throw parse_error("not a summary store (bad magic line): " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("REC ", 0) != 0)
            throw parse_error("store: expected record header, got \"" + line + "\"");
        SummaryRecord rec;
        rec.id = std::strtoll(line.c_str() + 4, nullptr, 10);

        if (!std::getline(in, line) || line.rfind("meta ", 0) != 0)
            throw parse_error("store: record missing meta line");
        {
            const std::string meta = line.substr(5);
            auto grab = [&](const std::string& key) -> std::string {
                const std::string needle = key + "=";
                const std::size_t pos = meta.find(needle);
                if (pos == std::string::npos)
                    throw parse_error("store: meta missing " + key);
                const std::size_t start = pos + needle.size();
                if (key == "src") return meta.substr(start);  // src is last, may hold spaces
                return meta.substr(start, meta.find(' ', start) - start);
            };
            rec.meta.original_n = std::atoi(grab("n").c_str());
            rec.meta.created = std::strtoll(grab("created").c_str(), nullptr, 10);
            rec.meta.source = grab("src");
            const std::size_t cfg_begin = meta.find("eps=");
            const std::size_t cfg_end = meta.find(" src=");
            if (cfg_begin != std::string::npos && cfg_end != std::string::npos)
                rec.meta.config = meta.substr(cfg_begin, cfg_end - cfg_begin);
        }

        rec.summary = load_summary(in);
        if (!std::getline(in, line) || line.rfind("eigs=", 0) != 0)
            throw parse_error("store: record missing eigs line");
        rec.sig = parse_signature_line(line, "eigs", rec.summary.reduced.k);

        if (!std::getline(in, line)) throw parse_error("store: record truncated");
        if (line.rfind("fulleigs=", 0) == 0) {
            rec.full_sig = parse_signature_line(line, "fulleigs", rec.meta.original_n);
            if (!std::getline(in, line)) throw parse_error("store: record truncated");
        }
        if (line != "ENDREC") throw parse_error("store: record not terminated");

        db.next_id_ = std::max(db.next_id_, rec.id + 1);
        db.records_.push_back(std::move(rec));
    }
    return db;
}

std::int64_t SummaryDb::add(const Graph& g, const SummaryConfig& cfg, const std::string& source,
                            bool with_full_spectrum) {
    SummaryRecord rec;
    rec.id = next_id_;
    rec.meta.original_n = g.n();
    rec.meta.created = now_epoch();
    rec.meta.config = config_string(cfg);
    rec.meta.source = source;
    try {
        SummarizeResult res = summarize(g, cfg);
        rec.summary = std::move(res.summary);
    } catch (const summary_failed& e) {
        throw summary_failed(source + ": " + e.what(), e.trace);
    }
    rec.sig = spectrum(rec.summary.reduced);
    if (with_full_spectrum) rec.full_sig = spectrum(g);

    std::ofstream out(path_, std::ios::app);
    if (!out) throw io_error("cannot append to store: " + path_);
    write_record(rec, out);
    out.flush();
    if (!out) throw io_error("write failed: " + path_);

    ++next_id_;
    records_.push_back(std::move(rec));
    return records_.back().id;
}

std::vector<QueryHit> rank_by_spectral_distance(const SpectralSignature& query,
                                                const std::vector<SpectralSignature>& store,
                                                int k, std::optional<int> l, double* t_sd) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> dist(store.size(), 0.0);
    parallel_for(static_cast<std::int64_t>(store.size()),
                 [&](std::int64_t lo, std::int64_t hi) {
                     for (std::int64_t i = lo; i < hi; ++i) {
                         const int n1 = static_cast<int>(
                             std::min(query.eigs.size(), store[i].eigs.size()));
                         const int head = l ? std::min(*l, n1) : n1 / 2;
                         dist[i] = spectral_distance(query, store[i], head);
                     }
                 });
    if (t_sd) *t_sd = seconds_since(t0);

    std::vector<QueryHit> hits(store.size());
    for (std::size_t i = 0; i < store.size(); ++i)
        hits[i] = {static_cast<std::int64_t>(i), dist[i]};
    std::sort(hits.begin(), hits.end(), [](const QueryHit& a, const QueryHit& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.id < b.id;
    });
    if (k < static_cast<int>(hits.size())) hits.resize(k);
    return hits;
}

std::vector<QueryHit> SummaryDb::query(const Graph& q, int k, const SummaryConfig& cfg,
                                       std::optional<int> l, QueryTiming* timing) const {
    if (records_.empty()) throw contract_error("query: store is empty");
    if (k < 1) throw contract_error("query: k must be at least 1");

    QueryTiming t;
    auto t0 = std::chrono::steady_clock::now();
    const SummarizeResult res = summarize(q, cfg);
    t.t_summarize = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const SpectralSignature sig = spectrum(res.summary.reduced);
    t.t_eig = seconds_since(t0);

    std::vector<SpectralSignature> store;
    store.reserve(records_.size());
    for (const auto& r : records_) store.push_back(r.sig);
    std::vector<QueryHit> hits = rank_by_spectral_distance(sig, store, k, l, &t.t_sd);
    for (auto& h : hits) h.id = records_[h.id].id;
    if (timing) *timing = t;
    return hits;
}

std::vector<QueryHit> SummaryDb::query_one_stage(const Graph& q, int k, std::optional<int> l,
                                                 QueryTiming* timing) const {
    if (records_.empty()) throw contract_error("query: store is empty");
    if (k < 1) throw contract_error("query: k must be at least 1");
    for (const auto& r : records_)
        if (!r.full_sig)
            throw contract_error("one-stage query needs records added with full spectra");

    QueryTiming t;
    auto t0 = std::chrono::steady_clock::now();
    const SpectralSignature sig = spectrum(q);
    t.t_eig = seconds_since(t0);

    std::vector<SpectralSignature> store;
    store.reserve(records_.size());
    for (const auto& r : records_) store.push_back(*r.full_sig);
    std::vector<QueryHit> hits = rank_by_spectral_distance(sig, store, k, l, &t.t_sd);
    for (auto& h : hits) h.id = records_[h.id].id;
    if (timing) *timing = t;
    return hits;
}

}  // namespace sze
