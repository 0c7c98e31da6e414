#pragma once

#include "sze/spectral.hpp"

namespace sze {

struct RecordMeta {
    int original_n = 0;
    std::int64_t created = 0;  // unix seconds; SOURCE_DATE_EPOCH overrides the clock
    std::string config;        // summarizer flags used at add time
    std::string source;        // path of the ingested edge list
};

struct SummaryRecord {
    std::int64_t id = 0;
    Summary summary;
    SpectralSignature sig;  // of the reduced graph
    std::optional<SpectralSignature> full_sig;  // of the original graph (benchmark mode)
    RecordMeta meta;
};

struct QueryHit {
    std::int64_t id = 0;
    double distance = 0.0;
};

struct QueryTiming {
    double t_summarize = 0.0;
    double t_eig = 0.0;
    double t_sd = 0.0;
    double total() const { return t_summarize + t_eig + t_sd; }
};

// Distance sweep over a signature store; ids are vector indices. A fixed l
// is clamped per pair to the shorter signature, an empty l means half
// head/half tail per pair. Ties order by ascending index.
std::vector<QueryHit> rank_by_spectral_distance(const SpectralSignature& query,
                                                const std::vector<SpectralSignature>& store,
                                                int k, std::optional<int> l,
                                                double* t_sd = nullptr);

// Single-file append-friendly store of summary records. One writer or any
// number of concurrent readers; a reader parses the file once at open and
// sees that snapshot.
class SummaryDb {
public:
    // Creates an empty store when the file does not exist (unless
    // create_missing is false, in which case a missing file is an io_error).
    static SummaryDb open(const std::string& path, bool create_missing = true);

    // Summarizes g, signs the reduced graph and appends the record. The
    // original graph is not stored; with_full_spectrum additionally keeps
    // its full Laplacian spectrum for one-stage search. A failed
    // summarization leaves the store untouched.
    std::int64_t add(const Graph& g, const SummaryConfig& cfg, const std::string& source,
                     bool with_full_spectrum = false);

    // Two-stage search: summarize q, sign the summary, rank every record by
    // spectral distance, return the k best (all of them when k exceeds the
    // store size).
    std::vector<QueryHit> query(const Graph& q, int k, const SummaryConfig& cfg,
                                std::optional<int> l = {}, QueryTiming* timing = nullptr) const;

    // Baseline: distances on full-graph spectra. Requires records added
    // with with_full_spectrum.
    std::vector<QueryHit> query_one_stage(const Graph& q, int k, std::optional<int> l = {},
                                          QueryTiming* timing = nullptr) const;

    std::size_t size() const { return records_.size(); }
    const SummaryRecord& record(std::size_t idx) const { return records_[idx]; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::vector<SummaryRecord> records_;
    std::int64_t next_id_ = 0;
};

// Record serialization, exposed for round-trip checks.
void write_record(const SummaryRecord& rec, std::ostream& out);

}  // namespace sze
