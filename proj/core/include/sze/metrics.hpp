#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

namespace sze {

// Group labels per record, the query, and its relevant set (records sharing
// the query's group, the query's own record included).
struct QueryGroundTruth {
    std::vector<int> group;
    std::int64_t query_id = 0;
    std::unordered_set<std::int64_t> relevant;
};

// (1/|relevant|) Σ_{j=1..k} Precision(j)·Relevance(j) with
// Precision(j) = (relevant among the first j) / j.
double ap_at_k(const std::vector<std::int64_t>& ranking,
               const std::unordered_set<std::int64_t>& relevant, int k);

// Arithmetic mean of per-query average precisions.
double map_at_k(const std::vector<double>& per_query_ap);

}  // namespace sze
