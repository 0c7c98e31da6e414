#include "sze/metrics.hpp"

#include "sze/errors.hpp"

namespace sze {

double ap_at_k(const std::vector<std::int64_t>& ranking,
               const std::unordered_set<std::int64_t>& relevant, int k) {
    if (relevant.empty()) throw contract_error("ap_at_k: empty relevant set");
    if (k < 0 || k > static_cast<int>(ranking.size()))
        throw contract_error("ap_at_k: k out of range");
    double sum = 0.0;
    int hits = 0;
    for (int j = 1; j <= k; ++j) {
        if (relevant.count(ranking[j - 1])) {
            ++hits;
            sum += static_cast<double>(hits) / j;
        }
    }
    return sum / static_cast<double>(relevant.size());
}

double map_at_k(const std::vector<double>& per_query_ap) {
    if (per_query_ap.empty()) throw contract_error("map_at_k: empty query list");
    double sum = 0.0;
    for (double ap : per_query_ap) sum += ap;
    return sum / static_cast<double>(per_query_ap.size());
}

}  // namespace sze
