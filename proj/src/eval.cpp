#include "fusereid/eval.hpp"

#include <algorithm>
#include <numeric>

#include "fusereid/errors.hpp"

namespace fusereid {

namespace {

std::size_t require_query_index(const Scenario& scenario, const std::string& query_id) {
    const auto idx = scenario.sequence_index(query_id);
    if (idx < 0) throw UnknownQuery("unknown query id " + query_id);
    return static_cast<std::size_t>(idx);
}

// Matrices may come from external CSV files, so shapes are not a given.
void require_shape(const Mat& m, std::size_t rows, std::size_t cols, const char* what) {
    if (m.rows() != rows || m.cols() != cols) {
        throw InvalidConfig(std::string(what) + " matrix shape does not match the scenario");
    }
}

}  // namespace

RankedList reid_rank(const AffinityMatrix& s, const Scenario& scenario,
                     const std::string& query_id, const EvalOptions& options) {
    require_shape(s, scenario.sequences.size(), scenario.sequences.size(), "affinity");
    const std::size_t qi = require_query_index(scenario, query_id);
    const auto& query = scenario.sequences[qi];

    std::vector<std::size_t> candidates;
    candidates.reserve(scenario.sequences.size());
    for (std::size_t j = 0; j < scenario.sequences.size(); ++j) {
        if (j == qi) continue;
        const auto& item = scenario.sequences[j];
        if (options.filter_same_camera && !query.identity.empty() &&
            item.identity == query.identity && item.camera == query.camera) {
            continue;
        }
        candidates.push_back(j);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) { return s(qi, a) > s(qi, b); });

    RankedList out;
    out.query_id = query_id;
    out.gallery_ids.reserve(candidates.size());
    out.relevant.reserve(candidates.size());
    for (std::size_t j : candidates) {
        const auto& item = scenario.sequences[j];
        out.gallery_ids.push_back(item.id);
        out.relevant.push_back(!query.identity.empty() && item.identity == query.identity);
    }
    return out;
}

RankedList signal_rank(const TrajDistanceMatrix& d, const Scenario& scenario,
                       const std::string& query_id) {
    require_shape(d, scenario.sequences.size(), scenario.signals.size(), "trajectory distance");
    const std::size_t qi = require_query_index(scenario, query_id);
    const auto& query = scenario.sequences[qi];

    std::vector<std::size_t> order(scenario.signals.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Infinity compares larger than any finite distance, so no-overlap
    // signals end up last; stable sort keeps scenario order on ties.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d(qi, a) < d(qi, b); });

    RankedList out;
    out.query_id = query_id;
    for (std::size_t m : order) {
        const auto& sig = scenario.signals[m];
        out.gallery_ids.push_back(sig.id);
        out.relevant.push_back(!query.identity.empty() && sig.identity == query.identity);
    }
    return out;
}

std::vector<double> cmc(std::span<const RankedList> lists, int max_rank) {
    std::vector<double> table(static_cast<std::size_t>(max_rank), 0.0);
    for (const auto& list : lists) {
        const auto it = std::find(list.relevant.begin(), list.relevant.end(), char{1});
        if (it == list.relevant.end()) {
            throw NoRelevantItem("query " + list.query_id + " has no relevant gallery item");
        }
        const auto first = static_cast<std::size_t>(it - list.relevant.begin());
        for (std::size_t r = first; r < table.size(); ++r) table[r] += 1.0;
    }
    if (!lists.empty()) {
        for (double& v : table) v /= static_cast<double>(lists.size());
    }
    return table;
}

double mean_ap(std::span<const RankedList> lists) {
    double sum = 0.0;
    for (const auto& list : lists) {
        int hits = 0;
        double ap = 0.0;
        for (std::size_t p = 0; p < list.relevant.size(); ++p) {
            if (!list.relevant[p]) continue;
            ++hits;
            ap += static_cast<double>(hits) / static_cast<double>(p + 1);
        }
        if (hits == 0) {
            throw NoRelevantItem("query " + list.query_id + " has no relevant gallery item");
        }
        sum += ap / hits;
    }
    return lists.empty() ? 0.0 : sum / static_cast<double>(lists.size());
}

namespace {

MetricReport report_from_lists(const std::vector<RankedList>& lists, int max_rank) {
    MetricReport report;
    report.cmc = cmc(lists, max_rank);
    report.per_query_ap.reserve(lists.size());
    double sum = 0.0;
    for (const auto& list : lists) {
        const double ap = mean_ap(std::span(&list, 1));
        report.per_query_ap.push_back(ap);
        sum += ap;
    }
    report.map = lists.empty() ? 0.0 : sum / static_cast<double>(lists.size());
    return report;
}

}  // namespace

MetricReport evaluate_reid(const AffinityMatrix& s, const Scenario& scenario,
                           const EvalOptions& options) {
    std::vector<RankedList> lists;
    lists.reserve(scenario.queries.size());
    for (const auto& q : scenario.queries) {
        lists.push_back(reid_rank(s, scenario, q, options));
    }
    return report_from_lists(lists, options.max_rank);
}

MetricReport evaluate_signal(const TrajDistanceMatrix& d, const Scenario& scenario,
                             const EvalOptions& options) {
    std::vector<RankedList> lists;
    for (const auto& q : scenario.queries) {
        const auto qi = scenario.sequence_index(q);
        if (qi < 0) throw UnknownQuery("unknown query id " + q);
        const auto& identity = scenario.sequences[static_cast<std::size_t>(qi)].identity;
        if (scenario.signal_index_for_identity(identity) < 0) continue;
        lists.push_back(signal_rank(d, scenario, q));
    }
    return report_from_lists(lists, options.max_rank);
}

MetricReport sm_baseline(const TrajDistanceMatrix& d0, const Scenario& scenario,
                         const EvalOptions& options) {
    return evaluate_signal(d0, scenario, options);
}

}  // namespace fusereid
