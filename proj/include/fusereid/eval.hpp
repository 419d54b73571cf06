#pragma once

#include <span>
#include <string>
#include <vector>

#include "fusereid/matrix.hpp"
#include "fusereid/model.hpp"

namespace fusereid {

/// One query's gallery ordering with ground-truth relevance flags.
struct RankedList {
    std::string query_id;
    std::vector<std::string> gallery_ids;
    std::vector<char> relevant;  // parallel to gallery_ids
};

struct MetricReport {
    std::vector<double> cmc;  // cmc[r] = fraction of queries matched within rank r+1
    double map{0.0};
    std::vector<double> per_query_ap;
};

struct EvalOptions {
    /// Drop gallery items sharing both identity and camera with the query,
    /// the usual cross-camera retrieval protocol. Switchable because some
    /// deployments want same-camera matches counted.
    bool filter_same_camera = true;
    int max_rank = 20;
};

/// Gallery of video sequences ranked by descending affinity to the query.
/// Excludes the query itself and, under the protocol filter, its
/// same-camera same-identity clones. Ties keep scenario order.
RankedList reid_rank(const AffinityMatrix& s, const Scenario& scenario,
                     const std::string& query_id, const EvalOptions& options = {});

/// Wireless signals ranked by ascending trajectory distance to the query;
/// no-overlap entries sort last, ties keep scenario order.
RankedList signal_rank(const TrajDistanceMatrix& d, const Scenario& scenario,
                       const std::string& query_id);

/// cmc[r] = fraction of queries whose first relevant item appears at rank
/// <= r+1. Throws NoRelevantItem for a query with no ground-truth match.
std::vector<double> cmc(std::span<const RankedList> lists, int max_rank);

/// Mean over queries of average precision of the ranked gallery.
double mean_ap(std::span<const RankedList> lists);

/// Person re-identification metrics over every query of the scenario.
MetricReport evaluate_reid(const AffinityMatrix& s, const Scenario& scenario,
                           const EvalOptions& options = {});

/// Signal-matching metrics over the queries whose identity carries a
/// phone; queries without a signal are outside this subtask.
MetricReport evaluate_signal(const TrajDistanceMatrix& d, const Scenario& scenario,
                             const EvalOptions& options = {});

/// The no-fusion signal-matching baseline: rank raw initial trajectory
/// distances directly.
MetricReport sm_baseline(const TrajDistanceMatrix& d0, const Scenario& scenario,
                         const EvalOptions& options = {});

}  // namespace fusereid
