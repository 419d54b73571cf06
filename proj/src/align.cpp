#include "fusereid/align.hpp"

namespace fusereid {

AlignedPairs aligned_pairs(const VisualTrajectory& tv, const WirelessTrajectory& tw) {
    AlignedPairs out;
    // Both streams are sorted by time, so a single merge pass suffices.
    std::size_t h = 0;
    std::size_t q = 0;
    while (h < tv.points.size() && q < tw.points.size()) {
        const auto& vp = tv.points[h];
        if (!vp.time.is_whole_second()) {
            ++h;
            continue;
        }
        const auto& wp = tw.points[q];
        if (vp.time < wp.time) {
            ++h;
        } else if (wp.time < vp.time) {
            ++q;
        } else {
            out.pairs.emplace_back(vp.pos, wp.pos);
            ++h;
            ++q;
        }
    }
    return out;
}

double trajectory_distance(const AlignedPairs& pairs) {
    if (pairs.empty()) return kNoOverlap;
    double sum = 0.0;
    for (const auto& [v, w] : pairs.pairs) {
        sum += euclidean(v, w);
    }
    return sum / static_cast<double>(pairs.count());
}

TrajDistanceMatrix distance_matrix(const Scenario& scenario) {
    const std::size_t n = scenario.sequences.size();
    const std::size_t m = scenario.signals.size();
    TrajDistanceMatrix d(n, m, kNoOverlap);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            d(i, j) = trajectory_distance(
                aligned_pairs(scenario.sequences[i].trajectory, scenario.signals[j]));
        }
    }
    return d;
}

}  // namespace fusereid
