#pragma once

#include <utility>
#include <vector>

#include "fusereid/matrix.hpp"
#include "fusereid/model.hpp"

namespace fusereid {

/// Visual/wireless point pairs sharing an exact whole-second timestamp.
struct AlignedPairs {
    std::vector<std::pair<WorldPoint, WorldPoint>> pairs;

    std::size_t count() const { return pairs.size(); }
    bool empty() const { return pairs.empty(); }
};

/// Collects the coordinate pairs of `tv` and `tw` with equal timestamps.
/// Only visual samples on whole seconds participate: the wireless stream is
/// 1 Hz, so off-second video frames can never match.
AlignedPairs aligned_pairs(const VisualTrajectory& tv, const WirelessTrajectory& tw);

/// Mean Euclidean distance over the aligned pairs, or infinity when the
/// two trajectories never overlap in time.
double trajectory_distance(const AlignedPairs& pairs);

/// Initial trajectory distance matrix: one row per video sequence, one
/// column per wireless signal.
TrajDistanceMatrix distance_matrix(const Scenario& scenario);

}  // namespace fusereid
