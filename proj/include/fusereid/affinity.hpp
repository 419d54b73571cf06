#pragma once

#include "fusereid/matrix.hpp"
#include "fusereid/model.hpp"

namespace fusereid {

enum class Metric {
    euclidean,
    cosine,  // 1 - cosine similarity
};

/// Pairwise embedding distances between all sequences of the scenario.
/// Throws ZeroVector for the cosine metric on a zero embedding.
FeatureDistanceMatrix feature_distances(const Scenario& scenario,
                                        Metric metric = Metric::euclidean);

/// Row-wise linear normalization of a distance matrix into [0,1]
/// affinities: the row minimum maps to 1, the row maximum to 0.
///
/// Normalization is per row, so the result is generally not symmetric.
/// A constant row (every gallery item equidistant) carries no ordering
/// information; by convention it becomes 1 on the diagonal and 0.5
/// elsewhere, and a note is written to the log stream.
AffinityMatrix visual_affinity(const FeatureDistanceMatrix& f);

}  // namespace fusereid
