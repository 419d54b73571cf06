#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fusereid/matrix.hpp"

namespace fusereid {
namespace rcpm {

enum class Variant {
    /// Each round re-derives the affinity from S0 and averages D0 values,
    /// so errors cannot accumulate across iterations.
    standard,
    /// Ablation wiring: the affinity unit consumes S^{t-1} and the
    /// distance unit averages D^{t-1} values. Accumulates errors.
    star,
};

struct RcpmConfig {
    int k = 8;                   // neighborhood size, includes self
    double sigma = 74.0;         // distance gate, same unit as D (meters)
    int iterations = 4;
    double fusion_weight = 0.5;  // weight of the visual term in the affinity update
    Variant variant = Variant::standard;
};

/// Matrices threaded through the iteration. `s`/`d` are the current
/// iterates; `s0`/`d0` stay fixed as the anti-accumulation anchors.
struct RcpmState {
    AffinityMatrix s;
    TrajDistanceMatrix d;
    AffinityMatrix s0;
    TrajDistanceMatrix d0;

    static RcpmState initial(AffinityMatrix s0, TrajDistanceMatrix d0) {
        return RcpmState{s0, d0, s0, d0};
    }
};

/// Smallest, over all signals, of the averaged distances of sequences i
/// and j to that signal. Infinity is absorbing: a column where either row
/// has no overlap cannot become the minimum.
double min_avg_distance(const TrajDistanceMatrix& d, std::size_t i, std::size_t j);

/// Visual affinity update unit. Off-diagonal entries whose gate distance
/// is within sigma become a fusion_weight blend of the base affinity and
/// the normalized trajectory agreement (1 - dhat/sigma); everything else
/// keeps the base value. Base is s0 (standard) or the previous s (star);
/// the gate always reads the previous d.
AffinityMatrix affinity_update(const RcpmState& state, const RcpmConfig& config);

/// Indices of the k largest entries of row i, sorted by descending
/// affinity with ties broken by lower index. i itself is always a member:
/// its diagonal affinity is the row maximum.
std::vector<std::size_t> top_k_neighbors(const AffinityMatrix& s, std::size_t i, int k);

/// Trajectory distance update unit. Each entry becomes the affinity-
/// weighted average of its top-k neighbors' distances to the signal,
/// skipping neighbors with no temporal overlap; if no neighbor overlaps,
/// the entry keeps its base value. Averages d0 (standard) or the previous
/// d (star); weights come from the current s.
TrajDistanceMatrix distance_update(const RcpmState& state, const RcpmConfig& config);

/// Runs `config.iterations` rounds of affinity-then-distance updates and
/// returns the final pair. Zero iterations returns the inputs unchanged.
std::pair<AffinityMatrix, TrajDistanceMatrix> run(const AffinityMatrix& s0,
                                                  const TrajDistanceMatrix& d0,
                                                  const RcpmConfig& config);

}  // namespace rcpm
}  // namespace fusereid
