#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fusereid/model.hpp"

namespace fusereid {

/// Axis-aligned world rectangle, used for camera footprints.
struct Rect {
    double min_x{0.0};
    double min_y{0.0};
    double max_x{0.0};
    double max_y{0.0};

    bool contains(const WorldPoint& p) const {
        return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
    }
};

/// Knobs of the synthetic scenario generator. Every random draw is a pure
/// function of `seed`, so equal configs give identical scenarios.
struct SimConfig {
    int n_identities = 32;
    int n_with_phone = 24;
    std::vector<Rect> camera_footprints{
        {0.0, 0.0, 70.0, 80.0},
        {50.0, 0.0, 120.0, 80.0},
        {25.0, 15.0, 95.0, 65.0},
        {0.0, 25.0, 45.0, 80.0},
    };
    double duration_s = 180.0;
    double walk_speed_min = 0.8;  // m/s
    double walk_speed_max = 1.8;  // m/s

    /// Scale of the wireless positioning error, which is a slowly
    /// drifting bias plus white jitter (per-axis stds 1.2x and 0.75x this
    /// value). With the default 5 m the mean aligned error lands near
    /// 9 m, the scale of phone positioning.
    double positioning_noise_std = 5.0;
    double dropout_burst_prob = 0.02;  // per wireless sample
    int dropout_burst_len = 4;         // seconds removed per burst

    int embedding_dim = 16;
    double embedding_noise_std = 0.15;    // within-identity spread
    double corruption_rate = 0.0;         // occlusion-style embedding damage
    double clothing_change_prob = 0.0;    // identity mean switch mid-scenario
    double pair_walking_prob = 0.0;       // identity walks glued to the previous one

    std::uint64_t seed = 1;

    int n_cameras() const { return static_cast<int>(camera_footprints.size()); }
};

/// Builds a full scenario: waypoint walks, per-camera video sequences on
/// the 6 fps grid, noisy 1 Hz wireless trajectories with dropout bursts,
/// identity-conditioned embeddings, and the query list. Throws
/// InvalidConfig naming the offending field.
Scenario generate(const SimConfig& config);

/// One seeded-random query per (identity, camera) pair, restricted to
/// identities captured by at least two cameras.
std::vector<std::string> make_queries(const Scenario& scenario, std::uint64_t seed);

}  // namespace fusereid
