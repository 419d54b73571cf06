#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace fusereid {

/// Time of one sample, in integer milliseconds since the scenario epoch.
///
/// Wireless fixes land on whole seconds; video frames land on the 6 fps
/// grid (multiples of 1000/6 ms, rounded to the nearest millisecond).
/// Trajectory alignment matches timestamps by exact integer equality, so
/// both streams share one clock with no floating-point slack.
struct Timestamp {
    std::int64_t millis{0};

    auto operator<=>(const Timestamp&) const = default;

    bool is_whole_second() const { return millis % 1000 == 0; }

    static Timestamp from_seconds(std::int64_t s) { return Timestamp{s * 1000}; }
};

/// True when `millis` falls on the 6 fps frame grid (k * 1000/6, rounded).
bool on_video_frame_grid(std::int64_t millis);

/// Millisecond timestamp of video frame `k` on the 6 fps grid.
inline std::int64_t video_frame_millis(std::int64_t k) {
    return static_cast<std::int64_t>(std::llround(static_cast<double>(k) * 1000.0 / 6.0));
}

/// Position in the local planar frame: x meters east, y meters north.
struct WorldPoint {
    double x{0.0};
    double y{0.0};

    bool operator==(const WorldPoint&) const = default;
};

inline double euclidean(const WorldPoint& a, const WorldPoint& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

struct TrajectoryPoint {
    Timestamp time;
    WorldPoint pos;

    bool operator==(const TrajectoryPoint&) const = default;
};

/// World-coordinate path of a pedestrian as seen by one camera.
/// Timestamps strictly increasing, length >= 1.
struct VisualTrajectory {
    std::vector<TrajectoryPoint> points;

    bool operator==(const VisualTrajectory&) const = default;
};

/// 1 Hz positioning fixes of one mobile phone. Timestamps are whole
/// seconds, strictly increasing; gaps from signal dropout are allowed.
struct WirelessTrajectory {
    std::string id;
    std::string identity;  // ground truth, read by eval only
    std::vector<TrajectoryPoint> points;

    bool operator==(const WirelessTrajectory&) const = default;
};

/// One tracklet: camera, appearance embedding, and visual trajectory.
struct VideoSequence {
    std::string id;
    std::string camera;
    std::string identity;  // ground truth, read by eval only
    std::vector<double> embedding;
    VisualTrajectory trajectory;

    bool operator==(const VideoSequence&) const = default;
};

/// A full dataset. Query sequences are members of `sequences`; the gallery
/// is the whole database, matching the merged query/gallery protocol.
struct Scenario {
    std::vector<VideoSequence> sequences;
    std::vector<WirelessTrajectory> signals;
    std::vector<std::string> queries;
    int embedding_dim{0};

    bool operator==(const Scenario&) const = default;

    /// Index of the sequence with this id, or -1.
    std::ptrdiff_t sequence_index(const std::string& id) const;

    /// Index of the signal whose identity matches, or -1.
    std::ptrdiff_t signal_index_for_identity(const std::string& identity) const;
};

/// Checks every structural invariant and returns one message per breach.
/// Violations are data, not failures; an empty result means a valid scenario.
std::vector<std::string> validate(const Scenario& scenario);

}  // namespace fusereid
