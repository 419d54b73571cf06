#include "fusereid/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "fusereid/errors.hpp"
#include "fusereid/rng.hpp"

namespace fusereid {

namespace {

// Lateral offset between paired walkers, well inside positioning error.
constexpr double kPairOffsetM = 1.5;
// AR(1) coefficient of the wireless bias component, per 1 s step.
constexpr double kBiasCorrelation = 0.95;
// Per-axis std of an occlusion-corrupted embedding around its mean.
// Roughly the identity separation scale: damaged sequences rank poorly
// but stay weakly informative, like real occlusion.
constexpr double kCorruptionNoiseStd = 0.7;
// Runs shorter than this many frames are dropped as detection flicker.
constexpr int kMinSequenceFrames = 6;

struct WaypointWalk {
    std::vector<double> times;
    std::vector<WorldPoint> points;

    static WaypointWalk random(Rng& rng, const Rect& world, double duration, double vmin,
                               double vmax) {
        WaypointWalk walk;
        walk.times.push_back(0.0);
        walk.points.push_back({rng.uniform(world.min_x, world.max_x),
                               rng.uniform(world.min_y, world.max_y)});
        while (walk.times.back() < duration) {
            const WorldPoint next{rng.uniform(world.min_x, world.max_x),
                                  rng.uniform(world.min_y, world.max_y)};
            const double dist = euclidean(walk.points.back(), next);
            const double speed = rng.uniform(vmin, vmax);
            walk.times.push_back(walk.times.back() + std::max(dist / speed, 1e-3));
            walk.points.push_back(next);
        }
        return walk;
    }

    WorldPoint at(double t) const {
        if (t <= times.front()) return points.front();
        if (t >= times.back()) return points.back();
        const auto it = std::upper_bound(times.begin(), times.end(), t);
        const auto hi = static_cast<std::size_t>(it - times.begin());
        const auto lo = hi - 1;
        const double span = times[hi] - times[lo];
        const double a = span > 0.0 ? (t - times[lo]) / span : 0.0;
        return {points[lo].x + a * (points[hi].x - points[lo].x),
                points[lo].y + a * (points[hi].y - points[lo].y)};
    }

    WaypointWalk shifted(double dx, double dy) const {
        WaypointWalk copy = *this;
        for (auto& p : copy.points) {
            p.x += dx;
            p.y += dy;
        }
        return copy;
    }
};

void check_config(const SimConfig& c) {
    const auto fail = [](const std::string& field) {
        throw InvalidConfig("simgen config: invalid " + field);
    };
    if (c.n_identities < 1) fail("n_identities");
    if (c.n_with_phone < 0 || c.n_with_phone > c.n_identities) fail("n_with_phone");
    if (c.camera_footprints.empty()) fail("camera_footprints");
    for (const auto& r : c.camera_footprints) {
        if (!(r.max_x > r.min_x) || !(r.max_y > r.min_y)) fail("camera_footprints");
    }
    if (!(c.duration_s > 0.0)) fail("duration_s");
    if (!(c.walk_speed_min > 0.0) || c.walk_speed_max < c.walk_speed_min) fail("walk_speed");
    if (c.positioning_noise_std < 0.0) fail("positioning_noise_std");
    if (c.dropout_burst_prob < 0.0 || c.dropout_burst_prob > 1.0) fail("dropout_burst_prob");
    if (c.dropout_burst_len < 1) fail("dropout_burst_len");
    if (c.embedding_dim < 1) fail("embedding_dim");
    if (c.embedding_noise_std < 0.0) fail("embedding_noise_std");
    if (c.corruption_rate < 0.0 || c.corruption_rate > 1.0) fail("corruption_rate");
    if (c.clothing_change_prob < 0.0 || c.clothing_change_prob > 1.0) {
        fail("clothing_change_prob");
    }
    if (c.pair_walking_prob < 0.0 || c.pair_walking_prob > 1.0) fail("pair_walking_prob");
}

std::string identity_name(int index) {
    std::ostringstream s;
    s << 'p' << (index < 10 ? "0" : "") << index;
    return s.str();
}

std::vector<double> draw_vector(Rng& rng, int dim, double mean_scale = 1.0) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (auto& x : v) x = rng.normal() * mean_scale;
    return v;
}

struct IdentityAppearance {
    std::vector<double> mean;
    std::vector<double> changed_mean;  // empty when no clothing change
    double change_time = -1.0;
};

}  // namespace

Scenario generate(const SimConfig& config) {
    check_config(config);

    Rect world = config.camera_footprints.front();
    for (const auto& r : config.camera_footprints) {
        world.min_x = std::min(world.min_x, r.min_x);
        world.min_y = std::min(world.min_y, r.min_y);
        world.max_x = std::max(world.max_x, r.max_x);
        world.max_y = std::max(world.max_y, r.max_y);
    }

    Rng root(config.seed);
    Rng pairing_rng = root.fork(1);
    Rng walk_rng_base = root.fork(2);
    Rng appearance_rng_base = root.fork(3);
    Rng wireless_rng_base = root.fork(4);
    Rng sequence_rng_base = root.fork(5);
    const std::uint64_t query_seed = root.next_u64();

    const int n = config.n_identities;

    // Walks. An identity may instead walk glued to the previous unpaired
    // one, reproducing the close-walker confusions of real scenes.
    std::vector<WaypointWalk> walks(static_cast<std::size_t>(n));
    int available_leader = -1;
    for (int i = 0; i < n; ++i) {
        Rng walk_rng = walk_rng_base.fork(static_cast<std::uint64_t>(i));
        const bool pair_up =
            available_leader >= 0 && pairing_rng.bernoulli(config.pair_walking_prob);
        if (pair_up) {
            const double angle = walk_rng.uniform(0.0, 2.0 * 3.14159265358979323846);
            walks[static_cast<std::size_t>(i)] =
                walks[static_cast<std::size_t>(available_leader)].shifted(
                    kPairOffsetM * std::cos(angle), kPairOffsetM * std::sin(angle));
            available_leader = -1;
        } else {
            walks[static_cast<std::size_t>(i)] = WaypointWalk::random(
                walk_rng, world, config.duration_s, config.walk_speed_min,
                config.walk_speed_max);
            available_leader = i;
        }
    }

    // Appearance models.
    std::vector<IdentityAppearance> appearance(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Rng arng = appearance_rng_base.fork(static_cast<std::uint64_t>(i));
        auto& app = appearance[static_cast<std::size_t>(i)];
        app.mean = draw_vector(arng, config.embedding_dim);
        if (arng.bernoulli(config.clothing_change_prob)) {
            app.changed_mean = draw_vector(arng, config.embedding_dim);
            app.change_time = arng.uniform(0.25 * config.duration_s, 0.75 * config.duration_s);
        }
    }

    Scenario scenario;
    scenario.embedding_dim = config.embedding_dim;

    // Video sequences: one per continuous in-footprint run on the 6 fps grid.
    const auto total_frames =
        static_cast<std::int64_t>(std::floor(config.duration_s * 6.0)) + 1;
    for (int cam = 0; cam < config.n_cameras(); ++cam) {
        const Rect& footprint = config.camera_footprints[static_cast<std::size_t>(cam)];
        const std::string camera = "cam" + std::to_string(cam);
        for (int i = 0; i < n; ++i) {
            const auto& walk = walks[static_cast<std::size_t>(i)];
            std::vector<TrajectoryPoint> run;
            int run_index = 0;
            const auto flush_run = [&]() {
                if (static_cast<int>(run.size()) >= kMinSequenceFrames) {
                    VideoSequence seq;
                    seq.camera = camera;
                    seq.identity = identity_name(i);
                    seq.id = camera + "-" + seq.identity + "-" + std::to_string(run_index);
                    seq.trajectory.points = run;
                    scenario.sequences.push_back(std::move(seq));
                    ++run_index;
                }
                run.clear();
            };
            for (std::int64_t k = 0; k < total_frames; ++k) {
                const std::int64_t t_ms = video_frame_millis(k);
                const WorldPoint pos = walk.at(static_cast<double>(t_ms) / 1000.0);
                if (footprint.contains(pos)) {
                    run.push_back({Timestamp{t_ms}, pos});
                } else {
                    flush_run();
                }
            }
            flush_run();
        }
    }

    // Embeddings, with per-sequence corruption events.
    for (std::size_t seq_index = 0; seq_index < scenario.sequences.size(); ++seq_index) {
        auto& seq = scenario.sequences[seq_index];
        const int identity = std::stoi(seq.identity.substr(1));
        const auto& app = appearance[static_cast<std::size_t>(identity)];
        Rng srng = sequence_rng_base.fork(seq_index);
        const double mid_s = 0.5 *
                             static_cast<double>(seq.trajectory.points.front().time.millis +
                                                 seq.trajectory.points.back().time.millis) /
                             1000.0;
        const auto& mean = (app.change_time >= 0.0 && mid_s >= app.change_time)
                               ? app.changed_mean
                               : app.mean;
        seq.embedding.resize(static_cast<std::size_t>(config.embedding_dim));
        if (srng.bernoulli(config.corruption_rate)) {
            if (srng.bernoulli(0.5)) {
                // Heavy occlusion: the appearance signal drowns in noise.
                for (std::size_t j = 0; j < seq.embedding.size(); ++j) {
                    seq.embedding[j] = mean[j] + srng.normal() * kCorruptionNoiseStd;
                }
            } else {
                // Partial occlusion by another pedestrian: the embedding
                // drifts halfway toward a random other identity.
                auto other =
                    static_cast<std::size_t>(srng.uniform_index(static_cast<std::uint64_t>(n)));
                if (static_cast<int>(other) == identity) {
                    other = static_cast<std::size_t>((identity + 1) % n);
                }
                const auto& other_mean = appearance[other].mean;
                for (std::size_t j = 0; j < seq.embedding.size(); ++j) {
                    seq.embedding[j] = 0.5 * (mean[j] + other_mean[j]) +
                                       srng.normal() * config.embedding_noise_std;
                }
            }
        } else {
            for (std::size_t j = 0; j < seq.embedding.size(); ++j) {
                seq.embedding[j] = mean[j] + srng.normal() * config.embedding_noise_std;
            }
        }
    }

    // Wireless trajectories: 1 Hz, drifting bias + white jitter, dropout
    // bursts of whole seconds.
    const auto total_seconds = static_cast<std::int64_t>(std::floor(config.duration_s));
    for (int i = 0; i < config.n_with_phone; ++i) {
        Rng wrng = wireless_rng_base.fork(static_cast<std::uint64_t>(i));
        const auto& walk = walks[static_cast<std::size_t>(i)];
        WirelessTrajectory sig;
        sig.identity = identity_name(i);
        sig.id = "w-" + sig.identity;

        // Positioning error = slowly drifting bias + white jitter. The
        // bias dominates, as it does for real multipath-style GPS error,
        // so short sequences see an essentially constant offset.
        const double bias_std = 1.2 * config.positioning_noise_std;
        const double jitter_std = 0.75 * config.positioning_noise_std;
        double bias_x = wrng.normal() * bias_std;
        double bias_y = wrng.normal() * bias_std;
        const double innovation =
            bias_std * std::sqrt(1.0 - kBiasCorrelation * kBiasCorrelation);

        int dropout_left = 0;
        for (std::int64_t s = 0; s <= total_seconds; ++s) {
            if (s > 0) {
                bias_x = kBiasCorrelation * bias_x + wrng.normal() * innovation;
                bias_y = kBiasCorrelation * bias_y + wrng.normal() * innovation;
            }
            const double jitter_x = wrng.normal() * jitter_std;
            const double jitter_y = wrng.normal() * jitter_std;
            if (dropout_left > 0) {
                --dropout_left;
                continue;
            }
            if (wrng.bernoulli(config.dropout_burst_prob)) {
                dropout_left = config.dropout_burst_len - 1;
                continue;
            }
            const WorldPoint truth = walk.at(static_cast<double>(s));
            sig.points.push_back({Timestamp::from_seconds(s),
                                  {truth.x + bias_x + jitter_x, truth.y + bias_y + jitter_y}});
        }
        if (sig.points.empty()) {
            // Dropout may never erase a whole trajectory.
            const WorldPoint truth = walk.at(0.0);
            sig.points.push_back({Timestamp::from_seconds(0),
                                  {truth.x + bias_x, truth.y + bias_y}});
        }
        scenario.signals.push_back(std::move(sig));
    }

    scenario.queries = make_queries(scenario, query_seed);
    return scenario;
}

std::vector<std::string> make_queries(const Scenario& scenario, std::uint64_t seed) {
    Rng rng(seed);

    // identity -> camera -> sequence ids, in deterministic sorted order.
    std::map<std::string, std::map<std::string, std::vector<std::string>>> by_identity;
    for (const auto& seq : scenario.sequences) {
        if (seq.identity.empty()) continue;
        by_identity[seq.identity][seq.camera].push_back(seq.id);
    }

    std::vector<std::string> queries;
    for (const auto& [identity, cameras] : by_identity) {
        if (cameras.size() < 2) continue;
        for (const auto& [camera, ids] : cameras) {
            queries.push_back(ids[rng.uniform_index(ids.size())]);
        }
    }
    return queries;
}

}  // namespace fusereid
