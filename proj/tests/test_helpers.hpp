#pragma once

#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include "fusereid/model.hpp"
#include "fusereid/rng.hpp"

#include <cmath>

#include "fusereid/matrix.hpp"

namespace helpers {

/// Absolute comparison; infinities must match exactly.
inline bool close(double a, double b, double tol) {
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return std::abs(a - b) <= tol;
}

/// Largest entrywise deviation, requiring matching infinities.
inline double max_abs_diff(const fusereid::Mat& a, const fusereid::Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (std::isinf(a(i, j)) || std::isinf(b(i, j))) {
                if (a(i, j) != b(i, j)) return std::numeric_limits<double>::infinity();
                continue;
            }
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

/// Visual trajectory on whole seconds with constant position.
inline fusereid::VisualTrajectory still_visual(std::int64_t from_s, std::int64_t to_s, double x,
                                               double y) {
    fusereid::VisualTrajectory t;
    for (std::int64_t s = from_s; s <= to_s; ++s) {
        t.points.push_back({fusereid::Timestamp::from_seconds(s), {x, y}});
    }
    return t;
}

inline fusereid::WirelessTrajectory still_wireless(const std::string& id, std::int64_t from_s,
                                                   std::int64_t to_s, double x, double y,
                                                   const std::string& identity = {}) {
    fusereid::WirelessTrajectory t;
    t.id = id;
    t.identity = identity;
    for (std::int64_t s = from_s; s <= to_s; ++s) {
        t.points.push_back({fusereid::Timestamp::from_seconds(s), {x, y}});
    }
    return t;
}

/// Random scenario with plain whole-second trajectories, for oracle
/// comparisons where the 6 fps grid does not matter.
inline fusereid::Scenario random_scenario(fusereid::Rng& rng, std::size_t n_sequences,
                                          std::size_t n_signals, int embedding_dim,
                                          std::int64_t seconds = 12) {
    fusereid::Scenario scenario;
    scenario.embedding_dim = embedding_dim;
    for (std::size_t i = 0; i < n_sequences; ++i) {
        fusereid::VideoSequence seq;
        seq.id = "s" + std::to_string(i);
        seq.camera = "cam" + std::to_string(i % 2);
        seq.identity = "p" + std::to_string(i % 3);
        for (int t = 0; t < embedding_dim; ++t) seq.embedding.push_back(rng.normal());
        const std::int64_t start = static_cast<std::int64_t>(rng.uniform_index(4));
        for (std::int64_t s = start; s < start + seconds; ++s) {
            seq.trajectory.points.push_back({fusereid::Timestamp::from_seconds(s),
                                             {rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)}});
        }
        scenario.sequences.push_back(std::move(seq));
    }
    for (std::size_t m = 0; m < n_signals; ++m) {
        fusereid::WirelessTrajectory sig;
        sig.id = "w" + std::to_string(m);
        sig.identity = "p" + std::to_string(m % 3);
        const std::int64_t start = static_cast<std::int64_t>(rng.uniform_index(6));
        for (std::int64_t s = start; s < start + seconds; ++s) {
            if (rng.bernoulli(0.1)) continue;  // gaps
            sig.points.push_back({fusereid::Timestamp::from_seconds(s),
                                  {rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0)}});
        }
        if (sig.points.empty()) {
            sig.points.push_back({fusereid::Timestamp::from_seconds(start), {0.0, 0.0}});
        }
        scenario.signals.push_back(std::move(sig));
    }
    return scenario;
}

/// Scratch directory removed at scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("fusereid_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

}  // namespace helpers
