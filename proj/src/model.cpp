#include "fusereid/model.hpp"

#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace fusereid {

bool on_video_frame_grid(std::int64_t millis) {
    if (millis < 0) return false;
    const std::int64_t k = static_cast<std::int64_t>(
        std::llround(static_cast<double>(millis) * 6.0 / 1000.0));
    return video_frame_millis(k) == millis;
}

std::ptrdiff_t Scenario::sequence_index(const std::string& id) const {
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        if (sequences[i].id == id) return static_cast<std::ptrdiff_t>(i);
    }
    return -1;
}

std::ptrdiff_t Scenario::signal_index_for_identity(const std::string& identity) const {
    if (identity.empty()) return -1;
    for (std::size_t m = 0; m < signals.size(); ++m) {
        if (signals[m].identity == identity) return static_cast<std::ptrdiff_t>(m);
    }
    return -1;
}

namespace {

void check_points_increasing(const std::vector<TrajectoryPoint>& points,
                             const std::string& what, std::vector<std::string>& out) {
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].time <= points[i - 1].time) {
            std::ostringstream msg;
            msg << what << ": timestamps not strictly increasing at index " << i;
            out.push_back(msg.str());
            break;
        }
    }
    for (const auto& p : points) {
        if (p.time.millis < 0) {
            out.push_back(what + ": negative timestamp");
            break;
        }
    }
    for (const auto& p : points) {
        if (!std::isfinite(p.pos.x) || !std::isfinite(p.pos.y)) {
            out.push_back(what + ": non-finite coordinate");
            break;
        }
    }
}

}  // namespace

std::vector<std::string> validate(const Scenario& scenario) {
    std::vector<std::string> violations;

    std::unordered_set<std::string> sequence_ids;
    for (const auto& seq : scenario.sequences) {
        const std::string what = "sequence " + seq.id;
        if (!sequence_ids.insert(seq.id).second) {
            violations.push_back("duplicate sequence id " + seq.id);
        }
        if (seq.trajectory.points.empty()) {
            violations.push_back(what + ": empty trajectory");
        }
        check_points_increasing(seq.trajectory.points, what, violations);
        for (const auto& p : seq.trajectory.points) {
            if (!on_video_frame_grid(p.time.millis)) {
                std::ostringstream msg;
                msg << what << ": off-grid video sample at " << p.time.millis << " ms";
                violations.push_back(msg.str());
                break;
            }
        }
        if (static_cast<int>(seq.embedding.size()) != scenario.embedding_dim) {
            std::ostringstream msg;
            msg << what << ": embedding dimension " << seq.embedding.size()
                << " != " << scenario.embedding_dim;
            violations.push_back(msg.str());
        }
        for (double v : seq.embedding) {
            if (!std::isfinite(v)) {
                violations.push_back(what + ": non-finite embedding value");
                break;
            }
        }
    }

    std::unordered_map<std::string, int> signal_identity_count;
    std::unordered_set<std::string> signal_ids;
    for (const auto& sig : scenario.signals) {
        const std::string what = "signal " + sig.id;
        if (!signal_ids.insert(sig.id).second) {
            violations.push_back("duplicate signal id " + sig.id);
        }
        if (sig.points.empty()) {
            violations.push_back(what + ": empty trajectory");
        }
        check_points_increasing(sig.points, what, violations);
        for (const auto& p : sig.points) {
            if (!p.time.is_whole_second()) {
                std::ostringstream msg;
                msg << what << ": off-second wireless sample at " << p.time.millis << " ms";
                violations.push_back(msg.str());
                break;
            }
        }
        if (!sig.identity.empty()) {
            signal_identity_count[sig.identity]++;
        }
    }

    std::set<std::string> reported_identities;
    for (const auto& q : scenario.queries) {
        const auto idx = scenario.sequence_index(q);
        if (idx < 0) {
            violations.push_back("query id " + q + " not found among sequences");
            continue;
        }
        const auto& identity = scenario.sequences[static_cast<std::size_t>(idx)].identity;
        auto it = signal_identity_count.find(identity);
        if (it != signal_identity_count.end() && it->second > 1 &&
            reported_identities.insert(identity).second) {
            std::ostringstream msg;
            msg << "query identity " << identity << " owns " << it->second
                << " signals, expected exactly one";
            violations.push_back(msg.str());
        }
    }

    return violations;
}

}  // namespace fusereid
