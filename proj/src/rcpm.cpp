#include "fusereid/rcpm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fusereid/errors.hpp"

namespace fusereid {
namespace rcpm {

namespace {

void check_config(const RcpmConfig& config, std::size_t n) {
    if (config.k < 1 || static_cast<std::size_t>(config.k) > n) {
        throw InvalidConfig("rcpm: k must be in [1, N]");
    }
    if (!(config.sigma > 0.0)) {
        throw InvalidConfig("rcpm: sigma must be positive");
    }
    if (config.iterations < 0) {
        throw InvalidConfig("rcpm: iterations must be non-negative");
    }
    if (config.fusion_weight < 0.0 || config.fusion_weight > 1.0) {
        throw InvalidConfig("rcpm: fusion_weight must be in [0,1]");
    }
}

}  // namespace

double min_avg_distance(const TrajDistanceMatrix& d, std::size_t i, std::size_t j) {
    double best = kNoOverlap;
    for (std::size_t m = 0; m < d.cols(); ++m) {
        // (finite + inf)/2 is inf, which never wins the minimum.
        const double avg = 0.5 * (d(i, m) + d(j, m));
        best = std::min(best, avg);
    }
    return best;
}

AffinityMatrix affinity_update(const RcpmState& state, const RcpmConfig& config) {
    const std::size_t n = state.s0.rows();
    const AffinityMatrix& base = config.variant == Variant::star ? state.s : state.s0;
    const double w = config.fusion_weight;

    AffinityMatrix out(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                out(i, j) = base(i, j);
                continue;
            }
            const double dhat = min_avg_distance(state.d, i, j);
            if (dhat > config.sigma) {
                out(i, j) = base(i, j);
            } else {
                // dhat <= sigma here, so the trajectory term is in [0,1].
                out(i, j) = base(i, j) * w + (1.0 - dhat / config.sigma) * (1.0 - w);
            }
        }
    }
    return out;
}

std::vector<std::size_t> top_k_neighbors(const AffinityMatrix& s, std::size_t i, int k) {
    const std::size_t n = s.rows();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return s(i, a) > s(i, b);
    });
    // The row owner is a mandatory member. Its diagonal affinity ties the
    // row maximum, so forcing it in only ever displaces an equal-valued
    // candidate from the boundary of the set.
    std::vector<std::size_t> result;
    result.reserve(static_cast<std::size_t>(k));
    result.push_back(i);
    for (std::size_t idx : order) {
        if (result.size() == static_cast<std::size_t>(k)) break;
        if (idx != i) result.push_back(idx);
    }
    std::sort(result.begin(), result.end());
    return result;
}

TrajDistanceMatrix distance_update(const RcpmState& state, const RcpmConfig& config) {
    const std::size_t n = state.s.rows();
    const std::size_t m = state.d0.cols();
    const TrajDistanceMatrix& base = config.variant == Variant::star ? state.d : state.d0;

    TrajDistanceMatrix out(n, m, kNoOverlap);
    for (std::size_t i = 0; i < n; ++i) {
        const auto psi = top_k_neighbors(state.s, i, config.k);
        for (std::size_t col = 0; col < m; ++col) {
            double num = 0.0;
            double den = 0.0;
            for (std::size_t kk : psi) {
                const double dist = base(kk, col);
                if (std::isinf(dist)) continue;  // indicator zero
                const double weight = state.s(i, kk);
                num += dist * weight;
                den += weight;
            }
            out(i, col) = den > 0.0 ? num / den : base(i, col);
        }
    }
    return out;
}

std::pair<AffinityMatrix, TrajDistanceMatrix> run(const AffinityMatrix& s0,
                                                  const TrajDistanceMatrix& d0,
                                                  const RcpmConfig& config) {
    if (s0.rows() != s0.cols() || s0.rows() != d0.rows()) {
        throw InvalidConfig("rcpm: matrix shapes are inconsistent");
    }
    check_config(config, s0.rows());

    RcpmState state = RcpmState::initial(s0, d0);
    for (int t = 0; t < config.iterations; ++t) {
        state.s = affinity_update(state, config);
        state.d = distance_update(state, config);
    }
    return {std::move(state.s), std::move(state.d)};
}

}  // namespace rcpm
}  // namespace fusereid
