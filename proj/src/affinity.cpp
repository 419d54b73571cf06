#include "fusereid/affinity.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <span>

#include "fusereid/errors.hpp"

namespace fusereid {

namespace {

double euclidean_dist(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

double cosine_dist(std::span<const double> a, std::span<const double> b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

bool is_zero(std::span<const double> v) {
    for (double x : v) {
        if (x != 0.0) return false;
    }
    return true;
}

}  // namespace

FeatureDistanceMatrix feature_distances(const Scenario& scenario, Metric metric) {
    const std::size_t n = scenario.sequences.size();
    if (metric == Metric::cosine) {
        for (const auto& seq : scenario.sequences) {
            if (is_zero(seq.embedding)) {
                throw ZeroVector("cosine distance undefined for zero embedding of sequence " +
                                 seq.id);
            }
        }
    }
    FeatureDistanceMatrix f(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& ei = scenario.sequences[i].embedding;
        // Self-distance is exactly zero for both metrics; skipping it avoids
        // rounding noise on the diagonal.
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& ej = scenario.sequences[j].embedding;
            const double d = metric == Metric::euclidean ? euclidean_dist(ei, ej)
                                                         : cosine_dist(ei, ej);
            f(i, j) = d;
            f(j, i) = d;
        }
    }
    return f;
}

AffinityMatrix visual_affinity(const FeatureDistanceMatrix& f) {
    const std::size_t n = f.rows();
    if (n < 2 || f.cols() != n) {
        throw InvalidConfig("visual_affinity requires a square matrix with N >= 2");
    }
    AffinityMatrix s(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double lo = f(i, 0);
        double hi = f(i, 0);
        for (std::size_t j = 1; j < n; ++j) {
            lo = std::min(lo, f(i, j));
            hi = std::max(hi, f(i, j));
        }
        if (hi == lo) {
            // Degenerate constant row: no ordering information. Keep the
            // diagonal at 1 and everything else neutral.
            std::clog << "visual_affinity: constant distance row " << i
                      << ", using neutral affinities\n";
            for (std::size_t j = 0; j < n; ++j) s(i, j) = i == j ? 1.0 : 0.5;
            continue;
        }
        const double range = hi - lo;
        for (std::size_t j = 0; j < n; ++j) {
            s(i, j) = 1.0 - (f(i, j) - lo) / range;
        }
    }
    return s;
}

}  // namespace fusereid
