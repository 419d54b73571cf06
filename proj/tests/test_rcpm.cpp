#include <doctest.h>

#include <cmath>

#include "fusereid/errors.hpp"
#include "fusereid/rcpm.hpp"
#include "fusereid/rng.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace fusereid;
using rcpm::RcpmConfig;
using rcpm::RcpmState;
using rcpm::Variant;

namespace {

/// Random affinity matrix with unit diagonal, plus a random distance
/// matrix with some no-overlap entries.
std::pair<Mat, Mat> random_instance(Rng& rng, std::size_t n, std::size_t m,
                                    double inf_rate = 0.25) {
    Mat s(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        s(i, i) = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) s(i, j) = rng.uniform();
        }
    }
    Mat d(n, m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            d(i, j) = rng.bernoulli(inf_rate) ? kNoOverlap : rng.uniform(0.0, 120.0);
        }
    }
    return {s, d};
}

}  // namespace

TEST_CASE("min_avg_distance: infinity is absorbing per column") {
    Mat d(2, 2, 0.0);
    d(0, 0) = 10.0;
    d(0, 1) = kNoOverlap;
    d(1, 0) = 20.0;
    d(1, 1) = 5.0;
    CHECK(rcpm::min_avg_distance(d, 0, 1) == doctest::Approx(15.0));
}

TEST_CASE("min_avg_distance: all-inf rows give infinity") {
    Mat d(2, 3, kNoOverlap);
    CHECK(std::isinf(rcpm::min_avg_distance(d, 0, 1)));
}

TEST_CASE("min_avg_distance: i == j averages the row with itself") {
    Mat d(1, 2, 0.0);
    d(0, 0) = 8.0;
    d(0, 1) = 12.0;
    CHECK(rcpm::min_avg_distance(d, 0, 0) == doctest::Approx(8.0));
}

TEST_CASE("affinity_update: hand-computed fused value") {
    // S0 off-diagonal 0.6; one signal at distance 37 from both sequences,
    // so the gate distance is 37 against sigma 74.
    Mat s0(2, 2, 0.6);
    s0(0, 0) = s0(1, 1) = 1.0;
    Mat d0(2, 1, 37.0);

    RcpmConfig cfg;
    cfg.k = 2;
    cfg.sigma = 74.0;
    const auto s = rcpm::affinity_update(RcpmState::initial(s0, d0), cfg);
    CHECK(s(0, 1) == doctest::Approx(0.55).epsilon(1e-12));
    CHECK(s(1, 0) == doctest::Approx(0.55).epsilon(1e-12));
}

TEST_CASE("affinity_update: gate distance above sigma keeps the initial affinity") {
    Mat s0(2, 2, 0.6);
    s0(0, 0) = s0(1, 1) = 1.0;
    Mat d0(2, 1, 80.0);

    RcpmConfig cfg;
    cfg.k = 2;
    cfg.sigma = 74.0;
    const auto s = rcpm::affinity_update(RcpmState::initial(s0, d0), cfg);
    CHECK(s(0, 1) == 0.6);
}

TEST_CASE("affinity_update: diagonal stays fixed") {
    Rng rng(3);
    auto [s0, d0] = random_instance(rng, 6, 3);
    RcpmConfig cfg;
    cfg.k = 4;
    cfg.sigma = 60.0;
    const auto s = rcpm::affinity_update(RcpmState::initial(s0, d0), cfg);
    for (std::size_t i = 0; i < 6; ++i) CHECK(s(i, i) == s0(i, i));
}

TEST_CASE("affinity_update is memoryless in S for the standard variant") {
    Rng rng(31);
    auto [s0, d0] = random_instance(rng, 8, 4);
    RcpmConfig cfg;
    cfg.k = 4;
    cfg.sigma = 70.0;

    RcpmState state = RcpmState::initial(s0, d0);
    const auto once = rcpm::affinity_update(state, cfg);

    // Scramble the current S; with a frozen D the unit must not care.
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) state.s(i, j) = rng.uniform();
    }
    const auto again = rcpm::affinity_update(state, cfg);
    CHECK(once == again);
}

TEST_CASE("top_k_neighbors: k = 1 keeps only the sequence itself") {
    Rng rng(37);
    auto [s0, d0] = random_instance(rng, 5, 2);
    for (std::size_t i = 0; i < 5; ++i) {
        const auto psi = rcpm::top_k_neighbors(s0, i, 1);
        REQUIRE(psi.size() == 1);
        CHECK(psi[0] == i);
    }
}

TEST_CASE("top_k_neighbors: descending affinity selection") {
    Mat s(4, 4, 0.0);
    const double row[4] = {1.0, 0.9, 0.2, 0.8};
    for (std::size_t j = 0; j < 4; ++j) s(0, j) = row[j];
    const auto psi = rcpm::top_k_neighbors(s, 0, 3);
    CHECK(psi == std::vector<std::size_t>{0, 1, 3});
}

TEST_CASE("top_k_neighbors: tie at the k-th value goes to the lower index") {
    Mat s(4, 4, 0.0);
    s(0, 0) = 1.0;
    s(0, 1) = 0.5;
    s(0, 2) = 0.5;
    s(0, 3) = 0.5;
    const auto psi = rcpm::top_k_neighbors(s, 0, 2);
    CHECK(psi == std::vector<std::size_t>{0, 1});
}

TEST_CASE("distance_update: hand-computed weighted average") {
    // Neighborhood {0, 1} with affinities (1.0, 0.5) and distances (10, 20):
    // (10*1 + 20*0.5) / 1.5 = 13.333...
    Mat s(2, 2, 0.5);
    s(0, 0) = s(1, 1) = 1.0;
    Mat d0(2, 1, 0.0);
    d0(0, 0) = 10.0;
    d0(1, 0) = 20.0;

    RcpmConfig cfg;
    cfg.k = 2;
    cfg.sigma = 74.0;
    RcpmState state = RcpmState::initial(s, d0);
    const auto d = rcpm::distance_update(state, cfg);
    CHECK(d(0, 0) == doctest::Approx(40.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("distance_update: k = 1 is the identity on finite entries") {
    Rng rng(41);
    auto [s0, d0] = random_instance(rng, 6, 4);
    RcpmConfig cfg;
    cfg.k = 1;
    cfg.sigma = 74.0;
    const auto d = rcpm::distance_update(RcpmState::initial(s0, d0), cfg);
    CHECK(helpers::max_abs_diff(d, d0) == 0.0);
}

TEST_CASE("distance_update: all-zero indicators keep the initial value") {
    Mat s(3, 3, 0.9);
    for (std::size_t i = 0; i < 3; ++i) s(i, i) = 1.0;
    Mat d0(3, 1, kNoOverlap);

    RcpmConfig cfg;
    cfg.k = 3;
    cfg.sigma = 74.0;
    const auto d = rcpm::distance_update(RcpmState::initial(s, d0), cfg);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::isinf(d(i, 0)));
}

TEST_CASE("run: zero iterations returns the inputs unchanged") {
    Rng rng(43);
    auto [s0, d0] = random_instance(rng, 7, 3);
    RcpmConfig cfg;
    cfg.k = 3;
    cfg.iterations = 0;
    const auto [s, d] = rcpm::run(s0, d0, cfg);
    CHECK(s == s0);
    CHECK(d == d0);
}

TEST_CASE("run: k = 1 with every gate above sigma is the identity") {
    Rng rng(47);
    Mat s0(5, 5, 0.0);
    for (std::size_t i = 0; i < 5; ++i) {
        s0(i, i) = 1.0;
        for (std::size_t j = 0; j < 5; ++j) {
            if (i != j) s0(i, j) = rng.uniform();
        }
    }
    // All distances far beyond sigma, so every gate stays closed.
    Mat d0(5, 2, 0.0);
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 2; ++j) d0(i, j) = rng.uniform(500.0, 900.0);
    }
    RcpmConfig cfg;
    cfg.k = 1;
    cfg.sigma = 74.0;
    for (int iterations : {1, 3, 8}) {
        cfg.iterations = iterations;
        const auto [s, d] = rcpm::run(s0, d0, cfg);
        CHECK(s == s0);
        CHECK(d == d0);
    }
}

TEST_CASE("run matches the step-by-step oracle on random instances") {
    Rng rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        auto [s0, d0] = random_instance(rng, 10, 3);
        RcpmConfig cfg;
        cfg.k = 4;
        cfg.sigma = 74.0;
        cfg.iterations = 4;
        cfg.variant = trial % 2 == 0 ? Variant::standard : Variant::star;

        const auto [s, d] = rcpm::run(s0, d0, cfg);
        const auto [s_ref, d_ref] = oracles::rcpm_bruteforce(s0, d0, cfg);
        CHECK(helpers::max_abs_diff(s, s_ref) <= 1e-9);
        CHECK(helpers::max_abs_diff(d, d_ref) <= 1e-9);
    }
}

TEST_CASE("run: star and standard agree after exactly one iteration") {
    // At t = 1 the previous state equals the initial state, so both
    // wirings consume identical inputs.
    Rng rng(59);
    auto [s0, d0] = random_instance(rng, 8, 3);
    RcpmConfig cfg;
    cfg.k = 4;
    cfg.sigma = 74.0;
    cfg.iterations = 1;
    cfg.variant = Variant::standard;
    const auto [s_std, d_std] = rcpm::run(s0, d0, cfg);
    cfg.variant = Variant::star;
    const auto [s_star, d_star] = rcpm::run(s0, d0, cfg);
    CHECK(s_std == s_star);
    CHECK(d_std == d_star);
}

TEST_CASE("run: bounded affinities and neighborhood-bounded distances") {
    Rng rng(61);
    for (int trial = 0; trial < 5; ++trial) {
        auto [s0, d0] = random_instance(rng, 9, 4);
        RcpmConfig cfg;
        cfg.k = 5;
        cfg.sigma = 80.0;
        cfg.iterations = 4;
        const auto [s, d] = rcpm::run(s0, d0, cfg);

        for (std::size_t i = 0; i < s.rows(); ++i) {
            CHECK(s(i, i) == s0(i, i));  // diagonal fixity
            for (std::size_t j = 0; j < s.cols(); ++j) {
                CHECK(s(i, j) >= 0.0);
                CHECK(s(i, j) <= 1.0);
            }
        }
        // Every finite updated distance is a weighted average of initial
        // column values, so it must stay inside the column's finite range.
        for (std::size_t m = 0; m < d.cols(); ++m) {
            double lo = kNoOverlap, hi = -kNoOverlap;
            for (std::size_t i = 0; i < d.rows(); ++i) {
                if (std::isinf(d0(i, m))) continue;
                lo = std::min(lo, d0(i, m));
                hi = std::max(hi, d0(i, m));
            }
            for (std::size_t i = 0; i < d.rows(); ++i) {
                if (std::isinf(d(i, m))) continue;
                CHECK(d(i, m) >= lo - 1e-9);
                CHECK(d(i, m) <= hi + 1e-9);
            }
        }
    }
}

TEST_CASE("run is deterministic") {
    Rng rng(67);
    auto [s0, d0] = random_instance(rng, 12, 5);
    RcpmConfig cfg;
    cfg.k = 6;
    cfg.sigma = 74.0;
    cfg.iterations = 4;
    const auto first = rcpm::run(s0, d0, cfg);
    const auto second = rcpm::run(s0, d0, cfg);
    CHECK(first.first == second.first);
    CHECK(first.second == second.second);
}

TEST_CASE("run rejects invalid configurations") {
    Mat s0(3, 3, 0.5);
    for (std::size_t i = 0; i < 3; ++i) s0(i, i) = 1.0;
    Mat d0(3, 2, 10.0);

    RcpmConfig cfg;
    cfg.k = 4;  // > N
    CHECK_THROWS_AS(rcpm::run(s0, d0, cfg), InvalidConfig);
    cfg.k = 2;
    cfg.sigma = 0.0;
    CHECK_THROWS_AS(rcpm::run(s0, d0, cfg), InvalidConfig);
    cfg.sigma = 74.0;
    cfg.fusion_weight = 1.5;
    CHECK_THROWS_AS(rcpm::run(s0, d0, cfg), InvalidConfig);
}
