#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "rendezvous/montecarlo.hpp"

using namespace rendezvous;
using doctest::Approx;

namespace {
RegularGraph k2() { return RegularGraph(1, {{1}, {0}}); }
}  // namespace

TEST_CASE("simulate_meeting agrees with exact anchors") {
    McConfig cfg;
    cfg.trials = 100000;
    cfg.seed = 20240601;

    const McResult pair = simulate_meeting(k2(), SimpleWalk{}, cfg);
    CHECK(pair.truncated == 0);
    CHECK(std::abs(pair.mean - 1.0) <= pair.half_width);

    const McResult tri = simulate_meeting(build_circle(3), SimpleWalk{}, cfg);
    CHECK(tri.truncated == 0);
    CHECK(std::abs(tri.mean - 2.0) <= tri.half_width);
    CHECK(tri.half_width == Approx(1.96 * tri.stddev / std::sqrt(100000.0)));
}

TEST_CASE("determinism") {
    const auto g = random_regular(10, 3, 5);
    McConfig cfg;
    cfg.trials = 1;
    cfg.seed = 77;
    cfg.record_trials = true;
    const auto a = simulate_meeting(g, SimpleWalk{}, cfg);
    const auto b = simulate_meeting(g, SimpleWalk{}, cfg);
    CHECK(a.taus == b.taus);

    cfg.trials = 2000;
    const auto serial = simulate_meeting(g, SimpleWalk{}, cfg);
    cfg.threads = 4;
    const auto parallel = simulate_meeting(g, SimpleWalk{}, cfg);
    CHECK(serial.taus == parallel.taus);
    CHECK(serial.mean == parallel.mean);
    CHECK(serial.stddev == parallel.stddev);

    // trial t of a larger run is the same substream
    CHECK(trace_trial(g, SimpleWalk{}, 77, 5, 1000000).tau == serial.taus[5]);
}

TEST_CASE("meeting_time_histogram") {
    McConfig cfg;
    cfg.trials = 100000;
    cfg.seed = 3;

    const auto pair = meeting_time_histogram(k2(), SimpleWalk{}, cfg);
    std::uint64_t total = 0;
    for (const auto& [tau, count] : pair) total += count;
    CHECK(total == cfg.trials);
    // co-located start with probability 1/2; binomial sd ~ 158
    CHECK(std::abs(static_cast<double>(pair.at(0)) - 50000.0) < 800.0);
    // per-step meeting probability 1/2 gives bin(k+1)/bin(k) ~ 1/2
    for (std::uint64_t k = 1; k <= 4; ++k) {
        const double ratio = static_cast<double>(pair.at(k + 1)) / static_cast<double>(pair.at(k));
        CHECK(ratio == Approx(0.5).epsilon(0.1));
    }

    const auto tri = meeting_time_histogram(build_circle(3), SimpleWalk{}, cfg);
    CHECK(std::abs(static_cast<double>(tri.at(0)) - 100000.0 / 3.0) < 800.0);
}

TEST_CASE("swapping walkers do not meet") {
    // Pure walk on the 4-cycle: walkers at distance 1 swap or keep distance
    // parity odd forever, so co-location is only possible from even distance.
    const auto g = build_circle(4);
    const CircleWalk pure{0.5, 0.5, 0.0};
    std::size_t swaps = 0;
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        const auto tr = trace_trial(g, pure, 9, trial, 50);
        const bool odd_start = (tr.first[0] + 4 - tr.second[0]) % 2 == 1;
        if (odd_start) CHECK(tr.truncated);
        for (std::size_t t = 1; t < tr.first.size(); ++t) {
            if (tr.first[t] == tr.second[t - 1] && tr.second[t] == tr.first[t - 1] && tr.first[t] != tr.second[t]) ++swaps;
            // co-location only at the final recorded tick
            if (t + 1 < tr.first.size()) CHECK(tr.first[t] != tr.second[t]);
        }
        if (!tr.truncated) {
            CHECK(tr.first.back() == tr.second.back());
            CHECK(tr.tau == tr.first.size() - 1);
        }
    }
    CHECK(swaps > 0);
}

TEST_CASE("truncation is counted") {
    McConfig cfg;
    cfg.trials = 100;
    cfg.seed = 1;
    cfg.max_steps = 1;
    const auto r = simulate_meeting(build_circle(50), CircleWalk{}, cfg);
    CHECK(r.truncated > 50);
    CHECK_THROWS_AS(simulate_meeting(build_circle(5), CircleWalk{}, McConfig{0, 1, 10, 1, false}), std::invalid_argument);
}
