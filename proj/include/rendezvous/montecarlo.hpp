#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "rendezvous/graph.hpp"
#include "rendezvous/walk.hpp"

namespace rendezvous {

struct McConfig {
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    std::uint64_t max_steps = 10'000'000;
    // Worker threads; results do not depend on this value.
    unsigned threads = 1;
    bool record_trials = false;
};

struct McResult {
    double mean = 0.0;
    double stddev = 0.0;
    // 1.96 * stddev / sqrt(trials)
    double half_width = 0.0;
    std::uint64_t trials = 0;
    // Trials that hit max_steps; they enter the mean with tau = max_steps.
    std::uint64_t truncated = 0;
    std::vector<std::uint64_t> taus;  // filled when record_trials is set
};

McResult simulate_meeting(const RegularGraph& g, const WalkSpec& w, const McConfig& cfg);

// tau -> number of trials that met at exactly that step.
std::map<std::uint64_t, std::uint64_t> meeting_time_histogram(const RegularGraph& g, const WalkSpec& w,
                                                              const McConfig& cfg);

// Positions of both walkers after each tick of one trial (index 0 is the
// start). The trial stops at the first tick that ends with co-location.
struct TrialTrace {
    std::vector<std::size_t> first;
    std::vector<std::size_t> second;
    std::uint64_t tau = 0;
    bool truncated = false;
};

// Replays trial `trial` of a run seeded with `seed` (the same substream
// simulate_meeting uses for that trial).
TrialTrace trace_trial(const RegularGraph& g, const WalkSpec& w, std::uint64_t seed, std::uint64_t trial,
                       std::uint64_t max_steps);

}  // namespace rendezvous
