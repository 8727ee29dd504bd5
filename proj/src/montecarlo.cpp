#include "rendezvous/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace rendezvous {

namespace {

// Sparse per-vertex step distribution: targets with cumulative probabilities.
class StepTable {
public:
    StepTable(const RegularGraph& g, const WalkSpec& w) : offsets_(g.order() + 1, 0) {
        validate(w);
        const std::size_t n = g.order();
        if (std::holds_alternative<SimpleWalk>(w)) {
            const double share = 1.0 / static_cast<double>(g.degree() + 1);
            for (std::size_t v = 0; v < n; ++v) {
                double acc = share;
                push(v, acc);
                for (std::size_t u : g.neighbors(v)) {
                    acc += share;
                    push(u, acc);
                }
                close(v);
            }
            return;
        }
        const auto step = moves(w, g);
        const std::size_t side = g.side();
        auto wrap = [side](long long v) {
            const long long m = static_cast<long long>(side);
            return static_cast<std::size_t>(((v % m) + m) % m);
        };
        for (std::size_t v = 0; v < n; ++v) {
            double acc = 0.0;
            for (const Move& m : step) {
                if (m.prob == 0.0) continue;
                acc += m.prob;
                std::size_t to;
                if (g.family() == GraphFamily::Circle) {
                    to = wrap(static_cast<long long>(v) + m.dx);
                } else {
                    const TorusCoord at = TorusCoord::from_index(v, side);
                    to = TorusCoord{wrap(static_cast<long long>(at.x) + m.dx),
                                    wrap(static_cast<long long>(at.y) + m.dy)}
                             .index(side);
                }
                push(to, acc);
            }
            close(v);
        }
    }

    template <class Rng>
    std::size_t step(std::size_t from, Rng& rng) const {
        const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const std::size_t lo = offsets_[from], hi = offsets_[from + 1];
        for (std::size_t i = lo; i + 1 < hi; ++i)
            if (u < cumulative_[i]) return targets_[i];
        return targets_[hi - 1];
    }

private:
    void push(std::size_t target, double cumulative) {
        targets_.push_back(target);
        cumulative_.push_back(cumulative);
    }
    void close(std::size_t v) { offsets_[v + 1] = targets_.size(); }

    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> targets_;
    std::vector<double> cumulative_;
};

// Independent substream per (seed, trial) so results do not depend on the
// order trials run in.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    return std::mt19937_64(seq);
}

struct TrialOutcome {
    std::uint64_t tau = 0;
    bool truncated = false;
};

TrialOutcome run_trial(const StepTable& table, std::size_t n, std::uint64_t seed, std::uint64_t trial,
                       std::uint64_t max_steps, TrialTrace* trace) {
    auto rng = trial_rng(seed, trial);
    std::uniform_int_distribution<std::size_t> start(0, n - 1);
    std::size_t a = start(rng);
    std::size_t b = start(rng);
    if (trace) {
        trace->first.push_back(a);
        trace->second.push_back(b);
    }
    std::uint64_t t = 0;
    while (a != b) {
        if (t == max_steps) return {t, true};
        a = table.step(a, rng);
        b = table.step(b, rng);
        ++t;
        if (trace) {
            trace->first.push_back(a);
            trace->second.push_back(b);
        }
    }
    return {t, false};
}

std::vector<TrialOutcome> run_all(const RegularGraph& g, const WalkSpec& w, const McConfig& cfg) {
    if (cfg.trials == 0) throw std::invalid_argument("Monte Carlo needs at least one trial");
    if (cfg.max_steps == 0) throw std::invalid_argument("max_steps must be at least 1");
    if (!g.connected()) throw std::invalid_argument("Monte Carlo meeting time needs a connected graph");
    const StepTable table(g, w);
    std::vector<TrialOutcome> outcomes(cfg.trials);
    const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.trials)));
    auto work = [&](unsigned id) {
        for (std::uint64_t t = id; t < cfg.trials; t += workers)
            outcomes[t] = run_trial(table, g.order(), cfg.seed, t, cfg.max_steps, nullptr);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    }
    return outcomes;
}

}  // namespace

McResult simulate_meeting(const RegularGraph& g, const WalkSpec& w, const McConfig& cfg) {
    const auto outcomes = run_all(g, w, cfg);
    McResult r;
    r.trials = cfg.trials;
    // Welford in trial order keeps the reduction independent of scheduling.
    double mean = 0.0, m2 = 0.0;
    std::uint64_t k = 0;
    for (const auto& o : outcomes) {
        ++k;
        const double x = static_cast<double>(o.tau);
        const double delta = x - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (x - mean);
        if (o.truncated) ++r.truncated;
        if (cfg.record_trials) r.taus.push_back(o.tau);
    }
    r.mean = mean;
    r.stddev = k > 1 ? std::sqrt(m2 / static_cast<double>(k - 1)) : 0.0;
    r.half_width = 1.96 * r.stddev / std::sqrt(static_cast<double>(k));
    return r;
}

std::map<std::uint64_t, std::uint64_t> meeting_time_histogram(const RegularGraph& g, const WalkSpec& w,
                                                              const McConfig& cfg) {
    std::map<std::uint64_t, std::uint64_t> hist;
    for (const auto& o : run_all(g, w, cfg)) ++hist[o.tau];
    return hist;
}

TrialTrace trace_trial(const RegularGraph& g, const WalkSpec& w, std::uint64_t seed, std::uint64_t trial,
                       std::uint64_t max_steps) {
    const StepTable table(g, w);
    TrialTrace trace;
    const auto o = run_trial(table, g.order(), seed, trial, max_steps, &trace);
    trace.tau = o.tau;
    trace.truncated = o.truncated;
    return trace;
}

}  // namespace rendezvous
