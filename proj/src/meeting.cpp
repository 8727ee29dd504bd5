#include "rendezvous/meeting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace rendezvous {

std::string to_string(Method m) {
    switch (m) {
        case Method::Spectral: return "spectral";
        case Method::Absorbing: return "absorbing";
        case Method::Relative: return "relative";
        case Method::MonteCarlo: return "montecarlo";
    }
    return "unknown";
}

Method parse_method(const std::string& name) {
    if (name == "spectral") return Method::Spectral;
    if (name == "absorbing") return Method::Absorbing;
    if (name == "relative") return Method::Relative;
    if (name == "mc" || name == "montecarlo") return Method::MonteCarlo;
    throw std::invalid_argument("unknown method '" + name + "'");
}

MeetingEstimate spectral_meeting_time(std::span<const double> eigenvalues, double zero_threshold) {
    double sum = 0.0;
    std::size_t dropped = 0;
    double smallest_kept = std::numeric_limits<double>::infinity();
    for (double lambda : eigenvalues) {
        if (std::abs(lambda) < zero_threshold) {
            ++dropped;
            continue;
        }
        sum += 1.0 / lambda;
        smallest_kept = std::min(smallest_kept, std::abs(lambda));
    }
    if (dropped != 1) {
        throw std::runtime_error("spectral meeting time: " + std::to_string(dropped) +
                                 " eigenvalues classified as zero, expected exactly 1 (graph disconnected?)");
    }
    MeetingEstimate est{sum, Method::Spectral, {}};
    est.diagnostics["dropped_zero_eigenvalues"] = static_cast<double>(dropped);
    est.diagnostics["smallest_nonzero_eigenvalue"] = smallest_kept;
    return est;
}

MeetingEstimate spectral_meeting_time(const Laplacian& l) {
    MeetingEstimate est = spectral_meeting_time(l.spectrum.eigenvalues, l.zero_threshold);
    est.diagnostics["eigen_residual"] = l.spectrum.residual;
    return est;
}

TwoWalkerChain two_walker_chain(const DenseMatrix& p) {
    require_row_stochastic(p);
    const std::size_t n = p.rows();
    TwoWalkerChain chain;
    chain.n = n;
    chain.q = kronecker(p, p);
    const std::size_t states = n * n;
    std::vector<char> is_absorbing(states, 0);
    for (std::size_t i = 0; i < n; ++i) {
        chain.absorbing.push_back(i * n + i);
        is_absorbing[i * n + i] = 1;
    }
    for (std::size_t s = 0; s < states; ++s)
        if (!is_absorbing[s]) chain.transient.push_back(s);

    const std::size_t m = chain.transient.size();
    chain.b = DenseMatrix(m, m);
    chain.exit.assign(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t from = chain.transient[r];
        for (std::size_t c = 0; c < m; ++c) chain.b(r, c) = chain.q(from, chain.transient[c]);
        for (std::size_t a : chain.absorbing) chain.exit[r] += chain.q(from, a);
    }
    chain.p0.assign(states, 1.0 / static_cast<double>(states));
    return chain;
}

double spectral_radius_estimate(const DenseMatrix& b, int iterations) {
    const std::size_t m = b.rows();
    if (m == 0) return 0.0;
    std::vector<double> x(m, 1.0);
    double upper = 0.0;
    for (int it = 0; it < iterations; ++it) {
        std::vector<double> y = multiply(b, x);
        // Collatz-Wielandt: max_i (Bx)_i / x_i bounds the Perron root from above.
        upper = 0.0;
        for (std::size_t i = 0; i < m; ++i) upper = std::max(upper, y[i] / x[i]);
        const double scale = norm_inf(y);
        if (scale == 0.0) return 0.0;
        for (std::size_t i = 0; i < m; ++i) x[i] = std::max(y[i] / scale, 1e-300);
    }
    return upper;
}

MeetingEstimate absorbing_meeting_time(const TwoWalkerChain& chain) {
    const std::size_t m = chain.transient.size();
    if (m == 0) return {0.0, Method::Absorbing, {}};
    DenseMatrix i_minus_b = DenseMatrix::identity(m) - chain.b;

    std::vector<double> ones(m, 1.0);
    const double identity_residual = max_abs_diff(multiply(i_minus_b, ones), chain.exit);

    std::optional<LuDecomposition> lu;
    try {
        lu.emplace(std::move(i_minus_b));
    } catch (const SingularMatrixError& e) {
        const std::size_t state = chain.transient[e.column()];
        throw std::runtime_error("absorbing chain: I - B is singular; walkers starting at (" +
                                 std::to_string(state / chain.n) + "," + std::to_string(state % chain.n) +
                                 ") cannot be shown to meet");
    }

    const std::vector<double> once = lu->solve(chain.exit);
    const std::vector<double> twice = lu->solve(once);
    const std::vector<double> hitting = lu->solve(ones);

    double squared_form = 0.0, hitting_form = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        const double weight = chain.p0[chain.transient[r]];
        squared_form += weight * twice[r];
        hitting_form += weight * hitting[r];
    }

    MeetingEstimate est{squared_form, Method::Absorbing, {}};
    est.diagnostics["transient_states"] = static_cast<double>(m);
    est.diagnostics["identity_residual"] = identity_residual;
    est.diagnostics["hitting_form"] = hitting_form;
    est.diagnostics["form_discrepancy"] = std::abs(squared_form - hitting_form);
    return est;
}

MeetingEstimate absorbing_meeting_time(const RegularGraph& g, const WalkSpec& w) {
    if (!g.connected()) throw std::invalid_argument("absorbing meeting time needs a connected graph");
    MeetingEstimate est = absorbing_meeting_time(two_walker_chain(transition_matrix(g, w)));
    est.diagnostics["stay_probability"] = stay_probability(w, g.degree());
    return est;
}

MeetingVector meeting_vector(const RelativeChain& rc) {
    if (!rc.meeting_state) {
        throw std::invalid_argument("relative meeting time needs a circle or torus chain (no meeting state)");
    }
    const std::size_t n = rc.m.rows();
    const std::size_t s = *rc.meeting_state;

    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < n; ++i)
        if (i != s) others.push_back(i);
    const std::size_t m = others.size();
    DenseMatrix system(m, m);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
            system(r, c) = (r == c ? 1.0 : 0.0) - rc.m(others[r], others[c]);

    std::vector<double> t_others;
    try {
        t_others = solve(system, std::vector<double>(m, 1.0));
    } catch (const SingularMatrixError&) {
        throw std::runtime_error("relative chain: hitting-time system is singular");
    }

    MeetingVector mv;
    mv.meeting_state = s;
    mv.t.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r) mv.t[others[r]] = t_others[r];
    mv.delta_t.assign(n, 1.0);
    mv.delta_t[s] = -static_cast<double>(n - 1);
    return mv;
}

MeetingEstimate relative_meeting_time(const RelativeChain& rc) {
    const MeetingVector mv = meeting_vector(rc);
    double mean = 0.0;
    for (double v : mv.t) mean += v;
    mean /= static_cast<double>(mv.t.size());
    MeetingEstimate est{mean, Method::Relative, {}};
    est.diagnostics["laplacian_residual"] =
        verify_laplacian_system(DenseMatrix::identity(rc.m.rows()) - rc.m, mv);
    return est;
}

double verify_laplacian_system(const DenseMatrix& l, const MeetingVector& mv) {
    return max_abs_diff(multiply(l, mv.t), mv.delta_t);
}

}  // namespace rendezvous
