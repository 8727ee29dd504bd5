#include "rendezvous/analysis.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "rendezvous/montecarlo.hpp"

namespace rendezvous {

namespace {

constexpr double kPi = std::numbers::pi;

double generator_norm(std::span<const double> g) {
    double s = 0.0;
    for (double v : g) s += std::abs(v);
    return s;
}

}  // namespace

MeetingEstimate closed_form_meeting_time(GraphFamily family, std::size_t n, const WalkSpec& w) {
    if (family == GraphFamily::Circle) {
        CircleWalk cw;
        if (std::holds_alternative<CircleWalk>(w)) cw = std::get<CircleWalk>(w);
        else if (!std::holds_alternative<SimpleWalk>(w)) throw std::invalid_argument("circle needs a circle walk");
        const CirculantSpec spec = circle_laplacian_spec(n, cw);
        MeetingEstimate est = spectral_meeting_time(circulant_eigenvalues(spec), 1e-9 * (1.0 + generator_norm(spec.generator)));
        est.diagnostics["closed_form"] = 1.0;
        return est;
    }
    if (family == GraphFamily::Torus) {
        TorusWalk tw;
        if (std::holds_alternative<TorusWalk>(w)) tw = std::get<TorusWalk>(w);
        else if (!std::holds_alternative<SimpleWalk>(w)) throw std::invalid_argument("torus needs a torus walk");
        const BlockCirculantSpec spec = torus_laplacian_spec(n, tw);
        MeetingEstimate est = spectral_meeting_time(block_circulant_eigenvalues(spec), 1e-9 * (1.0 + generator_norm(spec.blocks)));
        est.diagnostics["closed_form"] = 1.0;
        return est;
    }
    throw std::invalid_argument("closed-form meeting time is only available for circles and tori");
}

std::vector<ScalingRow> scaling_study(GraphFamily family, const std::vector<std::size_t>& sizes, const WalkSpec& w) {
    std::vector<ScalingRow> rows;
    for (std::size_t n : sizes) {
        if (family == GraphFamily::Torus && n > kMaxScalingTorusSide) {
            throw std::invalid_argument("torus scaling is capped at N=" + std::to_string(kMaxScalingTorusSide));
        }
        const auto start = std::chrono::steady_clock::now();
        ScalingRow row;
        row.n = n;
        row.e_tau = closed_form_meeting_time(family, n, w).value;
        row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const double nn = static_cast<double>(n);
        row.normalizer = family == GraphFamily::Torus ? nn * nn * std::log(nn) : nn * nn;
        row.ratio = row.e_tau / row.normalizer;
        rows.push_back(row);
    }
    return rows;
}

double ratio_spread(const std::vector<ScalingRow>& rows) {
    if (rows.empty()) return 0.0;
    auto [lo, hi] = std::minmax_element(rows.begin(), rows.end(),
                                        [](const ScalingRow& a, const ScalingRow& b) { return a.ratio < b.ratio; });
    return hi->ratio / lo->ratio;
}

bool lemma1_check(double theta1, double theta2) {
    const double upper = kPi / 4.0 + 1e-15;
    if (!(theta1 > 0.0 && theta1 <= upper && theta2 > 0.0 && theta2 <= upper)) {
        throw std::invalid_argument("lemma1_check: angles must lie in (0, pi/4]");
    }
    const double lhs = 1.0 / (1.0 - std::cos(theta1) * std::cos(theta2));
    const double rhs = 4.0 / (1.0 - std::cos(2.0 * theta1) * std::cos(2.0 * theta2));
    return lhs <= rhs;
}

GridCheck lemma1_grid(std::size_t resolution) {
    GridCheck out;
    out.min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= resolution; ++i)
        for (std::size_t j = 1; j <= resolution; ++j) {
            const double t1 = static_cast<double>(i) * kPi / (4.0 * static_cast<double>(resolution));
            const double t2 = static_cast<double>(j) * kPi / (4.0 * static_cast<double>(resolution));
            ++out.points;
            if (!lemma1_check(t1, t2)) ++out.violations;
            const double lhs = 1.0 / (1.0 - std::cos(t1) * std::cos(t2));
            const double rhs = 4.0 / (1.0 - std::cos(2.0 * t1) * std::cos(2.0 * t2));
            out.min_slack = std::min(out.min_slack, rhs - lhs);
        }
    return out;
}

PartitionSums torus_partition_sums(std::size_t n) {
    if (n < 2 || !std::has_single_bit(n)) {
        throw std::invalid_argument("partition sums need N to be a power of two >= 2, got " + std::to_string(n));
    }
    const std::size_t levels = static_cast<std::size_t>(std::countr_zero(n));
    const double nn = static_cast<double>(n);
    auto term = [nn](std::size_t p, std::size_t q) {
        return 1.0 / (1.0 - std::cos(static_cast<double>(p) * kPi / (2.0 * nn)) *
                                std::cos(static_cast<double>(q) * kPi / (2.0 * nn)));
    };

    PartitionSums out;
    out.n = n;
    for (std::size_t k = 0; k <= levels; ++k) {
        const std::size_t outer = std::size_t{1} << k;
        const std::size_t inner = k == 0 ? 0 : outer / 2;
        double sum = 0.0, lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        std::size_t count = 0;
        for (std::size_t p = 1; p <= outer; ++p)
            for (std::size_t q = 1; q <= outer; ++q) {
                if (p <= inner && q <= inner) continue;
                const double t = term(p, q);
                sum += t;
                lo = std::min(lo, t);
                hi = std::max(hi, t);
                ++count;
            }
        out.sums.push_back(sum);
        out.shell_sizes.push_back(count);
        out.min_term.push_back(lo);
        out.max_term.push_back(hi);
    }
    out.nondecreasing = std::is_sorted(out.sums.begin(), out.sums.end());
    out.first_over_n2 = out.sums.size() > 1 ? out.sums[1] / (nn * nn) : 0.0;
    out.last_over_n2 = out.sums.back() / (nn * nn);
    return out;
}

double boundary_sum(std::size_t n) {
    double s = 0.0;
    const double nn = static_cast<double>(n);
    for (std::size_t q = 1; q < n; ++q) s += 1.0 / (1.0 - std::cos(static_cast<double>(q) * kPi / (2.0 * nn)));
    return s;
}

TorusFormReport torus_form_check(std::size_t n) {
    const auto lambda = block_circulant_eigenvalues(torus_laplacian_spec(n, TorusWalk{}));
    TorusFormReport out;
    out.n = n;
    const double nn = static_cast<double>(n);
    std::vector<double> constants;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double ci = std::cos(2.0 * kPi * static_cast<double>(i) / nn);
            const double cj = std::cos(2.0 * kPi * static_cast<double>(j) / nn);
            const double c2i = std::cos(4.0 * kPi * static_cast<double>(i) / nn);
            const double c2j = std::cos(4.0 * kPi * static_cast<double>(j) / nn);
            const double expanded = (20.0 - 2.0 * (c2i + c2j) - 4.0 * (ci + cj) - 8.0 * ci * cj) / 25.0;
            const double value = lambda[i * n + j];
            out.expanded_max_error = std::max(out.expanded_max_error, std::abs(value - expanded));
            if (i == 0 && j == 0) continue;
            const double t = std::cos(kPi * static_cast<double>(i + j) / nn);
            const double s = std::cos(kPi * (static_cast<double>(i) - static_cast<double>(j)) / nn);
            const double factored = (2.0 * t * s + 3.0) * (1.0 - t * s);
            if (std::abs(factored) < 1e-12) continue;
            constants.push_back(value / factored);
        }
    if (!constants.empty()) {
        auto [lo, hi] = std::minmax_element(constants.begin(), constants.end());
        double mean = 0.0;
        for (double c : constants) mean += c;
        out.factored_constant = mean / static_cast<double>(constants.size());
        out.factored_constant_spread = *hi - *lo;
    }
    return out;
}

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> key) {
    std::vector<std::uint32_t> words{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32)};
    for (std::uint64_t k : key) {
        words.push_back(static_cast<std::uint32_t>(k));
        words.push_back(static_cast<std::uint32_t>(k >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::vector<Conjecture1Row> conjecture1_experiment(const std::vector<std::size_t>& n_list,
                                                   const std::vector<std::size_t>& d_list,
                                                   std::size_t graphs_per_cell, std::uint64_t trials,
                                                   std::uint64_t seed, unsigned threads) {
    std::vector<Conjecture1Row> rows;
    for (std::size_t n : n_list)
        for (std::size_t d : d_list)
            for (std::size_t gi = 0; gi < graphs_per_cell; ++gi) {
                Conjecture1Row row;
                row.n = n;
                row.d = d;
                row.graph_index = gi;
                row.graph_seed = derive_seed(seed, {1, n, d, gi});
                row.mc_seed = derive_seed(seed, {2, n, d, gi});
                try {
                    const RegularGraph g = random_regular(n, d, row.graph_seed);
                    const DenseMatrix p = transition_matrix(g, SimpleWalk{});
                    row.spectral = spectral_meeting_time(laplacian(p)).value;
                    row.exact = absorbing_meeting_time(two_walker_chain(p)).value;
                    row.relative_discrepancy = std::abs(row.spectral - row.exact) / row.exact;
                    if (trials > 0) {
                        McConfig cfg;
                        cfg.trials = trials;
                        cfg.seed = row.mc_seed;
                        cfg.threads = threads;
                        const McResult mc = simulate_meeting(g, SimpleWalk{}, cfg);
                        row.mc_mean = mc.mean;
                        row.mc_half_width = mc.half_width;
                        row.mc_stderr = mc.stddev / std::sqrt(static_cast<double>(mc.trials));
                        row.mc_truncated = mc.truncated;
                    }
                } catch (const std::exception& e) {
                    row.error = e.what();
                }
                rows.push_back(row);
            }
    return rows;
}

std::string to_string(ConjectureStatus s) {
    switch (s) {
        case ConjectureStatus::Satisfied: return "satisfied";
        case ConjectureStatus::Violated: return "violated";
        case ConjectureStatus::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

Conjecture2Report conjecture2_check(const RegularGraph& g) {
    const std::size_t n = g.order();
    const double dn = static_cast<double>(n);
    const double root_n = std::sqrt(dn);
    const double tol = 1e-8 * dn;

    DenseMatrix adj(n, n);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u : g.neighbors(v)) adj(v, u) = 1.0;
    const Spectrum spec = sym_eigen(adj);

    Conjecture2Report rep;
    rep.basis = DenseMatrix(n, n);
    bool basis_b = true;
    bool definite_violation = false;
    bool blocked = false;
    std::size_t column = 0;

    auto place = [&](const std::vector<double>& v, double mu) {
        for (std::size_t r = 0; r < n; ++r) rep.basis(r, column) = v[r];
        rep.adjacency_eigenvalues.push_back(mu);
        ++column;
    };
    auto note = [&](const std::string& w) {
        if (rep.witness.empty()) rep.witness = w;
    };

    // Cluster eigenvalues; the top cluster (mu = d) is handled last.
    const double cluster_tol = 1e-8 * (1.0 + static_cast<double>(g.degree()));
    std::vector<std::pair<std::size_t, std::size_t>> clusters;  // [begin, end)
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && spec.eigenvalues[j] - spec.eigenvalues[j - 1] < cluster_tol) ++j;
        clusters.emplace_back(i, j);
        i = j;
    }
    const auto top = clusters.back();
    const bool top_simple = top.second - top.first == 1 &&
                            std::abs(spec.eigenvalues[top.first] - static_cast<double>(g.degree())) < cluster_tol;
    clusters.pop_back();

    for (auto [begin, end] : clusters) {
        const std::size_t dim = end - begin;
        const double mu = spec.eigenvalues[begin];
        rep.eigenspace_dims.push_back(dim);
        std::vector<std::vector<double>> u;
        for (std::size_t i = begin; i < end; ++i) u.push_back(spec.eigenvector(i));

        double proj = 0.0;  // squared norm of the projection of e_n onto the eigenspace
        for (const auto& vec : u) proj += vec[n - 1] * vec[n - 1];
        // With (b) and (e), each basis vector contributes 1/n to this norm.
        const bool feasible = std::abs(dn * proj - static_cast<double>(dim)) <= 1e-8 * dn;

        if (dim == 1) {
            std::vector<double> v = u[0];
            const double sign = v[n - 1] < 0.0 ? -1.0 : 1.0;
            for (double& x : v) x *= sign * root_n;
            if (!feasible) {
                basis_b = false;
                definite_violation = true;
                note("(b) fails for simple eigenvalue " + std::to_string(mu) + ": |xi(n)| = " +
                     std::to_string(std::abs(v[n - 1])));
            }
            place(v, mu);
        } else if (dim == 2) {
            if (feasible) {
                // x(phi) = sqrt(n) (cos phi u + sin phi w) has last entry
                // sqrt(n) r cos(phi - alpha) with r^2 = 2/n, so phi = alpha +- pi/4.
                const double alpha = std::atan2(u[1][n - 1], u[0][n - 1]);
                for (double phi : {alpha + kPi / 4.0, alpha - kPi / 4.0}) {
                    std::vector<double> v(n);
                    for (std::size_t r = 0; r < n; ++r) v[r] = root_n * (std::cos(phi) * u[0][r] + std::sin(phi) * u[1][r]);
                    place(v, mu);
                }
            } else {
                basis_b = false;
                definite_violation = true;
                note("(b) infeasible in 2-dimensional eigenspace of " + std::to_string(mu) +
                     ": n*|proj e_n|^2 = " + std::to_string(dn * proj));
                for (const auto& vec : u) {
                    std::vector<double> v = vec;
                    for (double& x : v) x *= root_n;
                    place(v, mu);
                }
            }
        } else {
            if (!feasible) {
                definite_violation = true;
                note("(b) infeasible in " + std::to_string(dim) + "-dimensional eigenspace of " + std::to_string(mu));
            } else {
                blocked = true;
                note("eigenspace of " + std::to_string(mu) + " has dimension " + std::to_string(dim) +
                     "; constructive search not attempted");
            }
            basis_b = false;
            for (const auto& vec : u) {
                std::vector<double> v = vec;
                for (double& x : v) x *= root_n;
                place(v, mu);
            }
        }
    }

    // xi_n = ones for mu = d
    rep.eigenspace_dims.push_back(top.second - top.first);
    place(std::vector<double>(n, 1.0), spec.eigenvalues[top.first]);
    for (std::size_t extra = top.first + 1; extra < top.second; ++extra) {
        // only reached for disconnected graphs
        auto v = spec.eigenvector(extra);
        for (double& x : v) x *= root_n;
        place(v, spec.eigenvalues[extra]);
    }
    rep.a = top_simple;
    if (!rep.a) {
        definite_violation = true;
        note("(a) eigenvalue d is not simple (graph disconnected?)");
    }

    std::vector<std::vector<double>> xi(n, std::vector<double>(n));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) xi[c][r] = rep.basis(r, c);

    rep.b = basis_b && !blocked;
    if (rep.b) {
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(xi[i][n - 1] - 1.0) > tol) {
                rep.b = false;
                definite_violation = true;
                note("(b) fails at basis vector " + std::to_string(i));
            }
    }

    rep.c = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double s = 0.0;
        for (double x : xi[i]) s += x;
        if (std::abs(s) > tol) {
            rep.c = false;
            definite_violation = true;
            note("(c) fails at basis vector " + std::to_string(i));
        }
    }

    rep.column_sums.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rep.column_sums[j] += xi[i][j];
    rep.d = true;
    for (std::size_t j = 0; j + 1 < n; ++j)
        if (std::abs(rep.column_sums[j]) > tol) rep.d = false;
    if (!rep.d && !blocked) {
        definite_violation = true;
        note("(d) fails: nonzero column sum");
    }

    rep.e = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double expect = i == j ? dn : 0.0;
            if (std::abs(dot(xi[i], xi[j]) - expect) > tol) rep.e = false;
        }
    if (!rep.e) {
        definite_violation = true;
        note("(e) fails: basis not orthogonal with squared norm n");
    }

    if (definite_violation) rep.status = ConjectureStatus::Violated;
    else if (blocked) rep.status = ConjectureStatus::Indeterminate;
    else rep.status = ConjectureStatus::Satisfied;

    if (rep.status == ConjectureStatus::Satisfied) {
        // Delta t = J - n I on pair space: <dt, xi_i (x) xi_j> = (sum xi_i)(sum xi_j) - n <xi_i, xi_j>.
        std::vector<double> sums(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (double x : xi[i]) sums[i] += x;
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = 0; j + 1 < n; ++j) {
                const double inner = sums[i] * sums[j] - dn * dot(xi[i], xi[j]);
                const double expect = i == j ? -dn * dn : 0.0;
                rep.delta_t_inner_product_error = std::max(rep.delta_t_inner_product_error, std::abs(inner - expect));
            }
        const double dd = static_cast<double>(g.degree());
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double beta = (rep.adjacency_eigenvalues[i] + 1.0) / (dd + 1.0);
            rep.basis_meeting_time += 1.0 / (1.0 - beta * beta);
        }
        rep.spectral_meeting_time = spectral_meeting_time(laplacian(transition_matrix(g, SimpleWalk{}))).value;
    }
    return rep;
}

}  // namespace rendezvous
