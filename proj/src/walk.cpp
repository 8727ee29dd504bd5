#include "rendezvous/walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rendezvous {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_distribution(std::initializer_list<double> probs, const char* what) {
    double total = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0.0) {
            throw std::invalid_argument(std::string(what) + ": probabilities must be finite and nonnegative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
        throw std::invalid_argument(std::string(what) + ": probabilities sum to " + std::to_string(total) +
                                    ", expected 1");
    }
}

std::size_t wrap(long long v, std::size_t n) {
    const long long m = static_cast<long long>(n);
    return static_cast<std::size_t>(((v % m) + m) % m);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

void validate(const WalkSpec& w) {
    std::visit(overloaded{
                   [](const CircleWalk& c) { check_distribution({c.p_left, c.p_right, c.p_stay}, "circle walk"); },
                   [](const TorusWalk& t) {
                       const auto& p = t.probs;
                       check_distribution({p[0], p[1], p[2], p[3], p[4]}, "torus walk");
                   },
                   [](const SimpleWalk&) {},
               },
               w);
}

double stay_probability(const WalkSpec& w, std::size_t degree) {
    return std::visit(overloaded{
                          [](const CircleWalk& c) { return c.p_stay; },
                          [](const TorusWalk& t) { return t.stay(); },
                          [degree](const SimpleWalk&) { return 1.0 / static_cast<double>(degree + 1); },
                      },
                      w);
}

std::string describe(const WalkSpec& w) {
    return std::visit(overloaded{
                          [](const CircleWalk& c) {
                              return "circle-walk(" + fmt(c.p_left) + "," + fmt(c.p_right) + "," + fmt(c.p_stay) + ")";
                          },
                          [](const TorusWalk& t) {
                              std::string s = "torus-walk(";
                              for (std::size_t i = 0; i < 5; ++i) s += (i ? "," : "") + fmt(t.probs[i]);
                              return s + ")";
                          },
                          [](const SimpleWalk&) { return std::string("simple"); },
                      },
                      w);
}

std::vector<Move> moves(const WalkSpec& w, const RegularGraph& g) {
    validate(w);
    const GraphFamily family = g.family();
    return std::visit(
        overloaded{
            [&](const CircleWalk& c) -> std::vector<Move> {
                if (family != GraphFamily::Circle) throw std::invalid_argument("circle walk needs a circle graph");
                return {{-1, 0, c.p_left}, {1, 0, c.p_right}, {0, 0, c.p_stay}};
            },
            [&](const TorusWalk& t) -> std::vector<Move> {
                if (family != GraphFamily::Torus) throw std::invalid_argument("torus walk needs a torus graph");
                const auto& p = t.probs;
                return {{-1, 0, p[0]}, {1, 0, p[1]}, {0, -1, p[2]}, {0, 1, p[3]}, {0, 0, p[4]}};
            },
            [&](const SimpleWalk&) -> std::vector<Move> {
                if (family == GraphFamily::Circle) {
                    const double third = 1.0 / 3.0;
                    return {{-1, 0, third}, {1, 0, third}, {0, 0, third}};
                }
                if (family == GraphFamily::Torus) {
                    return {{-1, 0, 0.2}, {1, 0, 0.2}, {0, -1, 0.2}, {0, 1, 0.2}, {0, 0, 0.2}};
                }
                throw std::invalid_argument("lattice moves are only defined on circles and tori");
            },
        },
        w);
}

DenseMatrix transition_matrix(const RegularGraph& g, const WalkSpec& w) {
    validate(w);
    const std::size_t n = g.order();
    DenseMatrix p(n, n);
    if (std::holds_alternative<SimpleWalk>(w)) {
        const double share = 1.0 / static_cast<double>(g.degree() + 1);
        for (std::size_t v = 0; v < n; ++v) {
            p(v, v) = share;
            for (std::size_t u : g.neighbors(v)) p(v, u) = share;
        }
        return p;
    }
    const auto step = moves(w, g);
    const std::size_t side = g.side();
    for (std::size_t v = 0; v < n; ++v) {
        if (g.family() == GraphFamily::Circle) {
            for (const Move& m : step) p(v, wrap(static_cast<long long>(v) + m.dx, side)) += m.prob;
        } else {
            const TorusCoord at = TorusCoord::from_index(v, side);
            for (const Move& m : step) {
                TorusCoord to{wrap(static_cast<long long>(at.x) + m.dx, side),
                              wrap(static_cast<long long>(at.y) + m.dy, side)};
                p(v, to.index(side)) += m.prob;
            }
        }
    }
    return p;
}

CircleCoefficients circle_coefficients(const CircleWalk& w) {
    return {w.p_left * w.p_left + w.p_right * w.p_right + w.p_stay * w.p_stay,
            w.p_stay * (w.p_left + w.p_right), w.p_left * w.p_right};
}

void require_row_stochastic(const DenseMatrix& p) {
    if (!p.square()) throw std::invalid_argument("transition matrix must be square");
    for (std::size_t i = 0; i < p.rows(); ++i) {
        double total = 0.0;
        for (double v : p.row(i)) {
            if (v < 0.0) throw std::invalid_argument("transition matrix has a negative entry in row " + std::to_string(i));
            total += v;
        }
        if (std::abs(total - 1.0) > kStochasticTolerance) {
            throw std::invalid_argument("row " + std::to_string(i) + " of the transition matrix sums to " +
                                        std::to_string(total));
        }
    }
}

DenseMatrix relative_matrix(const DenseMatrix& p) {
    require_row_stochastic(p);
    return p * p.transpose();
}

RelativeChain relative_chain(const RegularGraph& g, const WalkSpec& w) {
    RelativeChain rc{relative_matrix(transition_matrix(g, w)), std::nullopt, std::nullopt};
    if (g.family() == GraphFamily::Circle) {
        const CircleWalk cw = std::holds_alternative<CircleWalk>(w) ? std::get<CircleWalk>(w) : CircleWalk{};
        const CircleCoefficients q = circle_coefficients(cw);
        // Offsets +-1, +-2 may wrap onto each other for N <= 4, so accumulate.
        const std::size_t n = g.order();
        std::vector<double> expected(n, 0.0);
        expected[0] += q.q0;
        expected[1 % n] += q.q1;
        expected[n - 1] += q.q1;
        expected[2 % n] += q.q2;
        expected[n - 2] += q.q2;
        if (max_abs_diff(expected, rc.m.row(0)) > 1e-12) {
            throw std::logic_error("relative chain: first row of M disagrees with q0, q1, q2");
        }
        rc.coefficients = q;
        rc.meeting_state = 0;
    } else if (g.family() == GraphFamily::Torus) {
        // lower-right cell (N-1, N-1)
        rc.meeting_state = g.order() - 1;
    }
    return rc;
}

Laplacian laplacian(const DenseMatrix& p) {
    const std::size_t n = p.rows();
    Laplacian out;
    out.l = DenseMatrix::identity(n) - relative_matrix(p);
    out.spectrum = sym_eigen(out.l);
    out.zero_threshold = zero_threshold(out.l);
    out.zero_multiplicity = static_cast<std::size_t>(std::count_if(
        out.spectrum.eigenvalues.begin(), out.spectrum.eigenvalues.end(),
        [&](double v) { return std::abs(v) < out.zero_threshold; }));
    return out;
}

namespace {

// First row of I - P P^T for a translation-invariant walk: entry at offset
// delta collects p(d1) p(d2) over all move pairs with d1 - d2 == delta.
template <class Index>
void accumulate_relative_generator(const std::vector<Move>& step, std::vector<double>& row, Index index) {
    for (const Move& a : step)
        for (const Move& b : step) row[index(a.dx - b.dx, a.dy - b.dy)] -= a.prob * b.prob;
    row[0] += 1.0;
}

}  // namespace

CirculantSpec circle_laplacian_spec(std::size_t n, const CircleWalk& w) {
    validate(w);
    if (n < 3) throw std::invalid_argument("circle needs N >= 3");
    const std::vector<Move> step{{-1, 0, w.p_left}, {1, 0, w.p_right}, {0, 0, w.p_stay}};
    CirculantSpec spec{std::vector<double>(n, 0.0)};
    accumulate_relative_generator(step, spec.generator, [n](int dx, int) { return wrap(dx, n); });
    return spec;
}

BlockCirculantSpec torus_laplacian_spec(std::size_t n, const TorusWalk& w) {
    validate(w);
    if (n < 3) throw std::invalid_argument("torus needs N >= 3");
    const auto& p = w.probs;
    const std::vector<Move> step{{-1, 0, p[0]}, {1, 0, p[1]}, {0, -1, p[2]}, {0, 1, p[3]}, {0, 0, p[4]}};
    BlockCirculantSpec spec{n, std::vector<double>(n * n, 0.0)};
    accumulate_relative_generator(step, spec.blocks,
                                  [n](int dx, int dy) { return wrap(dx, n) * n + wrap(dy, n); });
    return spec;
}

}  // namespace rendezvous
