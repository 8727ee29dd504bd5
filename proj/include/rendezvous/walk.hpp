#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rendezvous/circulant.hpp"
#include "rendezvous/graph.hpp"
#include "rendezvous/linalg.hpp"

namespace rendezvous {

// Walker on a circle: move to i-1 with p_left, to i+1 with p_right, stay with p_stay.
struct CircleWalk {
    double p_left = 1.0 / 3.0;
    double p_right = 1.0 / 3.0;
    double p_stay = 1.0 / 3.0;
};

// Walker on an N x N torus restricted to the four axis moves and staying put.
struct TorusWalk {
    // Order: x-1, x+1, y-1, y+1, stay.
    std::array<double, 5> probs{0.2, 0.2, 0.2, 0.2, 0.2};

    double stay() const { return probs[4]; }
};

// Uniform over the current vertex and its d neighbors: P = (I + A) / (d + 1).
struct SimpleWalk {};

using WalkSpec = std::variant<CircleWalk, TorusWalk, SimpleWalk>;

inline constexpr double kProbabilityTolerance = 1e-12;

// Throws std::invalid_argument unless the probabilities are a distribution.
void validate(const WalkSpec& w);
// Probability of staying put; for SimpleWalk this depends on the degree.
double stay_probability(const WalkSpec& w, std::size_t degree);
std::string describe(const WalkSpec& w);

// Single-step lattice displacements for circle/torus walks, with the
// probability of each. For circles dy is always 0.
struct Move {
    int dx = 0;
    int dy = 0;
    double prob = 0.0;
};
std::vector<Move> moves(const WalkSpec& w, const RegularGraph& g);

// Row-stochastic single-walker transition matrix. CircleWalk only applies
// to circles, TorusWalk only to tori; SimpleWalk applies to any graph.
DenseMatrix transition_matrix(const RegularGraph& g, const WalkSpec& w);

// Coefficients of the relative-position chain on a circle.
struct CircleCoefficients {
    double q0 = 0.0;  // p_left^2 + p_right^2 + p_stay^2
    double q1 = 0.0;  // p_stay (p_left + p_right)
    double q2 = 0.0;  // p_left p_right
};
CircleCoefficients circle_coefficients(const CircleWalk& w);

// Relative position of the two walkers, M = P P^T. For circles and tori the
// chain lives on displacements and meeting is the hitting of meeting_state.
struct RelativeChain {
    DenseMatrix m;
    std::optional<CircleCoefficients> coefficients;
    std::optional<std::size_t> meeting_state;
};

inline constexpr double kStochasticTolerance = 1e-12;

// Throws unless every row of p is nonnegative and sums to 1.
void require_row_stochastic(const DenseMatrix& p);
DenseMatrix relative_matrix(const DenseMatrix& p);
RelativeChain relative_chain(const RegularGraph& g, const WalkSpec& w);

// L = I - P P^T together with its spectrum.
struct Laplacian {
    DenseMatrix l;
    Spectrum spectrum;
    std::size_t zero_multiplicity = 0;
    double zero_threshold = 0.0;
};
Laplacian laplacian(const DenseMatrix& p);

// Generators of L = I - P P^T built from the move set alone, without
// forming P. Used by the closed-form spectral path.
CirculantSpec circle_laplacian_spec(std::size_t n, const CircleWalk& w);
BlockCirculantSpec torus_laplacian_spec(std::size_t n, const TorusWalk& w);

}  // namespace rendezvous
