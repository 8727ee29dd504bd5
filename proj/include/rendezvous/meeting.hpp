#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rendezvous/graph.hpp"
#include "rendezvous/linalg.hpp"
#include "rendezvous/walk.hpp"

namespace rendezvous {

enum class Method { Spectral, Absorbing, Relative, MonteCarlo };

std::string to_string(Method m);
Method parse_method(const std::string& name);

// Expected meeting time E[tau] in steps, measured from independent uniform
// starts. tau = 0 when the two walkers start on the same vertex.
struct MeetingEstimate {
    double value = 0.0;
    Method method = Method::Spectral;
    std::map<std::string, double> diagnostics;
};

// Sum of 1/lambda over the nonzero eigenvalues of L. Exactly one eigenvalue
// must fall under the zero threshold.
MeetingEstimate spectral_meeting_time(const Laplacian& l);
MeetingEstimate spectral_meeting_time(std::span<const double> eigenvalues, double zero_threshold);

// Two-walker product chain Q = P (x) P over ordered pairs (a, b) -> a*n + b.
// The diagonal pairs are absorbing; B is Q restricted to the off-diagonal
// (transient) pairs and exit[j] is the one-step probability of leaving
// transient pair j into the diagonal.
struct TwoWalkerChain {
    std::size_t n = 0;
    DenseMatrix q;
    std::vector<std::size_t> absorbing;  // {i*n + i}
    std::vector<std::size_t> transient;  // remaining pair indices, ascending
    DenseMatrix b;
    std::vector<double> exit;
    std::vector<double> p0;  // uniform 1/n^2 over all pairs
};

TwoWalkerChain two_walker_chain(const DenseMatrix& p);

// Power-iteration estimate of the spectral radius of B (nonnegative matrix).
double spectral_radius_estimate(const DenseMatrix& b, int iterations = 2000);

// p0^T (I-B)^{-2} exit, by two solves against one LU factorization. The
// diagnostics also carry the alternative form p0^T (I-B)^{-1} 1 and the
// identity residual ||(I-B) 1 - exit||_inf.
MeetingEstimate absorbing_meeting_time(const TwoWalkerChain& chain);
MeetingEstimate absorbing_meeting_time(const RegularGraph& g, const WalkSpec& w);

// Hitting times of the relative chain toward the meeting state. delta_t is
// 1 everywhere except -(count - 1) at the meeting state.
struct MeetingVector {
    std::vector<double> t;
    std::vector<double> delta_t;
    std::size_t meeting_state = 0;
};

MeetingVector meeting_vector(const RelativeChain& rc);
MeetingEstimate relative_meeting_time(const RelativeChain& rc);

// ||L T - delta_t||_inf
double verify_laplacian_system(const DenseMatrix& l, const MeetingVector& mv);

}  // namespace rendezvous
