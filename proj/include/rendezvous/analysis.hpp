#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "rendezvous/graph.hpp"
#include "rendezvous/linalg.hpp"
#include "rendezvous/meeting.hpp"
#include "rendezvous/walk.hpp"

namespace rendezvous {

// ---------------------------------------------------------------------------
// Closed-form spectral meeting time on circles and tori.

// Uses the circulant / block-circulant eigenvalues of I - P P^T, so the cost
// is O(N^2) for a circle and O(N^4) worst case for a torus; no dense matrix
// is formed. SimpleWalk selects the uniform walk of the family.
MeetingEstimate closed_form_meeting_time(GraphFamily family, std::size_t n, const WalkSpec& w);

inline constexpr std::size_t kMaxScalingTorusSide = 128;

struct ScalingRow {
    std::size_t n = 0;
    double e_tau = 0.0;
    double normalizer = 0.0;  // N^2 (circle) or N^2 ln N (torus)
    double ratio = 0.0;
    double wall_time = 0.0;   // seconds
};

std::vector<ScalingRow> scaling_study(GraphFamily family, const std::vector<std::size_t>& sizes,
                                      const WalkSpec& w);
// max ratio / min ratio over the rows
double ratio_spread(const std::vector<ScalingRow>& rows);

// ---------------------------------------------------------------------------
// Torus order machinery.

// 1/(1 - cos t1 cos t2) <= 4/(1 - cos 2t1 cos 2t2) for t1, t2 in (0, pi/4].
bool lemma1_check(double theta1, double theta2);

struct GridCheck {
    std::size_t points = 0;
    std::size_t violations = 0;
    // min over the grid of RHS - LHS
    double min_slack = 0.0;
};
// Grid {k pi / (4 * resolution), k = 1..resolution}^2.
GridCheck lemma1_grid(std::size_t resolution = 100);

// Sums of (1 - cos(p pi / 2N) cos(q pi / 2N))^{-1} over the dyadic shells
// A_0 = {(1,1)}, A_k = D_k \ D_{k-1} with D_k = [1, 2^k]^2, k = 0..log2 N.
struct PartitionSums {
    std::size_t n = 0;
    std::vector<double> sums;
    std::vector<std::size_t> shell_sizes;
    std::vector<double> min_term;
    std::vector<double> max_term;
    bool nondecreasing = false;
    double first_over_n2 = 0.0;  // S_1 / N^2
    double last_over_n2 = 0.0;   // S_{log N} / N^2
};
// N must be a power of two.
PartitionSums torus_partition_sums(std::size_t n);

// sum_{q=1}^{N-1} (1 - cos(q pi / 2N))^{-1}
double boundary_sum(std::size_t n);

// For the uniform torus walk, compares the block-circulant eigenvalues of L
// against the trigonometric forms: the expanded 1/25 expression and the
// factored (2ts+3)(1-ts) expression with t = cos(pi(i+j)/N), s = cos(pi(i-j)/N).
struct TorusFormReport {
    std::size_t n = 0;
    double expanded_max_error = 0.0;
    // lambda_{ij} / ((2ts+3)(1-ts)) over (i,j) != (0,0): mean and spread.
    double factored_constant = 0.0;
    double factored_constant_spread = 0.0;
};
TorusFormReport torus_form_check(std::size_t n);

// ---------------------------------------------------------------------------
// Simple walks on arbitrary regular graphs.

struct Conjecture1Row {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t graph_index = 0;
    std::uint64_t graph_seed = 0;
    std::uint64_t mc_seed = 0;
    double spectral = 0.0;
    double exact = 0.0;
    double relative_discrepancy = 0.0;  // |spectral - exact| / exact
    double mc_mean = 0.0;
    double mc_half_width = 0.0;
    double mc_stderr = 0.0;
    std::uint64_t mc_truncated = 0;
    std::string error;  // nonempty when the cell could not be evaluated
};

// Deterministic 64-bit seed derived from a base seed and a key.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> key);

// One row per sampled graph, ordered by (n, d, graph_index). trials == 0
// skips the Monte Carlo columns.
std::vector<Conjecture1Row> conjecture1_experiment(const std::vector<std::size_t>& n_list,
                                                   const std::vector<std::size_t>& d_list,
                                                   std::size_t graphs_per_cell, std::uint64_t trials,
                                                   std::uint64_t seed, unsigned threads = 1);

enum class ConjectureStatus { Satisfied, Violated, Indeterminate };
std::string to_string(ConjectureStatus s);

// Attempt to assemble an orthogonal adjacency eigenbasis with
// (a) xi_n = ones, (b) xi_i(n) = 1, (c) sum_j xi_i(j) = 0 for i < n,
// (d) sum_i xi_i(j) = 0 for j < n, (e) <xi_i, xi_j> = n delta_ij.
// (d) cannot hold at j = n together with (b); column n is reported but not tested.
struct Conjecture2Report {
    bool a = false, b = false, c = false, d = false, e = false;
    ConjectureStatus status = ConjectureStatus::Indeterminate;
    std::string witness;
    std::vector<double> adjacency_eigenvalues;  // aligned with basis columns
    std::vector<std::size_t> eigenspace_dims;
    DenseMatrix basis;                // column i = xi_{i+1}; last column = ones
    std::vector<double> column_sums;  // sum_i xi_i(j)
    // Filled when status == Satisfied:
    double delta_t_inner_product_error = 0.0;  // max |<dt, xi_i (x) xi_j> + n^2 delta_ij|, i,j < n
    double basis_meeting_time = 0.0;           // sum_{i<n} 1 / (1 - beta_i^2)
    double spectral_meeting_time = 0.0;
};

Conjecture2Report conjecture2_check(const RegularGraph& g);

}  // namespace rendezvous
