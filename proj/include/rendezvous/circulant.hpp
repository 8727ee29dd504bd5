#pragma once

#include <cstddef>
#include <vector>

#include "rendezvous/linalg.hpp"

namespace rendezvous {

// Circulant matrix given by its first row (a_0, ..., a_{n-1}); row r is the
// first row rotated right by r. Only symmetric generators (a_k == a_{n-k})
// are supported, which keeps the spectrum real.
struct CirculantSpec {
    std::vector<double> generator;

    std::size_t size() const { return generator.size(); }
    DenseMatrix dense() const;
};

// n^2-order block-circulant matrix whose blocks are themselves circulant.
// blocks[l*n + k] = a_{l,k}: block A_l has first row (a_{l,0}, ..., a_{l,n-1}),
// and entry ((x,y),(x',y')) of the full matrix is a_{(x'-x) mod n, (y'-y) mod n}.
// The matrix is symmetric iff a_{l,k} == a_{-l,-k} (indices mod n).
struct BlockCirculantSpec {
    std::size_t n = 0;
    std::vector<double> blocks;

    double at(std::size_t l, std::size_t k) const { return blocks[l * n + k]; }
    DenseMatrix dense() const;
};

inline constexpr double kGeneratorSymmetryTolerance = 1e-12;

// First row of a circulant / block-circulant matrix. The matrix is not
// checked for circulant structure.
CirculantSpec circulant_from_matrix(const DenseMatrix& a);
BlockCirculantSpec block_circulant_from_matrix(const DenseMatrix& a, std::size_t n);

// lambda_i = sum_k a_k cos(2 pi i k / n), i = 0..n-1 (eigenvector order, not sorted).
std::vector<double> circulant_eigenvalues(const CirculantSpec& spec);

// lambda_{(i,j)} = sum_{l,k} a_{l,k} cos(2 pi (i l + j k) / n), flattened as i*n + j.
std::vector<double> block_circulant_eigenvalues(const BlockCirculantSpec& spec);

}  // namespace rendezvous
