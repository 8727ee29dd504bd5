#include "rendezvous/circulant.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rendezvous {

namespace {

void require_symmetric(const CirculantSpec& spec) {
    const std::size_t n = spec.size();
    if (n == 0) throw std::invalid_argument("circulant generator is empty");
    for (std::size_t k = 1; k < n; ++k) {
        if (std::abs(spec.generator[k] - spec.generator[n - k]) > kGeneratorSymmetryTolerance) {
            throw std::invalid_argument("circulant generator is not symmetric at k=" + std::to_string(k));
        }
    }
}

void require_symmetric(const BlockCirculantSpec& spec) {
    const std::size_t n = spec.n;
    if (n == 0 || spec.blocks.size() != n * n) {
        throw std::invalid_argument("block-circulant spec needs n*n block coefficients");
    }
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = 0; k < n; ++k) {
            const double mirrored = spec.at((n - l) % n, (n - k) % n);
            if (std::abs(spec.at(l, k) - mirrored) > kGeneratorSymmetryTolerance) {
                throw std::invalid_argument("block-circulant spec is not symmetric at (" + std::to_string(l) +
                                            "," + std::to_string(k) + ")");
            }
        }
}

}  // namespace

DenseMatrix CirculantSpec::dense() const {
    const std::size_t n = size();
    DenseMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = generator[(c + n - r) % n];
    return m;
}

DenseMatrix BlockCirculantSpec::dense() const {
    DenseMatrix m(n * n, n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t xp = 0; xp < n; ++xp)
                for (std::size_t yp = 0; yp < n; ++yp)
                    m(x * n + y, xp * n + yp) = at((xp + n - x) % n, (yp + n - y) % n);
    return m;
}

CirculantSpec circulant_from_matrix(const DenseMatrix& a) {
    if (!a.square() || a.rows() == 0) throw std::invalid_argument("circulant_from_matrix: need a square matrix");
    auto r = a.row(0);
    return {std::vector<double>(r.begin(), r.end())};
}

BlockCirculantSpec block_circulant_from_matrix(const DenseMatrix& a, std::size_t n) {
    if (!a.square() || a.rows() != n * n) {
        throw std::invalid_argument("block_circulant_from_matrix: matrix must be n^2 x n^2");
    }
    auto r = a.row(0);
    return {n, std::vector<double>(r.begin(), r.end())};
}

std::vector<double> circulant_eigenvalues(const CirculantSpec& spec) {
    require_symmetric(spec);
    const std::size_t n = spec.size();
    const auto& a = spec.generator;
    std::vector<double> lambda(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = a[0];
        for (std::size_t k = 1; k <= (n - 1) / 2; ++k) {
            // reduce i*k mod n first so the cosine argument stays in [0, 2 pi)
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((i * k) % n) / static_cast<double>(n);
            s += 2.0 * a[k] * std::cos(angle);
        }
        if (n % 2 == 0) s += a[n / 2] * ((i % 2 == 0) ? 1.0 : -1.0);
        lambda[i] = s;
    }
    return lambda;
}

std::vector<double> block_circulant_eigenvalues(const BlockCirculantSpec& spec) {
    require_symmetric(spec);
    const std::size_t n = spec.n;
    // cos(2 pi m / n) for m = 0..n-1; every phase reduces to one of these.
    std::vector<double> cosines(n);
    for (std::size_t m = 0; m < n; ++m) cosines[m] = std::cos(2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));

    std::vector<std::size_t> support;
    for (std::size_t idx = 0; idx < spec.blocks.size(); ++idx)
        if (spec.blocks[idx] != 0.0) support.push_back(idx);

    std::vector<double> lambda(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t idx : support) {
                const std::size_t l = idx / n, k = idx % n;
                s += spec.blocks[idx] * cosines[(i * l + j * k) % n];
            }
            lambda[i * n + j] = s;
        }
    return lambda;
}

}  // namespace rendezvous
