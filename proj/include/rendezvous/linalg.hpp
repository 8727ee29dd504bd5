#pragma once

#include <cstddef>
#include <exception>
#include <span>
#include <string>
#include <vector>

namespace rendezvous {

// Dense real matrix, row-major.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> data() const { return data_; }

    DenseMatrix transpose() const;
    // max_{i,j} |A(i,j) - A(j,i)|
    double asymmetry() const;
    // Max absolute row sum.
    double norm_inf() const;
    double norm_frobenius() const;

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
    friend DenseMatrix operator*(double s, const DenseMatrix& a);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
double norm_inf(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);

// Real symmetric eigendecomposition. eigenvectors(:, i) pairs with eigenvalues[i];
// eigenvalues ascending.
struct Spectrum {
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors;
    // max_i ||A v_i - lambda_i v_i||_inf
    double residual = 0.0;
    int sweeps = 0;

    std::vector<double> eigenvector(std::size_t i) const;
};

inline constexpr double kSymmetryTolerance = 1e-10;
inline constexpr int kMaxJacobiSweeps = 100;

// Cyclic Jacobi. tol <= 0 selects 1e-12 * ||A||_F as the off-diagonal target.
Spectrum sym_eigen(const DenseMatrix& a, double tol = 0.0);

// Threshold below which an eigenvalue of A is classified as zero.
double zero_threshold(const DenseMatrix& a);

// LU factorization with partial pivoting; factor once, solve many.
class LuDecomposition {
public:
    static constexpr double kPivotTolerance = 1e-13;

    // Throws SingularMatrixError naming the column where elimination failed.
    explicit LuDecomposition(DenseMatrix a);

    std::vector<double> solve(std::span<const double> rhs) const;
    std::size_t size() const { return lu_.rows(); }

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
};

class SingularMatrixError : public std::exception {
public:
    explicit SingularMatrixError(std::size_t column);
    const char* what() const noexcept override { return message_.c_str(); }
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
    std::string message_;
};

std::vector<double> solve(const DenseMatrix& a, std::span<const double> rhs);

inline constexpr std::size_t kMaxKroneckerDimension = 4096;
DenseMatrix kronecker(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace rendezvous
