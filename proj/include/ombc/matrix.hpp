#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ombc/errors.hpp"

namespace ombc {

/// Dense row-major matrix of doubles. The only linear-algebra container the
/// library needs; observation matrices, responsibility matrices, and
/// covariance matrices all use it.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data_.data() + i * cols_, cols_);
    }
    std::span<double> row(std::size_t i) {
        return std::span<double>(data_.data() + i * cols_, cols_);
    }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    /// Removes row i, shifting later rows up.
    void erase_row(std::size_t i) {
        data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                    data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
        --rows_;
    }

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

using DataMatrix = Matrix;

/// True if m is square and symmetric to within `rel_tol` relative to its
/// largest absolute entry.
bool is_symmetric(const Matrix& m, double rel_tol = 1e-12);

/// Cholesky factor of a symmetric positive-definite matrix, plus
/// log|A| = 2 * sum(log L_ii).
struct CholeskyFactor {
    Matrix lower;
    double log_det = 0.0;
};

/// Factorizes a symmetric positive-definite matrix. If the factorization
/// fails, a ridge of (1e-8 * trace / dim) is added to the diagonal once and
/// the factorization retried; a second failure throws NotPositiveDefinite.
CholeskyFactor cholesky(const Matrix& m);

/// Squared Mahalanobis distance (x - mu)' C^-1 (x - mu), evaluated with two
/// triangular solves against a precomputed factor. `work` must have room for
/// the dimension.
double mahalanobis_sq(std::span<const double> x, std::span<const double> mu,
                      const CholeskyFactor& chol, std::span<double> work);

/// Convenience overload that factorizes `cov` internally.
double mahalanobis_sq(std::span<const double> x, std::span<const double> mu, const Matrix& cov);

}  // namespace ombc
