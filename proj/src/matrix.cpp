#include "ombc/matrix.hpp"

#include <cmath>
#include <cstdlib>

namespace ombc {

bool is_symmetric(const Matrix& m, double rel_tol) {
    if (m.rows() != m.cols()) return false;
    double scale = 0.0;
    for (double v : m.data()) scale = std::max(scale, std::fabs(v));
    if (scale == 0.0) return true;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (std::fabs(m(i, j) - m(j, i)) > rel_tol * scale) return false;
    return true;
}

namespace {

// Plain lower-triangular Cholesky. Returns false on a non-positive pivot.
bool try_factorize(const Matrix& m, Matrix& lower, double& log_det) {
    const std::size_t n = m.rows();
    lower = Matrix(n, n);
    log_det = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double diag = m(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= lower(j, k) * lower(j, k);
        if (!(diag > 0.0) || !std::isfinite(diag)) return false;
        const double root = std::sqrt(diag);
        lower(j, j) = root;
        log_det += 2.0 * std::log(root);
        for (std::size_t i = j + 1; i < n; ++i) {
            double acc = m(i, j);
            for (std::size_t k = 0; k < j; ++k) acc -= lower(i, k) * lower(j, k);
            lower(i, j) = acc / root;
        }
    }
    return true;
}

}  // namespace

CholeskyFactor cholesky(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DomainError("cholesky: matrix must be square and non-empty");
    CholeskyFactor f;
    if (try_factorize(m, f.lower, f.log_det)) return f;

    // One ridge repair attempt: bounded perturbation proportional to scale.
    double trace = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) trace += m(i, i);
    const double ridge = 1e-8 * trace / static_cast<double>(m.rows());
    Matrix repaired = m;
    for (std::size_t i = 0; i < m.rows(); ++i) repaired(i, i) += ridge;
    if (try_factorize(repaired, f.lower, f.log_det)) return f;
    throw NotPositiveDefinite("cholesky: matrix not positive definite after ridge repair");
}

double mahalanobis_sq(std::span<const double> x, std::span<const double> mu,
                      const CholeskyFactor& chol, std::span<double> work) {
    const std::size_t n = x.size();
    const Matrix& l = chol.lower;
    // Forward solve L w = (x - mu); the quadratic form is then |w|^2.
    for (std::size_t i = 0; i < n; ++i) {
        double acc = x[i] - mu[i];
        for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * work[k];
        work[i] = acc / l(i, i);
    }
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) q += work[i] * work[i];
    return q;
}

double mahalanobis_sq(std::span<const double> x, std::span<const double> mu, const Matrix& cov) {
    if (x.size() != mu.size() || cov.rows() != x.size())
        throw DomainError("mahalanobis_sq: dimension mismatch");
    const CholeskyFactor f = cholesky(cov);
    std::vector<double> work(x.size());
    return mahalanobis_sq(x, mu, f, work);
}

}  // namespace ombc
