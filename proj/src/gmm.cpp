#include "ombc/gmm.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

#include "ombc/special.hpp"

namespace ombc {

namespace {

std::atomic<double> g_max_loglik_decrease{0.0};

void record_loglik_decrease(double decrease) {
    double current = g_max_loglik_decrease.load(std::memory_order_relaxed);
    while (decrease > current &&
           !g_max_loglik_decrease.compare_exchange_weak(current, decrease,
                                                        std::memory_order_relaxed)) {
    }
}

// Per-component log-density evaluator holding the Cholesky factors.
struct LogDensity {
    std::vector<CholeskyFactor> factors;
    std::vector<double> log_norm;  // -0.5 * (p log 2pi + log|Sigma_g|)

    explicit LogDensity(const MixtureParams& params) {
        const double p = static_cast<double>(params.dim());
        factors.reserve(params.components);
        log_norm.reserve(params.components);
        for (const Matrix& cov : params.covariances) {
            factors.push_back(cholesky(cov));
            log_norm.push_back(-0.5 * (p * std::log(2.0 * std::numbers::pi) +
                                       factors.back().log_det));
        }
    }

    double operator()(std::span<const double> x, const MixtureParams& params, std::size_t g,
                      std::span<double> work) const {
        const double q = mahalanobis_sq(x, params.means.row(g), factors[g], work);
        return log_norm[g] - 0.5 * q;
    }
};

}  // namespace

EStepResult estep(const DataMatrix& data, const MixtureParams& params) {
    const std::size_t n = data.rows();
    const std::size_t g_count = params.components;
    if (params.dim() != data.cols()) throw DomainError("estep: dimension mismatch");
    const LogDensity density(params);

    EStepResult out;
    out.resp = Matrix(n, g_count);
    std::vector<double> log_terms(g_count);
    std::vector<double> work(data.cols());
    double loglik = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t g = 0; g < g_count; ++g)
            log_terms[g] = std::log(params.weights[g]) + density(data.row(i), params, g, work);
        const double lse = log_sum_exp(log_terms);
        loglik += lse;
        for (std::size_t g = 0; g < g_count; ++g) out.resp(i, g) = std::exp(log_terms[g] - lse);
    }
    out.loglik = loglik;
    return out;
}

MixtureParams mstep(const DataMatrix& data, const Matrix& resp) {
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    const std::size_t g_count = resp.cols();
    if (resp.rows() != n) throw DomainError("mstep: responsibility rows != data rows");

    MixtureParams params;
    params.components = g_count;
    params.weights.resize(g_count);
    params.means = Matrix(g_count, p);
    params.covariances.assign(g_count, Matrix(p, p));

    for (std::size_t g = 0; g < g_count; ++g) {
        double size = 0.0;
        for (std::size_t i = 0; i < n; ++i) size += resp(i, g);
        if (size < static_cast<double>(p) + 2.0)
            throw EmptyComponent("mstep: component effective size below p + 2");
        params.weights[g] = size / static_cast<double>(n);

        for (std::size_t i = 0; i < n; ++i) {
            const double w = resp(i, g);
            for (std::size_t j = 0; j < p; ++j) params.means(g, j) += w * data(i, j);
        }
        for (std::size_t j = 0; j < p; ++j) params.means(g, j) /= size;

        Matrix& cov = params.covariances[g];
        std::vector<double> centered(p);
        for (std::size_t i = 0; i < n; ++i) {
            const double w = resp(i, g);
            if (w == 0.0) continue;
            for (std::size_t j = 0; j < p; ++j) centered[j] = data(i, j) - params.means(g, j);
            for (std::size_t j = 0; j < p; ++j)
                for (std::size_t k = j; k < p; ++k) cov(j, k) += w * centered[j] * centered[k];
        }
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t k = j; k < p; ++k) {
                cov(j, k) /= size;
                cov(k, j) = cov(j, k);
            }
    }
    return params;
}

MixtureFit fit(const DataMatrix& data, const Matrix& init_resp, double tol, int max_iter) {
    MixtureFit out;
    double prev_loglik = 0.0;
    bool have_prev = false;
    Matrix resp = init_resp;
    for (int iter = 1; iter <= max_iter; ++iter) {
        out.params = mstep(data, resp);
        EStepResult e = estep(data, out.params);
        resp = std::move(e.resp);
        out.iters = iter;
        if (have_prev) {
            if (e.loglik < prev_loglik) record_loglik_decrease(prev_loglik - e.loglik);
            if (std::fabs(e.loglik - prev_loglik) < tol * (1.0 + std::fabs(e.loglik))) {
                out.loglik = e.loglik;
                out.converged = true;
                break;
            }
        }
        prev_loglik = e.loglik;
        have_prev = true;
        out.loglik = e.loglik;
    }
    out.resp = std::move(resp);
    out.comp_sizes.assign(out.params.components, 0.0);
    for (std::size_t i = 0; i < out.resp.rows(); ++i)
        for (std::size_t g = 0; g < out.params.components; ++g)
            out.comp_sizes[g] += out.resp(i, g);
    return out;
}

std::vector<double> mixture_density(const DataMatrix& data, const MixtureParams& params) {
    const LogDensity density(params);
    std::vector<double> out(data.rows());
    std::vector<double> log_terms(params.components);
    std::vector<double> work(data.cols());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t g = 0; g < params.components; ++g)
            log_terms[g] = std::log(params.weights[g]) + density(data.row(i), params, g, work);
        out[i] = std::exp(log_sum_exp(log_terms));
    }
    return out;
}

double max_loglik_decrease() { return g_max_loglik_decrease.load(std::memory_order_relaxed); }

void reset_loglik_decrease() { g_max_loglik_decrease.store(0.0, std::memory_order_relaxed); }

}  // namespace ombc
