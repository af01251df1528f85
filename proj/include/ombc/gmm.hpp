#pragma once

#include <vector>

#include "ombc/matrix.hpp"

namespace ombc {

/// Parameters of a G-component Gaussian mixture with unrestricted
/// covariance matrices.
struct MixtureParams {
    std::size_t components = 0;          // G
    std::vector<double> weights;         // pi_g, sums to 1
    Matrix means;                        // G x p
    std::vector<Matrix> covariances;     // G matrices, p x p

    std::size_t dim() const { return means.cols(); }
};

/// A fitted mixture: parameters, responsibilities, effective component
/// sizes, and the log-likelihood trajectory endpoint.
struct MixtureFit {
    MixtureParams params;
    Matrix resp;                     // n x G, rows sum to 1
    double loglik = 0.0;
    std::vector<double> comp_sizes;  // column sums of resp
    int iters = 0;
    bool converged = false;
};

/// E-step: responsibilities and total log-likelihood under `params`,
/// computed in log space through log_sum_exp.
struct EStepResult {
    Matrix resp;
    double loglik = 0.0;
};
EStepResult estep(const DataMatrix& data, const MixtureParams& params);

/// M-step: weighted MLE update (weights, means, scatter with divisor n_g).
/// Throws EmptyComponent if any effective component size drops below p + 2,
/// where the Beta reference for that component would cease to exist.
MixtureParams mstep(const DataMatrix& data, const Matrix& resp);

/// EM iteration from an initial responsibility matrix. Stops when the
/// relative log-likelihood change falls below `tol` or after `max_iter`
/// iterations. The log-likelihood sequence is monotone up to 1e-9 slack;
/// every fit feeds the global monotonicity diagnostic below.
MixtureFit fit(const DataMatrix& data, const Matrix& init_resp, double tol = 1e-8,
               int max_iter = 1000);

/// Mixture density f(x_i) for every row; strictly positive.
std::vector<double> mixture_density(const DataMatrix& data, const MixtureParams& params);

/// Largest log-likelihood decrease observed across every EM iteration run by
/// this process (0 when EM has always been monotone). Test suites assert it
/// stays below 1e-9.
double max_loglik_decrease();
void reset_loglik_decrease();

}  // namespace ombc
