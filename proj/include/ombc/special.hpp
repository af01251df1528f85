#pragma once

#include <span>

#include "ombc/errors.hpp"

namespace ombc {

/// Shape parameters of a Beta distribution; both must be positive.
struct BetaRef {
    double a = 1.0;
    double b = 1.0;
};

/// Regularized incomplete beta function I_y(a, b), i.e. the Beta CDF.
/// Continued-fraction evaluation (modified Lentz), using the symmetry
/// I_y(a,b) = 1 - I_{1-y}(b,a) to stay in the fast-converging branch.
/// Throws DomainError for y outside [0,1] or non-positive shapes.
double beta_cdf(double y, const BetaRef& ref);

/// Regularized lower incomplete gamma P(a, x) = gamma(a,x) / Gamma(a).
/// Series expansion for x < a+1, continued fraction otherwise.
double gamma_p(double a, double x);

/// Chi-square CDF with `dof` degrees of freedom.
double chisq_cdf(double x, int dof);

/// Quantile of the chi-square distribution: the q with P(X <= q) = prob,
/// found by monotone bisection on [0, dof + 20*sqrt(2*dof)] followed by a
/// Newton polish. Throws DomainError unless 0 < prob < 1 and dof >= 1.
double chisq_quantile(double prob, int dof);

/// log(sum(exp(v))) computed after subtracting max(v). Exact for a single
/// element. Throws DomainError on an empty input.
double log_sum_exp(std::span<const double> v);

}  // namespace ombc
