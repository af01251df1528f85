#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "ombc/gmm.hpp"
#include "ombc/special.hpp"
#include "ombc/wecdf.hpp"

namespace ombc {

/// Component-wise and aggregated dissimilarity between the observed and
/// theoretical distributions of scaled squared sample Mahalanobis distances.
/// An aggregated value of +infinity marks a record poisoned by a degenerate
/// component.
struct ComponentDissim {
    std::vector<double> per_component;
    double aggregated = 0.0;
    int grid_size = 0;

    bool valid() const { return std::isfinite(aggregated); }
};

/// Scaled squared sample Mahalanobis distances for component g:
/// y_j = n_g / (n_g - 1)^2 * (x_j - mu_g)' S_g^-1 (x_j - mu_g) with the
/// bias-corrected sample covariance S_g = n_g/(n_g - 1) * Sigma_g, weighted
/// by resp_jg / n_g over all retained rows. Raw values are returned
/// unclamped. Throws DegenerateComponent if n_g <= p + 1.
WeightedSample scaled_distances(const DataMatrix& data, const MixtureFit& fit, std::size_t g);

/// Mean absolute gap between a reference CDF and the weighted empirical CDF
/// over the grid {t/T : t = 1..T}. Values are clamped to [0,1] for the ECDF
/// evaluation only.
double mean_abs_cdf_gap(const WeightedSample& sample,
                        const std::function<double(double)>& ref_cdf, int grid_size);

/// The gap above with a Beta reference CDF.
double component_dissim(const WeightedSample& sample, const BetaRef& ref, int grid_size);

/// Mixture-weighted quadratic mean sqrt(sum_g pi_g * D_g^2).
double aggregate(const std::vector<double>& per_component, const std::vector<double>& weights);

/// Full per-step dissimilarity: scaled distances and Beta(p/2, (n_g-p-1)/2)
/// reference per component, aggregated across components. A degenerate
/// component poisons the whole record rather than being skipped.
ComponentDissim step_dissim(const DataMatrix& data, const MixtureFit& fit, int grid_size);

}  // namespace ombc
