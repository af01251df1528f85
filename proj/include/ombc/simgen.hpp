#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ombc/matrix.hpp"
#include "ombc/rng.hpp"

namespace ombc {

/// Outliers are accepted only outside every component's `level` ellipsoid.
struct RejectEllipsoids {
    double level = 0.99;
};

/// Outliers are drawn from an expanded data bounding box, no rejection.
struct PlainBox {
    double expand_factor = 2.0;
};

using OutlierMode = std::variant<RejectEllipsoids, PlainBox>;

/// Declarative description of one simulated dataset.
struct ScenarioSpec {
    std::string tag;                   // stream-derivation tag, unique per scenario
    std::size_t dim = 2;               // p
    std::vector<double> proportions;   // per component, sums to 1
    std::size_t n_obs = 0;             // Gaussian observations in total
    std::size_t n_outliers = 0;
    Matrix means;                      // G x p
    std::vector<Matrix> covariances;   // G matrices
    OutlierMode outlier_mode = RejectEllipsoids{};
    std::uint64_t seed = 1;
};

/// A simulated dataset with ground truth: labels are 1..G for mixture rows
/// and 0 for outliers.
struct LabeledData {
    DataMatrix data;
    std::vector<int> labels;
};

/// Materializes one scenario of the three-component benchmark family:
/// p in {2,6}, equal (1/3,1/3,1/3) or unequal (1/5,2/5,2/5) proportions, and
/// covariance model 1..5; 900 Gaussian observations plus 100 rejected-uniform
/// outliers. The 6-dimensional variants pad the 2-D parameters with zero
/// means and identity covariance blocks.
ScenarioSpec tclust_scenario(std::size_t dim, const std::string& proportions_id, int model_id,
                             std::uint64_t seed);

/// Draws the Gaussian part of a scenario. Component counts are
/// floor(proportion * n_obs) with the remainder assigned to the last
/// component; draws are mean + L z with L the Cholesky factor.
LabeledData sample_mixture(const ScenarioSpec& spec);

/// Uniform draws over the bounding box of the mixture rows, accepted only if
/// the squared Mahalanobis distance against every true component exceeds the
/// chi-square `level` quantile. Throws RejectionStall after 1e7 proposals.
Matrix sample_outliers_reject(const ScenarioSpec& spec, const DataMatrix& mixture_rows);

/// Uniform draws over a hyper-rectangle centred at the column means of
/// `data` with `expand_factor` times the data range per dimension; no
/// acceptance test.
Matrix sample_outliers_box(std::size_t n_outliers, const DataMatrix& data, double expand_factor,
                           std::uint64_t seed);

/// Full dataset for a scenario: mixture rows first (labels 1..G), then
/// outliers (label 0).
LabeledData generate(const ScenarioSpec& spec);

/// Built-in illustrative design: a fixed three-component 2-D mixture with
/// 1000 (+10 outliers) or 4000 (+40 outliers) observations; both sizes share
/// the same component parameters.
ScenarioSpec illustrative_scenario(const std::string& size, std::uint64_t seed);

}  // namespace ombc
