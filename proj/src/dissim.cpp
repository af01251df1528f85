#include "ombc/dissim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ombc {

WeightedSample scaled_distances(const DataMatrix& data, const MixtureFit& fit, std::size_t g) {
    const std::size_t n = data.rows();
    const double p = static_cast<double>(data.cols());
    const double n_g = fit.comp_sizes[g];
    if (!(n_g > p + 1.0))
        throw DegenerateComponent("scaled_distances: component size must exceed p + 1");

    // Bias-corrected sample covariance and the Beta-law scaling factor.
    Matrix sample_cov = fit.params.covariances[g];
    const double correction = n_g / (n_g - 1.0);
    for (double& v : sample_cov.data()) v *= correction;
    const double scale = n_g / ((n_g - 1.0) * (n_g - 1.0));

    const CholeskyFactor chol = cholesky(sample_cov);
    std::vector<double> work(data.cols());
    WeightedSample out;
    out.values.resize(n);
    out.weights.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = scale * mahalanobis_sq(data.row(j), fit.params.means.row(g), chol, work);
        out.weights[j] = fit.resp(j, g) / n_g;
    }
    return out;
}

double mean_abs_cdf_gap(const WeightedSample& sample,
                        const std::function<double(double)>& ref_cdf, int grid_size) {
    if (grid_size < 1) throw DomainError("mean_abs_cdf_gap: grid size must be >= 1");
    const std::size_t n = sample.values.size();

    // Sort (clamped value, weight) pairs once; the T grid queries then cost a
    // single merged sweep instead of T scans.
    std::vector<std::pair<double, double>> points(n);
    for (std::size_t j = 0; j < n; ++j)
        points[j] = {std::clamp(sample.values[j], 0.0, 1.0), sample.weights[j]};
    std::sort(points.begin(), points.end());

    const double t_count = static_cast<double>(grid_size);
    double ecdf = 0.0;
    std::size_t next = 0;
    double total = 0.0;
    for (int t = 1; t <= grid_size; ++t) {
        const double x = static_cast<double>(t) / t_count;
        while (next < n && points[next].first <= x) ecdf += points[next++].second;
        const double ref = ref_cdf(x);
        total += std::fabs(ref - ecdf);
        // Both CDFs pinned at 1: every remaining term is below 1e-16.
        if (next == n && ecdf > 1.0 - 1e-12 && 1.0 - ref < 1e-16) break;
    }
    return total / t_count;
}

double component_dissim(const WeightedSample& sample, const BetaRef& ref, int grid_size) {
    return mean_abs_cdf_gap(
        sample, [&ref](double x) { return beta_cdf(x, ref); }, grid_size);
}

double aggregate(const std::vector<double>& per_component, const std::vector<double>& weights) {
    if (per_component.size() != weights.size())
        throw DomainError("aggregate: length mismatch");
    double acc = 0.0;
    for (std::size_t g = 0; g < per_component.size(); ++g)
        acc += weights[g] * per_component[g] * per_component[g];
    return std::sqrt(acc);
}

ComponentDissim step_dissim(const DataMatrix& data, const MixtureFit& fit, int grid_size) {
    const double p = static_cast<double>(data.cols());
    ComponentDissim out;
    out.grid_size = grid_size;
    out.per_component.assign(fit.params.components, 0.0);
    for (std::size_t g = 0; g < fit.params.components; ++g) {
        const double n_g = fit.comp_sizes[g];
        if (!(n_g > p + 1.0)) {
            out.aggregated = std::numeric_limits<double>::infinity();
            return out;
        }
        const WeightedSample sample = scaled_distances(data, fit, g);
        const BetaRef ref{0.5 * p, 0.5 * (n_g - p - 1.0)};
        out.per_component[g] = component_dissim(sample, ref, grid_size);
    }
    out.aggregated = aggregate(out.per_component, fit.params.weights);
    return out;
}

}  // namespace ombc
