#include "ombc/simgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ombc/special.hpp"

namespace ombc {

namespace {

// Covariance constants (a, b, c, d, e, f) per model:
//   Sigma_1 = [[1,0],[0,a]], Sigma_2 = [[b,0],[0,c]], Sigma_3 = [[d,e],[e,f]]
constexpr std::array<std::array<double, 6>, 5> kModelConstants{{
    {1, 1, 1, 1, 0, 1},
    {5, 1, 5, 1, 0, 5},
    {5, 5, 1, 3, -2, 3},
    {1, 20, 5, 15, -10, 15},
    {1, 45, 30, 15, -10, 15},
}};

Matrix pad_block_identity(const Matrix& top_left, std::size_t dim) {
    Matrix out = Matrix::identity(dim);
    for (std::size_t i = 0; i < top_left.rows(); ++i)
        for (std::size_t j = 0; j < top_left.cols(); ++j) out(i, j) = top_left(i, j);
    return out;
}

std::vector<std::size_t> component_counts(const std::vector<double>& proportions,
                                          std::size_t n_obs) {
    std::vector<std::size_t> counts(proportions.size());
    std::size_t assigned = 0;
    for (std::size_t g = 0; g + 1 < proportions.size(); ++g) {
        counts[g] = static_cast<std::size_t>(std::floor(proportions[g] * n_obs));
        assigned += counts[g];
    }
    counts.back() = n_obs - assigned;
    return counts;
}

struct BoundingBox {
    std::vector<double> lo, hi;
};

BoundingBox bounding_box(const DataMatrix& rows) {
    BoundingBox box;
    box.lo.assign(rows.cols(), 0.0);
    box.hi.assign(rows.cols(), 0.0);
    for (std::size_t j = 0; j < rows.cols(); ++j) {
        double lo = rows(0, j);
        double hi = rows(0, j);
        for (std::size_t i = 1; i < rows.rows(); ++i) {
            lo = std::min(lo, rows(i, j));
            hi = std::max(hi, rows(i, j));
        }
        box.lo[j] = lo;
        box.hi[j] = hi;
    }
    return box;
}

}  // namespace

ScenarioSpec tclust_scenario(std::size_t dim, const std::string& proportions_id, int model_id,
                             std::uint64_t seed) {
    if (dim != 2 && dim != 6) throw UnknownScenario("tclust_scenario: dim must be 2 or 6");
    if (model_id < 1 || model_id > 5)
        throw UnknownScenario("tclust_scenario: model must be 1..5");

    ScenarioSpec spec;
    if (proportions_id == "equal")
        spec.proportions = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    else if (proportions_id == "unequal")
        spec.proportions = {1.0 / 5.0, 2.0 / 5.0, 2.0 / 5.0};
    else
        throw UnknownScenario("tclust_scenario: proportions must be 'equal' or 'unequal'");

    const auto& c = kModelConstants[static_cast<std::size_t>(model_id - 1)];
    Matrix means2(3, 2);
    means2(0, 0) = 0.0;
    means2(0, 1) = 8.0;
    means2(1, 0) = 8.0;
    means2(1, 1) = 0.0;
    means2(2, 0) = -8.0;
    means2(2, 1) = -8.0;
    std::vector<Matrix> covs2(3, Matrix(2, 2));
    covs2[0](0, 0) = 1.0;
    covs2[0](1, 1) = c[0];
    covs2[1](0, 0) = c[1];
    covs2[1](1, 1) = c[2];
    covs2[2](0, 0) = c[3];
    covs2[2](0, 1) = covs2[2](1, 0) = c[4];
    covs2[2](1, 1) = c[5];

    spec.dim = dim;
    spec.n_obs = 900;
    spec.n_outliers = 100;
    spec.outlier_mode = RejectEllipsoids{0.99};
    spec.seed = seed;
    spec.tag = "tclust-p" + std::to_string(dim) + "-" + proportions_id + "-m" +
               std::to_string(model_id);
    if (dim == 2) {
        spec.means = means2;
        spec.covariances = covs2;
    } else {
        spec.means = Matrix(3, 6);
        for (std::size_t g = 0; g < 3; ++g) {
            spec.means(g, 0) = means2(g, 0);
            spec.means(g, 1) = means2(g, 1);
            spec.covariances.push_back(pad_block_identity(covs2[g], 6));
        }
    }
    return spec;
}

LabeledData sample_mixture(const ScenarioSpec& spec) {
    const std::size_t g_count = spec.proportions.size();
    const std::size_t p = spec.dim;
    const std::vector<std::size_t> counts = component_counts(spec.proportions, spec.n_obs);

    std::vector<CholeskyFactor> factors;
    factors.reserve(g_count);
    for (const Matrix& cov : spec.covariances) factors.push_back(cholesky(cov));

    LabeledData out;
    out.data = DataMatrix(spec.n_obs, p);
    out.labels.reserve(spec.n_obs);
    RandomStream rng(spec.seed, spec.tag, /*stream_id=*/0);

    std::vector<double> z(p);
    std::size_t row = 0;
    for (std::size_t g = 0; g < g_count; ++g) {
        for (std::size_t i = 0; i < counts[g]; ++i, ++row) {
            for (std::size_t j = 0; j < p; ++j) z[j] = rng.normal();
            for (std::size_t j = 0; j < p; ++j) {
                double acc = spec.means(g, j);
                for (std::size_t k = 0; k <= j; ++k) acc += factors[g].lower(j, k) * z[k];
                out.data(row, j) = acc;
            }
            out.labels.push_back(static_cast<int>(g) + 1);
        }
    }
    return out;
}

Matrix sample_outliers_reject(const ScenarioSpec& spec, const DataMatrix& mixture_rows) {
    const auto* mode = std::get_if<RejectEllipsoids>(&spec.outlier_mode);
    if (mode == nullptr)
        throw DomainError("sample_outliers_reject: scenario is not in rejection mode");
    const std::size_t p = spec.dim;
    const double threshold = chisq_quantile(mode->level, static_cast<int>(p));
    const BoundingBox box = bounding_box(mixture_rows);

    std::vector<CholeskyFactor> factors;
    for (const Matrix& cov : spec.covariances) factors.push_back(cholesky(cov));

    Matrix out(spec.n_outliers, p);
    RandomStream rng(spec.seed, spec.tag, /*stream_id=*/1);
    std::vector<double> proposal(p), work(p);
    std::size_t accepted = 0;
    constexpr std::size_t kProposalCap = 10'000'000;
    for (std::size_t tries = 0; accepted < spec.n_outliers; ++tries) {
        if (tries >= kProposalCap)
            throw RejectionStall("sample_outliers_reject: proposal cap reached");
        for (std::size_t j = 0; j < p; ++j)
            proposal[j] = box.lo[j] + (box.hi[j] - box.lo[j]) * rng.uniform01();
        bool extreme_everywhere = true;
        for (std::size_t g = 0; g < factors.size() && extreme_everywhere; ++g) {
            const double q = mahalanobis_sq(proposal, spec.means.row(g), factors[g], work);
            extreme_everywhere = q > threshold;
        }
        if (!extreme_everywhere) continue;
        for (std::size_t j = 0; j < p; ++j) out(accepted, j) = proposal[j];
        ++accepted;
    }
    return out;
}

Matrix sample_outliers_box(std::size_t n_outliers, const DataMatrix& data, double expand_factor,
                           std::uint64_t seed) {
    if (!(expand_factor >= 0.0))
        throw DomainError("sample_outliers_box: expand_factor must be non-negative");
    const std::size_t p = data.cols();
    const BoundingBox box = bounding_box(data);
    std::vector<double> mid(p), half(p);
    for (std::size_t j = 0; j < p; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < data.rows(); ++i) mean += data(i, j);
        mean /= static_cast<double>(data.rows());
        mid[j] = mean;
        half[j] = 0.5 * expand_factor * (box.hi[j] - box.lo[j]);
    }

    Matrix out(n_outliers, p);
    RandomStream rng(seed, "box-outliers", /*stream_id=*/2);
    for (std::size_t i = 0; i < n_outliers; ++i)
        for (std::size_t j = 0; j < p; ++j)
            out(i, j) = mid[j] - half[j] + 2.0 * half[j] * rng.uniform01();
    return out;
}

LabeledData generate(const ScenarioSpec& spec) {
    LabeledData mixture = sample_mixture(spec);
    Matrix outliers;
    if (std::holds_alternative<RejectEllipsoids>(spec.outlier_mode))
        outliers = sample_outliers_reject(spec, mixture.data);
    else
        outliers = sample_outliers_box(spec.n_outliers, mixture.data,
                                       std::get<PlainBox>(spec.outlier_mode).expand_factor,
                                       spec.seed);

    LabeledData out;
    out.data = DataMatrix(mixture.data.rows() + outliers.rows(), spec.dim);
    out.labels = mixture.labels;
    for (std::size_t i = 0; i < mixture.data.rows(); ++i)
        for (std::size_t j = 0; j < spec.dim; ++j) out.data(i, j) = mixture.data(i, j);
    for (std::size_t i = 0; i < outliers.rows(); ++i) {
        for (std::size_t j = 0; j < spec.dim; ++j)
            out.data(mixture.data.rows() + i, j) = outliers(i, j);
        out.labels.push_back(0);
    }
    return out;
}

ScenarioSpec illustrative_scenario(const std::string& size, std::uint64_t seed) {
    ScenarioSpec spec;
    if (size == "small") {
        spec.n_obs = 1000;
        spec.n_outliers = 10;
    } else if (size == "large") {
        spec.n_obs = 4000;
        spec.n_outliers = 40;
    } else {
        throw UnknownScenario("illustrative_scenario: size must be 'small' or 'large'");
    }
    spec.tag = "illustrative-" + size;
    spec.dim = 2;
    spec.seed = seed;
    spec.proportions = {0.3, 0.4, 0.3};
    spec.outlier_mode = RejectEllipsoids{0.99999};
    spec.means = Matrix(3, 2);
    spec.means(0, 0) = 0.0;
    spec.means(0, 1) = 8.0;
    spec.means(1, 0) = 8.0;
    spec.means(1, 1) = 0.0;
    spec.means(2, 0) = -8.0;
    spec.means(2, 1) = -8.0;
    spec.covariances.assign(3, Matrix(2, 2));
    spec.covariances[0](0, 0) = 1.0;
    spec.covariances[0](0, 1) = spec.covariances[0](1, 0) = 0.3;
    spec.covariances[0](1, 1) = 1.5;
    spec.covariances[1](0, 0) = 1.5;
    spec.covariances[1](0, 1) = spec.covariances[1](1, 0) = -0.4;
    spec.covariances[1](1, 1) = 1.0;
    spec.covariances[2](0, 0) = 1.2;
    spec.covariances[2](1, 1) = 1.2;
    return spec;
}

}  // namespace ombc
