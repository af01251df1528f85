#pragma once

#include <vector>

#include "ombc/errors.hpp"

namespace ombc {

/// A weighted sample on the real line. Weights are non-negative and sum to 1
/// (within 1e-10); values and weights have equal length.
struct WeightedSample {
    std::vector<double> values;
    std::vector<double> weights;
};

/// Validates the WeightedSample invariants; throws DomainError on violation.
void check_weighted_sample(const WeightedSample& sample);

/// Right-continuous weighted empirical CDF: sum of weights of values <= t.
double weighted_ecdf_eval(const WeightedSample& sample, double t);

}  // namespace ombc
