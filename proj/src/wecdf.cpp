#include "ombc/wecdf.hpp"

#include <cmath>

namespace ombc {

void check_weighted_sample(const WeightedSample& sample) {
    if (sample.values.size() != sample.weights.size())
        throw DomainError("WeightedSample: values and weights differ in length");
    double total = 0.0;
    for (double w : sample.weights) {
        if (w < 0.0) throw DomainError("WeightedSample: negative weight");
        total += w;
    }
    if (std::fabs(total - 1.0) > 1e-10)
        throw DomainError("WeightedSample: weights must sum to 1");
}

double weighted_ecdf_eval(const WeightedSample& sample, double t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < sample.values.size(); ++i)
        if (sample.values[i] <= t) acc += sample.weights[i];
    return acc;
}

}  // namespace ombc
