#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ombc/errors.hpp"

namespace ombc {

/// Outlier-classification confusion counts, outlier = positive class.
struct ConfusionCounts {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
};

/// Hubert-Arabie Adjusted Rand Index between two labelings of the same
/// items. Any outlier sentinel is treated as an ordinary class. Pair counts
/// are held in 128-bit integers, so the index is exact up to the final
/// division.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

/// F1 for outlier classification given predicted and true outlier row sets
/// (0-based indices into n rows). Returns 0 when there are no true
/// positives, including the empty-prediction case.
std::pair<double, ConfusionCounts> outlier_f1(const std::vector<std::size_t>& predicted,
                                              const std::vector<std::size_t>& truth,
                                              std::size_t n);

}  // namespace ombc
