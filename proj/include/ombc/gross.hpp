#pragma once

#include <cstddef>
#include <vector>

#include "ombc/matrix.hpp"

namespace ombc {

/// Result of the kNN-distance gross-outlier screen.
struct GrossReport {
    std::vector<double> knn_distances;     // one per input row
    std::size_t k = 0;
    double reference_value = 0.0;          // (M+1)-th largest kNN distance
    std::vector<std::size_t> gross_indices;  // flagged rows, ascending
};

/// Euclidean distance from each row to its k-th nearest other row.
/// Exhaustive O(n^2) pass. Requires 1 <= k <= n-1.
std::vector<double> knn_distance(const DataMatrix& data, std::size_t k);

/// Flags gross outliers: the M rows with the largest kNN distances are
/// candidates, the next largest distance is the reference, and candidates
/// whose distance exceeds three times the reference are gross. k defaults
/// to max(1, floor(0.01 * n)).
GrossReport detect_gross(const DataMatrix& data, std::size_t max_outliers, std::size_t k = 0);

}  // namespace ombc
