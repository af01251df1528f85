#include "ombc/metrics.hpp"

#include <algorithm>
#include <map>

namespace ombc {

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw DomainError("adjusted_rand_index: length mismatch");
    const std::size_t n = a.size();
    if (n < 2) throw DomainError("adjusted_rand_index: need at least two items");

    std::map<std::pair<int, int>, std::size_t> cells;
    std::map<int, std::size_t> row_sums, col_sums;
    for (std::size_t i = 0; i < n; ++i) {
        ++cells[{a[i], b[i]}];
        ++row_sums[a[i]];
        ++col_sums[b[i]];
    }

    using Wide = __int128;
    auto choose2 = [](std::size_t x) { return static_cast<Wide>(x) * (x - 1) / 2; };
    Wide sum_cells = 0, sum_rows = 0, sum_cols = 0;
    for (const auto& [key, count] : cells) sum_cells += choose2(count);
    for (const auto& [label, count] : row_sums) sum_rows += choose2(count);
    for (const auto& [label, count] : col_sums) sum_cols += choose2(count);
    const Wide pairs = choose2(n);

    // ARI = (Index - Expected) / (Max - Expected), cleared of denominators:
    // both sides multiplied by 2 * pairs.
    const Wide numerator = 2 * (pairs * sum_cells - sum_rows * sum_cols);
    const Wide denominator = pairs * (sum_rows + sum_cols) - 2 * sum_rows * sum_cols;
    if (denominator == 0) return 1.0;  // both partitions trivial and identical in structure
    return static_cast<double>(numerator) / static_cast<double>(denominator);
}

std::pair<double, ConfusionCounts> outlier_f1(const std::vector<std::size_t>& predicted,
                                              const std::vector<std::size_t>& truth,
                                              std::size_t n) {
    std::vector<char> in_pred(n, 0), in_truth(n, 0);
    for (std::size_t i : predicted) in_pred.at(i) = 1;
    for (std::size_t i : truth) in_truth.at(i) = 1;

    ConfusionCounts counts;
    for (std::size_t i = 0; i < n; ++i) {
        if (in_pred[i] && in_truth[i])
            ++counts.tp;
        else if (in_pred[i])
            ++counts.fp;
        else if (in_truth[i])
            ++counts.fn;
        else
            ++counts.tn;
    }
    if (counts.tp == 0) return {0.0, counts};
    const double precision = static_cast<double>(counts.tp) / (counts.tp + counts.fp);
    const double recall = static_cast<double>(counts.tp) / (counts.tp + counts.fn);
    return {2.0 * precision * recall / (precision + recall), counts};
}

}  // namespace ombc
