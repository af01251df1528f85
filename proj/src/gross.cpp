#include "ombc/gross.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ombc {

std::vector<double> knn_distance(const DataMatrix& data, std::size_t k) {
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    if (k < 1 || k > n - 1) throw DomainError("knn_distance: require 1 <= k <= n-1");

    std::vector<double> out(n);
    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t c = 0; c < p; ++c) {
                const double diff = data(i, c) - data(j, c);
                acc += diff * diff;
            }
            d2[j] = acc;
        }
        // Drop the self distance by overwriting it with the last entry and
        // shrinking the selection range by one.
        d2[i] = d2[n - 1];
        std::nth_element(d2.begin(), d2.begin() + static_cast<std::ptrdiff_t>(k - 1),
                         d2.end() - 1);
        out[i] = std::sqrt(d2[k - 1]);
    }
    return out;
}

GrossReport detect_gross(const DataMatrix& data, std::size_t max_outliers, std::size_t k) {
    const std::size_t n = data.rows();
    if (n < 2) throw DomainError("detect_gross: need at least two rows");
    if (max_outliers > n - 2) throw DomainError("detect_gross: require M <= n-2");
    if (k == 0) k = std::max<std::size_t>(1, n / 100);

    GrossReport report;
    report.k = k;
    report.knn_distances = knn_distance(data, k);

    // Rank rows by kNN distance, largest first, ties toward the lower index.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (report.knn_distances[a] != report.knn_distances[b])
            return report.knn_distances[a] > report.knn_distances[b];
        return a < b;
    });

    report.reference_value = report.knn_distances[order[max_outliers]];
    for (std::size_t r = 0; r < max_outliers; ++r)
        if (report.knn_distances[order[r]] > 3.0 * report.reference_value)
            report.gross_indices.push_back(order[r]);
    std::sort(report.gross_indices.begin(), report.gross_indices.end());
    return report;
}

}  // namespace ombc
