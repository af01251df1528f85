#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ombc/dissim.hpp"
#include "ombc/gmm.hpp"
#include "ombc/init.hpp"

namespace ombc {

/// One entry of the removal sequence: the dissimilarity of the model fitted
/// after m removals, a parameter snapshot, and the row removed next (absent
/// at the final step). `removed_index` refers to the row numbering of the
/// data handed to run_sequence.
struct StepRecord {
    std::size_t m = 0;
    ComponentDissim dissim;
    std::optional<std::size_t> removed_index;
    MixtureParams params_snapshot;
    double loglik = 0.0;
    bool fit_ok = false;

    bool usable() const { return fit_ok && dissim.valid(); }
};

/// The dissimilarity curve: M+1 step records.
struct DissimTrace {
    std::vector<StepRecord> steps;
    std::size_t max_outliers = 0;  // M
    std::size_t components = 0;    // G
};

/// Backtrack thresholds: maximum single-step rise (alpha) and maximum total
/// rise (beta), both as proportions of the minimum dissimilarity.
struct BacktrackConfig {
    double alpha = 0.05;
    double beta = 0.10;
};

/// Which rule produced a Solution.
enum class SelectionRule { Minimum, Backtrack, UserFixed };

/// Sentinel cluster id assigned to outliers; regular assignments are 1..G.
inline constexpr int kOutlierLabel = 0;

/// A finished run: the chosen outlier count, the outliers (row indices of
/// the input data), the model at that step, and hard assignments for every
/// input row.
struct Solution {
    std::size_t chosen_o = 0;
    SelectionRule rule = SelectionRule::Minimum;
    std::vector<std::size_t> outlier_indices;  // first o removed rows, in removal order
    MixtureParams final_params;
    std::vector<int> assignments;  // 1..G, kOutlierLabel for outliers
    double loglik = 0.0;
};

/// Runs the sequential removal loop: fit, score, remove the lowest mixture
/// density point, M times over. The first fit is initialized hierarchically,
/// later fits per `scheme`. An EM failure at step m marks that and all later
/// steps invalid instead of aborting. Requires M < n - G*(p+2).
DissimTrace run_sequence(const DataMatrix& data, std::size_t components, std::size_t max_outliers,
                         InitScheme scheme, int grid_size, double tol = 1e-8, int max_iter = 1000);

/// Smallest m attaining the minimal aggregated dissimilarity among usable
/// steps. Throws NoValidStep when no step is usable.
std::size_t choose_minimum(const DissimTrace& trace);

/// Walks back from the minimum while each step rise stays below alpha and
/// the total rise stays within beta, both relative to the minimum
/// dissimilarity.
std::size_t choose_backtrack(const DissimTrace& trace, const BacktrackConfig& cfg);

/// Materializes the solution for a chosen removal count o: the first o
/// removed rows become outliers and the stored step-o model (already fitted
/// to exactly the remaining rows) classifies everything else.
Solution finalize(const DataMatrix& data, const DissimTrace& trace, std::size_t chosen_o,
                  SelectionRule rule);

}  // namespace ombc
