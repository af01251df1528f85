#include "ombc/sequencer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ombc {

DissimTrace run_sequence(const DataMatrix& data, std::size_t components, std::size_t max_outliers,
                         InitScheme scheme, int grid_size, double tol, int max_iter) {
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    if (n == 0 || p == 0) throw DomainError("run_sequence: empty data");
    if (max_outliers + components * (p + 2) >= n)
        throw InfeasibleBudget("run_sequence: budget leaves too few points (need M < n - G*(p+2))");

    DissimTrace trace;
    trace.max_outliers = max_outliers;
    trace.components = components;
    trace.steps.resize(max_outliers + 1);

    DataMatrix current = data;
    std::vector<std::size_t> to_input(n);
    for (std::size_t i = 0; i < n; ++i) to_input[i] = i;

    MixtureFit prev_fit;
    std::optional<std::size_t> last_removed_row;  // row index within `current` pre-removal
    bool alive = true;

    for (std::size_t m = 0; m <= max_outliers; ++m) {
        StepRecord& step = trace.steps[m];
        step.m = m;
        step.dissim.aggregated = std::numeric_limits<double>::infinity();
        if (!alive) continue;

        try {
            Matrix init;
            if (m == 0)
                init = hier_init(current, components);
            else
                init = next_init(prev_fit, *last_removed_row, scheme, current);
            MixtureFit fitted = fit(current, init, tol, max_iter);

            step.dissim = step_dissim(current, fitted, grid_size);
            step.params_snapshot = fitted.params;
            step.loglik = fitted.loglik;
            step.fit_ok = true;

            if (m < max_outliers) {
                const std::vector<double> density = mixture_density(current, fitted.params);
                std::size_t lowest = 0;
                for (std::size_t i = 1; i < density.size(); ++i)
                    if (density[i] < density[lowest]) lowest = i;  // ties keep the lowest row

                step.removed_index = to_input[lowest];
                last_removed_row = lowest;
                prev_fit = std::move(fitted);
                current.erase_row(lowest);
                to_input.erase(to_input.begin() + static_cast<std::ptrdiff_t>(lowest));
            }
        } catch (const Error&) {
            // EM failed here; this and all later steps stay invalid.
            alive = false;
        }
    }
    return trace;
}

std::size_t choose_minimum(const DissimTrace& trace) {
    std::optional<std::size_t> best;
    for (std::size_t m = 0; m < trace.steps.size(); ++m) {
        const StepRecord& step = trace.steps[m];
        if (!step.usable()) continue;
        if (!best || step.dissim.aggregated < trace.steps[*best].dissim.aggregated) best = m;
    }
    if (!best) throw NoValidStep("choose_minimum: no usable step in trace");
    return *best;
}

std::size_t choose_backtrack(const DissimTrace& trace, const BacktrackConfig& cfg) {
    std::size_t o = choose_minimum(trace);
    const double d_min = trace.steps[o].dissim.aggregated;
    while (o > 0) {
        const StepRecord& candidate = trace.steps[o - 1];
        if (!candidate.usable()) break;
        const double step_rise =
            (candidate.dissim.aggregated - trace.steps[o].dissim.aggregated) / d_min;
        const double total_rise = (candidate.dissim.aggregated - d_min) / d_min;
        if (step_rise < cfg.alpha && total_rise <= cfg.beta)
            --o;
        else
            break;
    }
    return o;
}

Solution finalize(const DataMatrix& data, const DissimTrace& trace, std::size_t chosen_o,
                  SelectionRule rule) {
    if (chosen_o >= trace.steps.size() || !trace.steps[chosen_o].usable())
        throw InvalidStep("finalize: chosen step is not usable");

    Solution out;
    out.chosen_o = chosen_o;
    out.rule = rule;
    out.final_params = trace.steps[chosen_o].params_snapshot;
    out.loglik = trace.steps[chosen_o].loglik;
    for (std::size_t m = 0; m < chosen_o; ++m)
        out.outlier_indices.push_back(*trace.steps[m].removed_index);

    // Classify the retained rows with one E-step from the stored snapshot;
    // this reproduces the responsibilities of the step-o fit exactly.
    std::vector<bool> is_outlier(data.rows(), false);
    for (std::size_t idx : out.outlier_indices) is_outlier[idx] = true;
    DataMatrix retained(data.rows() - chosen_o, data.cols());
    std::vector<std::size_t> retained_rows;
    retained_rows.reserve(data.rows() - chosen_o);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        if (is_outlier[i]) continue;
        const std::size_t r = retained_rows.size();
        for (std::size_t j = 0; j < data.cols(); ++j) retained(r, j) = data(i, j);
        retained_rows.push_back(i);
    }
    const EStepResult e = estep(retained, out.final_params);

    out.assignments.assign(data.rows(), kOutlierLabel);
    for (std::size_t r = 0; r < retained_rows.size(); ++r) {
        std::size_t best = 0;
        for (std::size_t g = 1; g < out.final_params.components; ++g)
            if (e.resp(r, g) > e.resp(r, best)) best = g;
        out.assignments[retained_rows[r]] = static_cast<int>(best) + 1;
    }
    return out;
}

}  // namespace ombc
