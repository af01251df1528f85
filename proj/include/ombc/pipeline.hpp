#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ombc/gross.hpp"
#include "ombc/metrics.hpp"
#include "ombc/sequencer.hpp"
#include "ombc/simgen.hpp"

#include "json.hpp"

namespace ombc {

/// User-facing knobs of a fit run; defaults match the method's published
/// settings (T = 10,000; alpha = 0.05; beta = 0.10).
struct RunConfig {
    std::size_t components = 2;        // G
    std::size_t max_outliers = 0;      // M
    InitScheme scheme = InitScheme::Update;
    int grid_size = 10000;             // T
    double alpha = 0.05;
    double beta = 0.10;
    bool gross_enabled = true;
    std::optional<std::size_t> user_o;
    std::uint64_t seed = 1;            // echoed into the report
    double tol = 1e-8;
    int max_iter = 1000;
    std::string rule = "minimum";      // populates the primary assignments file
};

/// Outcome of one selection rule, expressed in the original row indexing of
/// the ingested data (gross outliers included among the outliers).
struct RuleOutcome {
    Solution solution;                       // in post-gross indexing
    std::vector<std::size_t> outlier_rows;   // original indexing, gross first
    std::vector<int> assignments;            // original indexing, 0 = outlier
    std::optional<double> ari;
    std::optional<double> f1;
    std::optional<ConfusionCounts> confusion;
};

/// Everything a fit run produces.
struct RunResult {
    RunConfig config;
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::optional<GrossReport> gross;
    DissimTrace trace;
    std::map<std::string, RuleOutcome> rules;  // "minimum", "backtrack", maybe "user"
    double total_seconds = 0.0;
};

/// The full fit pipeline: optional gross-outlier prefilter, sequential
/// removal loop, both selection rules (plus the user-fixed count if given),
/// and evaluation metrics when ground-truth labels are supplied.
RunResult run_pipeline(const DataMatrix& data, const std::optional<std::vector<int>>& labels,
                       const RunConfig& config);

/// Deterministic JSON report (sorted keys). Row indices are 1-based.
nlohmann::json report_json(const RunResult& result);

/// Writes report.json, assignments.csv, curve.csv, and curve.svg into
/// `out_dir` (created if missing).
void write_run_artifacts(const RunResult& result, const std::string& out_dir);

/// Writes the dissimilarity curve as CSV and as an SVG line plot with the
/// y-axis rescaled so the minimum sits at 1; invalid steps appear as gaps.
/// Markers show the minimum and the backtrack choice under `backtrack`.
void emit_curve(const DissimTrace& trace, const std::string& csv_path,
                const std::string& svg_path, const BacktrackConfig& backtrack = {});

/// One dataset of a benchmark corpus.
struct BenchItem {
    ScenarioSpec scenario;
};

/// Per-dataset benchmark outcome; `error` is set when the run failed.
struct BenchRow {
    std::string scenario_tag;
    std::uint64_t seed = 0;
    std::optional<std::string> error;
    // Per rule: ARI, outlier F1, #FP, #FN, #flagged-outliers.
    std::map<std::string, std::array<double, 5>> stats;
};

/// Runs the corpus (in parallel across datasets), aggregates per-rule means,
/// and returns the rows plus a CSV summary table. Failed runs are recorded
/// and skipped in the aggregation.
struct BenchSummary {
    std::vector<BenchRow> rows;
    std::string summary_csv;
    std::size_t failures = 0;
};
BenchSummary run_bench(const std::vector<BenchItem>& corpus, const RunConfig& config,
                       unsigned threads = 0);

}  // namespace ombc
