#include "ombc/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "ombc/csv.hpp"
#include "ombc/version.hpp"

namespace ombc {

namespace {

RuleOutcome build_outcome(const DataMatrix& data, const DissimTrace& trace, std::size_t chosen_o,
                          SelectionRule rule, const std::vector<std::size_t>& row_map,
                          const std::vector<std::size_t>& gross_rows, std::size_t n_original,
                          const std::optional<std::vector<int>>& labels) {
    RuleOutcome out;
    out.solution = finalize(data, trace, chosen_o, rule);

    out.outlier_rows = gross_rows;
    for (std::size_t idx : out.solution.outlier_indices) out.outlier_rows.push_back(row_map[idx]);

    out.assignments.assign(n_original, kOutlierLabel);
    for (std::size_t i = 0; i < row_map.size(); ++i)
        out.assignments[row_map[i]] = out.solution.assignments[i];
    for (std::size_t row : gross_rows) out.assignments[row] = kOutlierLabel;

    if (labels) {
        out.ari = adjusted_rand_index(out.assignments, *labels);
        std::vector<std::size_t> truth;
        for (std::size_t i = 0; i < labels->size(); ++i)
            if ((*labels)[i] == kOutlierLabel) truth.push_back(i);
        auto [f1, confusion] = outlier_f1(out.outlier_rows, truth, n_original);
        out.f1 = f1;
        out.confusion = confusion;
    }
    return out;
}

nlohmann::json outcome_json(const RuleOutcome& outcome, std::size_t components) {
    nlohmann::json j;
    j["o"] = outcome.solution.chosen_o;
    j["total_outliers"] = outcome.outlier_rows.size();
    std::vector<std::size_t> rows_1based;
    for (std::size_t r : outcome.outlier_rows) rows_1based.push_back(r + 1);
    j["outlier_rows"] = rows_1based;
    std::vector<std::size_t> sizes(components, 0);
    for (int a : outcome.assignments)
        if (a != kOutlierLabel) ++sizes[static_cast<std::size_t>(a - 1)];
    j["cluster_sizes"] = sizes;
    j["loglik"] = outcome.solution.loglik;
    if (outcome.ari) {
        j["ari"] = *outcome.ari;
        j["outlier_f1"] = *outcome.f1;
        j["fp"] = outcome.confusion->fp;
        j["fn"] = outcome.confusion->fn;
        j["tp"] = outcome.confusion->tp;
    }
    return j;
}

std::string scheme_name(InitScheme scheme) {
    return scheme == InitScheme::Update ? "update" : "reinit";
}

}  // namespace

RunResult run_pipeline(const DataMatrix& data, const std::optional<std::vector<int>>& labels,
                       const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    if (labels && labels->size() != data.rows())
        throw DomainError("run_pipeline: label length differs from row count");

    RunResult result;
    result.config = config;
    result.n_rows = data.rows();
    result.n_cols = data.cols();

    // Gross outliers are removed up front and do not consume the sequential
    // budget; their indices stay in the original numbering.
    std::vector<std::size_t> row_map;
    DataMatrix working;
    std::vector<std::size_t> gross_rows;
    if (config.gross_enabled) {
        result.gross = detect_gross(data, config.max_outliers);
        gross_rows = result.gross->gross_indices;
    }
    if (gross_rows.empty()) {
        working = data;
        row_map.resize(data.rows());
        for (std::size_t i = 0; i < data.rows(); ++i) row_map[i] = i;
    } else {
        std::vector<char> is_gross(data.rows(), 0);
        for (std::size_t r : gross_rows) is_gross[r] = 1;
        working = DataMatrix(data.rows() - gross_rows.size(), data.cols());
        for (std::size_t i = 0; i < data.rows(); ++i) {
            if (is_gross[i]) continue;
            const std::size_t r = row_map.size();
            for (std::size_t j = 0; j < data.cols(); ++j) working(r, j) = data(i, j);
            row_map.push_back(i);
        }
    }

    result.trace = run_sequence(working, config.components, config.max_outliers, config.scheme,
                                config.grid_size, config.tol, config.max_iter);

    const std::size_t o_min = choose_minimum(result.trace);
    const std::size_t o_bt =
        choose_backtrack(result.trace, BacktrackConfig{config.alpha, config.beta});
    result.rules.emplace("minimum",
                         build_outcome(working, result.trace, o_min, SelectionRule::Minimum,
                                       row_map, gross_rows, data.rows(), labels));
    result.rules.emplace("backtrack",
                         build_outcome(working, result.trace, o_bt, SelectionRule::Backtrack,
                                       row_map, gross_rows, data.rows(), labels));
    if (config.user_o)
        result.rules.emplace("user",
                             build_outcome(working, result.trace, *config.user_o,
                                           SelectionRule::UserFixed, row_map, gross_rows,
                                           data.rows(), labels));

    result.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

nlohmann::json report_json(const RunResult& result) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool_version"] = kVersion;

    nlohmann::json cfg;
    cfg["components"] = result.config.components;
    cfg["max_outliers"] = result.config.max_outliers;
    cfg["scheme"] = scheme_name(result.config.scheme);
    cfg["grid_size"] = result.config.grid_size;
    cfg["alpha"] = result.config.alpha;
    cfg["beta"] = result.config.beta;
    cfg["gross_enabled"] = result.config.gross_enabled;
    cfg["user_o"] = result.config.user_o ? nlohmann::json(*result.config.user_o)
                                         : nlohmann::json(nullptr);
    cfg["seed"] = result.config.seed;
    cfg["tol"] = result.config.tol;
    cfg["max_iter"] = result.config.max_iter;
    cfg["rule"] = result.config.rule;
    j["config"] = cfg;

    j["n_rows"] = result.n_rows;
    j["n_cols"] = result.n_cols;

    nlohmann::json gross;
    gross["enabled"] = result.gross.has_value();
    if (result.gross) {
        gross["k"] = result.gross->k;
        gross["reference_value"] = result.gross->reference_value;
        std::vector<std::size_t> rows_1based;
        for (std::size_t r : result.gross->gross_indices) rows_1based.push_back(r + 1);
        gross["rows"] = rows_1based;
    }
    j["gross"] = gross;

    nlohmann::json curve = nlohmann::json::array();
    for (const StepRecord& step : result.trace.steps) {
        nlohmann::json s;
        s["m"] = step.m;
        s["valid"] = step.usable();
        if (step.usable()) {
            s["dissim"] = step.dissim.aggregated;
            s["per_component"] = step.dissim.per_component;
            s["loglik"] = step.loglik;
        }
        curve.push_back(s);
    }
    j["curve"] = curve;

    nlohmann::json rules;
    for (const auto& [name, outcome] : result.rules)
        rules[name] = outcome_json(outcome, result.config.components);
    j["solutions"] = rules;

    j["timings"] = {{"total_seconds", result.total_seconds}};
    return j;
}

void emit_curve(const DissimTrace& trace, const std::string& csv_path,
                const std::string& svg_path, const BacktrackConfig& backtrack) {
    // CSV: one row per step; invalid steps keep their flag and empty values.
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw IoError("cannot write file: " + csv_path);
    csv << "m,dissim,valid";
    for (std::size_t g = 1; g <= trace.components; ++g) csv << ",comp" << g;
    csv << "\n";
    for (const StepRecord& step : trace.steps) {
        csv << step.m << ",";
        if (step.usable()) {
            csv << format_double(step.dissim.aggregated) << ",1";
            for (double d : step.dissim.per_component) csv << "," << format_double(d);
        } else {
            csv << ",0";
            for (std::size_t g = 0; g < trace.components; ++g) csv << ",";
        }
        csv << "\n";
    }
    if (!csv) throw IoError("failed while writing: " + csv_path);

    // SVG: curve rescaled so the minimum sits at 1, with markers at the
    // minimum and backtrack choices; invalid steps break the polyline.
    std::optional<std::size_t> o_min, o_bt;
    try {
        o_min = choose_minimum(trace);
        o_bt = choose_backtrack(trace, backtrack);
    } catch (const NoValidStep&) {
    }
    const double d_min = o_min ? trace.steps[*o_min].dissim.aggregated : 1.0;

    double y_max = 1.0;
    for (const StepRecord& step : trace.steps)
        if (step.usable()) y_max = std::max(y_max, step.dissim.aggregated / d_min);

    const double width = 800.0, height = 500.0;
    const double left = 70.0, right = 20.0, top = 20.0, bottom = 50.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    const double m_max = static_cast<double>(trace.steps.size() - 1);
    auto x_of = [&](double m) { return left + (m_max > 0 ? m / m_max : 0.5) * plot_w; };
    auto y_of = [&](double v) {
        const double span = std::max(y_max - 1.0, 1e-9);
        return top + (1.0 - (v - 1.0) / span) * plot_h;
    };

    std::ofstream svg(svg_path, std::ios::binary);
    if (!svg) throw IoError("cannot write file: " + svg_path);
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' viewBox='0 0 " << width << " " << height << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";
    svg << "<line x1='" << left << "' y1='" << top + plot_h << "' x2='" << left + plot_w
        << "' y2='" << top + plot_h << "' stroke='black'/>\n";
    svg << "<line x1='" << left << "' y1='" << top << "' x2='" << left << "' y2='"
        << top + plot_h << "' stroke='black'/>\n";
    svg << "<text x='" << left + plot_w / 2 << "' y='" << height - 12
        << "' text-anchor='middle' font-size='14'>removed observations m</text>\n";
    svg << "<text x='16' y='" << top + plot_h / 2
        << "' text-anchor='middle' font-size='14' transform='rotate(-90 16 " << top + plot_h / 2
        << ")'>dissimilarity (min = 1)</text>\n";

    const std::size_t m_stride = std::max<std::size_t>(1, trace.steps.size() / 8);
    for (std::size_t m = 0; m < trace.steps.size(); m += m_stride) {
        const double x = x_of(static_cast<double>(m));
        svg << "<line x1='" << format_double(x) << "' y1='" << top + plot_h << "' x2='"
            << format_double(x) << "' y2='" << top + plot_h + 5 << "' stroke='black'/>\n";
        svg << "<text x='" << format_double(x) << "' y='" << top + plot_h + 20
            << "' text-anchor='middle' font-size='12'>" << m << "</text>\n";
    }
    for (const double tick : {1.0, y_max}) {
        const double y = y_of(tick);
        svg << "<line x1='" << left - 5 << "' y1='" << format_double(y) << "' x2='" << left
            << "' y2='" << format_double(y) << "' stroke='black'/>\n";
        svg << "<text x='" << left - 8 << "' y='" << format_double(y + 4)
            << "' text-anchor='end' font-size='12'>" << format_double(std::round(tick * 100) / 100)
            << "</text>\n";
    }

    // Polyline segments over runs of valid steps.
    std::ostringstream points;
    bool in_segment = false;
    auto flush_segment = [&]() {
        if (in_segment) svg << "<polyline fill='none' stroke='steelblue' stroke-width='1.5' points='"
                            << points.str() << "'/>\n";
        points.str("");
        in_segment = false;
    };
    for (const StepRecord& step : trace.steps) {
        if (!step.usable()) {
            flush_segment();
            continue;
        }
        const double v = step.dissim.aggregated / d_min;
        points << format_double(x_of(static_cast<double>(step.m))) << ","
               << format_double(y_of(v)) << " ";
        in_segment = true;
    }
    flush_segment();

    auto marker = [&](std::size_t m, const char* color, const char* label) {
        const double v = trace.steps[m].dissim.aggregated / d_min;
        svg << "<circle cx='" << format_double(x_of(static_cast<double>(m))) << "' cy='"
            << format_double(y_of(v)) << "' r='5' fill='" << color << "'/>\n";
        svg << "<text x='" << format_double(x_of(static_cast<double>(m))) << "' y='"
            << format_double(y_of(v) - 10.0) << "' text-anchor='middle' font-size='12'>" << label
            << "=" << m << "</text>\n";
    };
    if (o_bt && o_min && *o_bt != *o_min) marker(*o_bt, "darkorange", "backtrack");
    if (o_min) marker(*o_min, "crimson", "min");
    svg << "</svg>\n";
    if (!svg) throw IoError("failed while writing: " + svg_path);
}

void write_run_artifacts(const RunResult& result, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);

    std::ofstream report(dir / "report.json", std::ios::binary);
    if (!report) throw IoError("cannot write report.json in " + out_dir);
    report << report_json(result).dump(2) << "\n";

    const RuleOutcome& primary = result.rules.at(
        result.rules.count(result.config.rule) ? result.config.rule : std::string("minimum"));
    std::ofstream assignments(dir / "assignments.csv", std::ios::binary);
    if (!assignments) throw IoError("cannot write assignments.csv in " + out_dir);
    assignments << "index,cluster\n";
    for (std::size_t i = 0; i < primary.assignments.size(); ++i)
        assignments << (i + 1) << "," << primary.assignments[i] << "\n";

    emit_curve(result.trace, (dir / "curve.csv").string(), (dir / "curve.svg").string(),
               BacktrackConfig{result.config.alpha, result.config.beta});
}

BenchSummary run_bench(const std::vector<BenchItem>& corpus, const RunConfig& config,
                       unsigned threads) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    BenchSummary summary;
    summary.rows.resize(corpus.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= corpus.size()) return;
            BenchRow& row = summary.rows[i];
            row.scenario_tag = corpus[i].scenario.tag;
            row.seed = corpus[i].scenario.seed;
            try {
                const LabeledData dataset = generate(corpus[i].scenario);
                const RunResult run = run_pipeline(dataset.data, dataset.labels, config);
                for (const auto& [name, outcome] : run.rules) {
                    row.stats[name] = {*outcome.ari, *outcome.f1,
                                       static_cast<double>(outcome.confusion->fp),
                                       static_cast<double>(outcome.confusion->fn),
                                       static_cast<double>(outcome.outlier_rows.size())};
                }
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    std::map<std::string, std::array<double, 5>> totals;
    std::size_t successes = 0;
    for (const BenchRow& row : summary.rows) {
        if (row.error) {
            ++summary.failures;
            continue;
        }
        ++successes;
        for (const auto& [name, stats] : row.stats) {
            auto& acc = totals[name];
            for (std::size_t s = 0; s < stats.size(); ++s) acc[s] += stats[s];
        }
    }

    std::ostringstream csv;
    csv << "method,mean_ari,mean_outlier_f1,mean_fp,mean_fn,mean_outliers,datasets,failures\n";
    for (const auto& [name, acc] : totals) {
        csv << name;
        for (double total : acc) csv << "," << format_double(total / successes);
        csv << "," << successes << "," << summary.failures << "\n";
    }
    if (totals.empty()) csv << "";  // header-only summary for an empty corpus
    summary.summary_csv = csv.str();
    return summary;
}

}  // namespace ombc
