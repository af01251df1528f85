// Command-line front end: every numerical result it prints or writes is
// produced by the library; this file only parses flags and moves bytes.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ombc/csv.hpp"
#include "ombc/pipeline.hpp"
#include "ombc/version.hpp"

namespace {

// Exit codes: 0 ok, 1 I/O or unexpected, 2 parse, 3 configuration,
// 4 numerical failure, 5 partial bench failure.
enum ExitCode { kOk = 0, kIoOrOther = 1, kParse = 2, kConfig = 3, kNumerical = 4, kPartial = 5 };

bool use_color() {
    return ::getenv("NO_COLOR") == nullptr && ::isatty(::fileno(stderr)) != 0;
}

void print_error(const std::string& what) {
    if (use_color())
        std::cerr << "\033[31merror:\033[0m " << what << "\n";
    else
        std::cerr << "error: " << what << "\n";
}

int classify_error(const std::exception& e) {
    if (dynamic_cast<const ombc::ParseError*>(&e)) return kParse;
    if (dynamic_cast<const ombc::IoError*>(&e)) return kIoOrOther;
    if (dynamic_cast<const ombc::DomainError*>(&e) ||
        dynamic_cast<const ombc::InfeasibleBudget*>(&e) ||
        dynamic_cast<const ombc::UnknownScenario*>(&e) ||
        dynamic_cast<const ombc::TooFewPoints*>(&e) ||
        dynamic_cast<const ombc::InvalidStep*>(&e))
        return kConfig;
    if (dynamic_cast<const ombc::Error*>(&e)) return kNumerical;
    return kIoOrOther;
}

struct FitFlags {
    std::string input;
    std::string out_dir = "ombc-out";
    ombc::RunConfig config;
    bool no_gross = false;
    long long user_o = -1;
    std::string scheme = "update";
};

void add_fit_options(CLI::App& cmd, FitFlags& flags) {
    cmd.add_option("input", flags.input, "Input CSV (header row; optional 'label' column)")
        ->required();
    cmd.add_option("-G,--components", flags.config.components, "Number of mixture components")
        ->required();
    cmd.add_option("-M,--max-outliers", flags.config.max_outliers,
                   "Maximum number of sequential outliers")
        ->required();
    cmd.add_option("--scheme", flags.scheme, "Initialization scheme: update|reinit")
        ->check(CLI::IsMember({"update", "reinit"}));
    cmd.add_option("-T,--grid-size", flags.config.grid_size, "CDF comparison grid size");
    cmd.add_option("--alpha", flags.config.alpha, "Backtrack: max step rise");
    cmd.add_option("--beta", flags.config.beta, "Backtrack: max total rise");
    cmd.add_flag("--no-gross", flags.no_gross, "Skip the gross-outlier prefilter");
    cmd.add_option("--user-o", flags.user_o, "Also finalize a user-chosen outlier count");
    cmd.add_option("--seed", flags.config.seed, "Seed echoed into the report");
    cmd.add_option("--tol", flags.config.tol, "EM relative log-likelihood tolerance");
    cmd.add_option("--max-iter", flags.config.max_iter, "EM iteration cap");
    cmd.add_option("--rule", flags.config.rule, "Rule for assignments.csv")
        ->check(CLI::IsMember({"minimum", "backtrack", "user"}));
    cmd.add_option("-o,--out", flags.out_dir, "Output directory");
}

ombc::RunConfig materialize(FitFlags& flags) {
    flags.config.gross_enabled = !flags.no_gross;
    flags.config.scheme =
        flags.scheme == "reinit" ? ombc::InitScheme::Reinit : ombc::InitScheme::Update;
    if (flags.user_o >= 0) flags.config.user_o = static_cast<std::size_t>(flags.user_o);
    return flags.config;
}

int cmd_fit(FitFlags& flags) {
    const ombc::CsvData csv = ombc::read_csv(flags.input);
    const ombc::RunConfig config = materialize(flags);
    const ombc::RunResult result = ombc::run_pipeline(csv.data, csv.labels, config);
    ombc::write_run_artifacts(result, flags.out_dir);

    const auto& chosen = result.rules.at(result.rules.count(config.rule) ? config.rule
                                                                         : std::string("minimum"));
    std::cout << "rows=" << result.n_rows << " rule=" << config.rule
              << " outliers=" << chosen.outlier_rows.size() << " (sequential="
              << chosen.solution.chosen_o << ", gross="
              << (result.gross ? result.gross->gross_indices.size() : 0) << ")\n"
              << "report: " << (std::filesystem::path(flags.out_dir) / "report.json").string()
              << "\n";
    return kOk;
}

int cmd_gross(const std::string& input, std::size_t max_outliers, std::size_t k,
              const std::string& out_dir) {
    const ombc::CsvData csv = ombc::read_csv(input);
    const ombc::GrossReport report = ombc::detect_gross(csv.data, max_outliers, k);
    std::filesystem::create_directories(out_dir);
    nlohmann::json j;
    j["k"] = report.k;
    j["reference_value"] = report.reference_value;
    std::vector<std::size_t> rows;
    for (std::size_t r : report.gross_indices) rows.push_back(r + 1);
    j["rows"] = rows;
    j["knn_distances"] = report.knn_distances;
    std::ofstream out(std::filesystem::path(out_dir) / "gross.json", std::ios::binary);
    out << j.dump(2) << "\n";
    std::cout << "gross outliers: " << rows.size() << "\n";
    return kOk;
}

void print_spec(const ombc::ScenarioSpec& spec) {
    nlohmann::json j;
    j["tag"] = spec.tag;
    j["dim"] = spec.dim;
    j["proportions"] = spec.proportions;
    j["n_obs"] = spec.n_obs;
    j["n_outliers"] = spec.n_outliers;
    j["seed"] = spec.seed;
    std::vector<std::vector<double>> means;
    for (std::size_t g = 0; g < spec.means.rows(); ++g)
        means.emplace_back(spec.means.row(g).begin(), spec.means.row(g).end());
    j["means"] = means;
    std::vector<std::vector<double>> covs;
    for (const ombc::Matrix& cov : spec.covariances) covs.push_back(cov.data());
    j["covariances_rowmajor"] = covs;
    if (const auto* reject = std::get_if<ombc::RejectEllipsoids>(&spec.outlier_mode))
        j["outlier_mode"] = {{"kind", "reject_ellipsoids"}, {"level", reject->level}};
    else
        j["outlier_mode"] = {{"kind", "plain_box"},
                             {"expand_factor", std::get<ombc::PlainBox>(spec.outlier_mode)
                                                   .expand_factor}};
    std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"outlierMBC: sequential outlier identification for Gaussian mixture clustering"};
    app.set_version_flag("--version", std::string(ombc::kVersion));
    app.require_subcommand(1);

    // fit
    FitFlags fit_flags;
    CLI::App* fit = app.add_subcommand("fit", "Cluster a CSV and identify outliers");
    add_fit_options(*fit, fit_flags);

    // simulate
    CLI::App* simulate = app.add_subcommand("simulate", "Generate benchmark datasets");
    simulate->require_subcommand(1);

    std::size_t sim_dim = 2;
    std::string sim_props = "equal";
    int sim_model = 1;
    std::uint64_t sim_seed = 1;
    std::string sim_out = "dataset.csv";
    CLI::App* sim_tclust = simulate->add_subcommand("tclust", "Three-Gaussian benchmark design");
    sim_tclust->add_option("--dim", sim_dim, "Dimension: 2 or 6");
    sim_tclust->add_option("--props", sim_props, "Proportions: equal|unequal")
        ->check(CLI::IsMember({"equal", "unequal"}));
    sim_tclust->add_option("--model", sim_model, "Covariance model 1..5");
    sim_tclust->add_option("--seed", sim_seed, "Random seed");
    sim_tclust->add_option("-o,--out", sim_out, "Output CSV path");

    std::string ill_size = "small";
    CLI::App* sim_ill = simulate->add_subcommand("illustrative", "Built-in illustrative design");
    sim_ill->add_option("--size", ill_size, "small|large")
        ->check(CLI::IsMember({"small", "large"}));
    sim_ill->add_option("--seed", sim_seed, "Random seed");
    sim_ill->add_option("-o,--out", sim_out, "Output CSV path");

    std::string inject_input;
    std::size_t inject_count = 0;
    double inject_expand = 2.0;
    CLI::App* sim_inject =
        simulate->add_subcommand("inject-box", "Append uniform box outliers to a CSV");
    sim_inject->add_option("--input", inject_input, "Input CSV")->required();
    sim_inject->add_option("--n-outliers", inject_count, "Number of outliers to add")->required();
    sim_inject->add_option("--expand", inject_expand, "Box expansion factor");
    sim_inject->add_option("--seed", sim_seed, "Random seed");
    sim_inject->add_option("-o,--out", sim_out, "Output CSV path");

    // bench
    FitFlags bench_flags;
    bench_flags.config.components = 3;  // the benchmark family is three-component
    std::vector<std::size_t> bench_dims{2};
    std::vector<std::string> bench_props{"equal", "unequal"};
    std::vector<int> bench_models{1, 2, 3, 4, 5};
    std::vector<std::uint64_t> bench_seeds{1, 2};
    std::string bench_out = "bench-out";
    unsigned bench_threads = 0;
    CLI::App* bench = app.add_subcommand("bench", "Run the simulation benchmark corpus");
    bench->add_option("--dims", bench_dims, "Dimensions (2 and/or 6)")->delimiter(',');
    bench->add_option("--props", bench_props, "Proportion settings")->delimiter(',');
    bench->add_option("--models", bench_models, "Covariance models")->delimiter(',');
    bench->add_option("--seeds", bench_seeds, "Seeds")->delimiter(',');
    bench->add_option("-G,--components", bench_flags.config.components, "Mixture components");
    bench->add_option("-M,--max-outliers", bench_flags.config.max_outliers, "Sequential budget")
        ->required();
    bench->add_option("--scheme", bench_flags.scheme, "update|reinit")
        ->check(CLI::IsMember({"update", "reinit"}));
    bench->add_option("-T,--grid-size", bench_flags.config.grid_size, "Grid size");
    bench->add_option("--alpha", bench_flags.config.alpha, "Backtrack step rise");
    bench->add_option("--beta", bench_flags.config.beta, "Backtrack total rise");
    bench->add_flag("--no-gross", bench_flags.no_gross, "Skip gross prefilter");
    bench->add_option("--threads", bench_threads, "Worker threads (0 = auto)");
    bench->add_option("-o,--out", bench_out, "Output directory");

    // gross
    std::string gross_input;
    std::size_t gross_m = 0;
    std::size_t gross_k = 0;
    std::string gross_out = "ombc-out";
    CLI::App* gross = app.add_subcommand("gross", "Gross-outlier diagnostic only");
    gross->add_option("input", gross_input, "Input CSV")->required();
    gross->add_option("-M,--max-outliers", gross_m, "Candidate budget")->required();
    gross->add_option("-k,--k", gross_k, "kNN k (default 1% of n)");
    gross->add_option("-o,--out", gross_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fit->parsed()) return cmd_fit(fit_flags);
        if (gross->parsed()) return cmd_gross(gross_input, gross_m, gross_k, gross_out);

        if (simulate->parsed()) {
            ombc::LabeledData dataset;
            if (sim_tclust->parsed()) {
                const ombc::ScenarioSpec spec =
                    ombc::tclust_scenario(sim_dim, sim_props, sim_model, sim_seed);
                print_spec(spec);
                dataset = ombc::generate(spec);
            } else if (sim_ill->parsed()) {
                const ombc::ScenarioSpec spec = ombc::illustrative_scenario(ill_size, sim_seed);
                print_spec(spec);
                dataset = ombc::generate(spec);
            } else {
                const ombc::CsvData csv = ombc::read_csv(inject_input);
                const ombc::Matrix outliers =
                    ombc::sample_outliers_box(inject_count, csv.data, inject_expand, sim_seed);
                dataset.data = ombc::Matrix(csv.data.rows() + outliers.rows(), csv.data.cols());
                for (std::size_t i = 0; i < csv.data.rows(); ++i) {
                    for (std::size_t j = 0; j < csv.data.cols(); ++j)
                        dataset.data(i, j) = csv.data(i, j);
                    dataset.labels.push_back(csv.labels ? (*csv.labels)[i] : 1);
                }
                for (std::size_t i = 0; i < outliers.rows(); ++i) {
                    for (std::size_t j = 0; j < outliers.cols(); ++j)
                        dataset.data(csv.data.rows() + i, j) = outliers(i, j);
                    dataset.labels.push_back(0);
                }
            }
            ombc::write_labeled_csv(sim_out, dataset);
            std::cout << "wrote " << dataset.data.rows() << " rows to " << sim_out << "\n";
            return kOk;
        }

        if (bench->parsed()) {
            const ombc::RunConfig config = materialize(bench_flags);
            std::vector<ombc::BenchItem> corpus;
            for (std::size_t dim : bench_dims)
                for (const std::string& props : bench_props)
                    for (int model : bench_models)
                        for (std::uint64_t seed : bench_seeds)
                            corpus.push_back({ombc::tclust_scenario(dim, props, model, seed)});
            const ombc::BenchSummary summary = ombc::run_bench(corpus, config, bench_threads);

            std::filesystem::create_directories(bench_out);
            std::ofstream csv(std::filesystem::path(bench_out) / "summary.csv",
                              std::ios::binary);
            csv << summary.summary_csv;
            std::ofstream rows(std::filesystem::path(bench_out) / "runs.csv", std::ios::binary);
            rows << "scenario,seed,status,rule,ari,outlier_f1,fp,fn,outliers\n";
            for (const ombc::BenchRow& row : summary.rows) {
                if (row.error) {
                    rows << row.scenario_tag << "," << row.seed << ",failed,,,,,,\n";
                    continue;
                }
                for (const auto& [rule, stats] : row.stats) {
                    rows << row.scenario_tag << "," << row.seed << ",ok," << rule;
                    for (double s : stats) rows << "," << ombc::format_double(s);
                    rows << "\n";
                }
            }
            std::cout << summary.summary_csv;
            if (summary.failures > 0) {
                print_error(std::to_string(summary.failures) + " of " +
                            std::to_string(summary.rows.size()) + " runs failed");
                return kPartial;
            }
            return kOk;
        }
    } catch (const std::exception& e) {
        print_error(e.what());
        return classify_error(e);
    }
    return kOk;
}
