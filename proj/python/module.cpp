// Python bindings for the main operations: fit pipeline, simulation,
// gross-outlier screen, and the numerical primitives worth poking from a
// notebook.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ombc/csv.hpp"
#include "ombc/metrics.hpp"
#include "ombc/pipeline.hpp"
#include "ombc/version.hpp"

namespace py = pybind11;

namespace {

ombc::Matrix to_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) throw py::value_error("expected a 2-D array");
    ombc::Matrix m(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)));
    std::copy(arr.data(), arr.data() + arr.size(), m.data().begin());
    return m;
}

py::array_t<double> to_array(const ombc::Matrix& m) {
    py::array_t<double> arr({m.rows(), m.cols()});
    std::copy(m.data().begin(), m.data().end(), arr.mutable_data());
    return arr;
}

py::dict outcome_dict(const ombc::RuleOutcome& outcome) {
    py::dict d;
    d["o"] = outcome.solution.chosen_o;
    d["outlier_rows"] = outcome.outlier_rows;  // 0-based
    d["assignments"] = outcome.assignments;
    if (outcome.ari) {
        d["ari"] = *outcome.ari;
        d["outlier_f1"] = *outcome.f1;
        d["fp"] = outcome.confusion->fp;
        d["fn"] = outcome.confusion->fn;
    }
    return d;
}

py::dict fit(const py::array_t<double, py::array::c_style | py::array::forcecast>& data,
             std::size_t components, std::size_t max_outliers,
             const std::optional<std::vector<int>>& labels, const std::string& scheme,
             int grid_size, double alpha, double beta, bool gross, std::optional<std::size_t> user_o,
             double tol, int max_iter) {
    ombc::RunConfig config;
    config.components = components;
    config.max_outliers = max_outliers;
    config.scheme = scheme == "reinit" ? ombc::InitScheme::Reinit : ombc::InitScheme::Update;
    config.grid_size = grid_size;
    config.alpha = alpha;
    config.beta = beta;
    config.gross_enabled = gross;
    config.user_o = user_o;
    config.tol = tol;
    config.max_iter = max_iter;

    const ombc::RunResult result = ombc::run_pipeline(to_matrix(data), labels, config);

    py::dict out;
    for (const auto& [name, outcome] : result.rules) out[name.c_str()] = outcome_dict(outcome);
    py::list curve;
    for (const auto& step : result.trace.steps) {
        py::dict s;
        s["m"] = step.m;
        s["valid"] = step.usable();
        if (step.usable()) {
            s["dissim"] = step.dissim.aggregated;
            s["per_component"] = step.dissim.per_component;
        }
        curve.append(s);
    }
    out["curve"] = curve;
    if (result.gross) {
        py::dict g;
        g["k"] = result.gross->k;
        g["reference_value"] = result.gross->reference_value;
        g["rows"] = result.gross->gross_indices;
        out["gross"] = g;
    }
    return out;
}

py::tuple simulate_tclust(std::size_t dim, const std::string& props, int model,
                          std::uint64_t seed) {
    const ombc::LabeledData d = ombc::generate(ombc::tclust_scenario(dim, props, model, seed));
    return py::make_tuple(to_array(d.data), d.labels);
}

py::tuple simulate_illustrative(const std::string& size, std::uint64_t seed) {
    const ombc::LabeledData d = ombc::generate(ombc::illustrative_scenario(size, seed));
    return py::make_tuple(to_array(d.data), d.labels);
}

}  // namespace

PYBIND11_MODULE(_outliermbc, m) {
    m.doc() = "Sequential outlier identification for Gaussian mixture clustering";
    m.attr("__version__") = ombc::kVersion;

    m.def("fit", &fit, py::arg("data"), py::arg("components"), py::arg("max_outliers"),
          py::arg("labels") = std::nullopt, py::arg("scheme") = "update",
          py::arg("grid_size") = 10000, py::arg("alpha") = 0.05, py::arg("beta") = 0.10,
          py::arg("gross") = true, py::arg("user_o") = std::nullopt, py::arg("tol") = 1e-8,
          py::arg("max_iter") = 1000,
          "Run the full pipeline; returns per-rule solutions, the dissimilarity curve, "
          "and the gross-outlier report. Row indices are 0-based.");

    m.def("simulate_tclust", &simulate_tclust, py::arg("dim"), py::arg("props"), py::arg("model"),
          py::arg("seed"), "Simulate one benchmark dataset; returns (data, labels).");
    m.def("simulate_illustrative", &simulate_illustrative, py::arg("size"), py::arg("seed"),
          "Simulate the built-in illustrative dataset; returns (data, labels).");

    m.def(
        "beta_cdf",
        [](double y, double a, double b) { return ombc::beta_cdf(y, ombc::BetaRef{a, b}); },
        py::arg("y"), py::arg("a"), py::arg("b"));
    m.def("chisq_quantile", &ombc::chisq_quantile, py::arg("prob"), py::arg("dof"));
    m.def(
        "mahalanobis_sq",
        [](const std::vector<double>& x, const std::vector<double>& mu,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& cov) {
            return ombc::mahalanobis_sq(x, mu, to_matrix(cov));
        },
        py::arg("x"), py::arg("mu"), py::arg("cov"));
    m.def(
        "knn_distance",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& data,
           std::size_t k) { return ombc::knn_distance(to_matrix(data), k); },
        py::arg("data"), py::arg("k"));
    m.def(
        "detect_gross",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& data,
           std::size_t max_outliers, std::size_t k) {
            const ombc::GrossReport r = ombc::detect_gross(to_matrix(data), max_outliers, k);
            py::dict d;
            d["k"] = r.k;
            d["reference_value"] = r.reference_value;
            d["rows"] = r.gross_indices;
            d["knn_distances"] = r.knn_distances;
            return d;
        },
        py::arg("data"), py::arg("max_outliers"), py::arg("k") = 0);
    m.def("adjusted_rand_index", &ombc::adjusted_rand_index, py::arg("a"), py::arg("b"));
    m.def(
        "outlier_f1",
        [](const std::vector<std::size_t>& predicted, const std::vector<std::size_t>& truth,
           std::size_t n) {
            auto [f1, c] = ombc::outlier_f1(predicted, truth, n);
            py::dict d;
            d["f1"] = f1;
            d["tp"] = c.tp;
            d["fp"] = c.fp;
            d["fn"] = c.fn;
            d["tn"] = c.tn;
            return d;
        },
        py::arg("predicted"), py::arg("truth"), py::arg("n"));
}
