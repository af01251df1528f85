#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "ombc/gmm.hpp"
#include "ombc/init.hpp"

using namespace ombc;

namespace {

DataMatrix gaussian_blob(std::mt19937_64& rng, std::size_t n, double mx, double my,
                         double sd = 1.0) {
    std::normal_distribution<double> gauss(0.0, sd);
    DataMatrix data(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        data(i, 0) = mx + gauss(rng);
        data(i, 1) = my + gauss(rng);
    }
    return data;
}

MixtureParams single_standard_normal(std::size_t p) {
    MixtureParams params;
    params.components = 1;
    params.weights = {1.0};
    params.means = Matrix(1, p);
    params.covariances = {Matrix::identity(p)};
    return params;
}

}  // namespace

TEST_CASE("estep with one component gives unit responsibilities and the exact loglik") {
    std::mt19937_64 rng(1);
    const DataMatrix data = gaussian_blob(rng, 50, 0.0, 0.0);
    const MixtureParams params = single_standard_normal(2);
    const EStepResult e = estep(data, params);
    double expected = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
        CHECK(e.resp(i, 0) == doctest::Approx(1.0));
        const double q = data(i, 0) * data(i, 0) + data(i, 1) * data(i, 1);
        expected += -std::log(2.0 * std::numbers::pi) - 0.5 * q;
    }
    CHECK(e.loglik == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("estep with two identical components splits responsibility evenly") {
    std::mt19937_64 rng(2);
    const DataMatrix data = gaussian_blob(rng, 30, 1.0, -1.0);
    MixtureParams params;
    params.components = 2;
    params.weights = {0.5, 0.5};
    params.means = Matrix(2, 2, 0.0);
    params.covariances = {Matrix::identity(2), Matrix::identity(2)};
    const EStepResult e = estep(data, params);
    for (std::size_t i = 0; i < data.rows(); ++i) {
        CHECK(e.resp(i, 0) == doctest::Approx(0.5));
        CHECK(e.resp(i, 1) == doctest::Approx(0.5));
    }
}

TEST_CASE("estep density ratio in one dimension") {
    DataMatrix x(1, 1);
    x(0, 0) = 0.0;
    MixtureParams params;
    params.components = 2;
    params.weights = {0.5, 0.5};
    params.means = Matrix(2, 1);
    params.means(1, 0) = 10.0;
    params.covariances = {Matrix::identity(1), Matrix::identity(1)};
    const EStepResult e = estep(x, params);
    CHECK(e.resp(0, 0) == doctest::Approx(1.0 / (1.0 + std::exp(-50.0))).epsilon(1e-14));
}

TEST_CASE("mstep with G=1 reduces to the sample MLE") {
    std::mt19937_64 rng(3);
    const DataMatrix data = gaussian_blob(rng, 40, 2.0, -3.0, 1.5);
    const Matrix resp(40, 1, 1.0);
    const MixtureParams params = mstep(data, resp);
    CHECK(params.weights[0] == doctest::Approx(1.0));
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < 40; ++i) {
        mx += data(i, 0);
        my += data(i, 1);
    }
    mx /= 40.0;
    my /= 40.0;
    CHECK(params.means(0, 0) == doctest::Approx(mx).epsilon(1e-12));
    CHECK(params.means(0, 1) == doctest::Approx(my).epsilon(1e-12));
    double sxx = 0.0;
    for (std::size_t i = 0; i < 40; ++i) sxx += (data(i, 0) - mx) * (data(i, 0) - mx);
    CHECK(params.covariances[0](0, 0) == doctest::Approx(sxx / 40.0).epsilon(1e-12));
}

TEST_CASE("mstep matches an independent weighted-moments computation") {
    std::mt19937_64 rng(4);
    const DataMatrix data = gaussian_blob(rng, 10, 0.0, 0.0);
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    Matrix resp(10, 2);
    for (std::size_t i = 0; i < 10; ++i) {
        const double r = unif(rng);
        resp(i, 0) = r;
        resp(i, 1) = 1.0 - r;
    }
    const MixtureParams params = mstep(data, resp);

    for (std::size_t g = 0; g < 2; ++g) {
        double size = 0.0;
        for (std::size_t i = 0; i < 10; ++i) size += resp(i, g);
        std::vector<double> mean(2, 0.0);
        for (std::size_t i = 0; i < 10; ++i)
            for (std::size_t j = 0; j < 2; ++j) mean[j] += resp(i, g) * data(i, j) / size;
        CHECK(params.weights[g] == doctest::Approx(size / 10.0).epsilon(1e-12));
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(params.means(g, j) == doctest::Approx(mean[j]).epsilon(1e-10));
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) {
                double scatter = 0.0;
                for (std::size_t i = 0; i < 10; ++i)
                    scatter +=
                        resp(i, g) * (data(i, a) - mean[a]) * (data(i, b) - mean[b]) / size;
                CHECK(params.covariances[g](a, b) == doctest::Approx(scatter).epsilon(1e-10));
            }
    }
}

TEST_CASE("mstep raises EmptyComponent below the p+2 threshold") {
    std::mt19937_64 rng(5);
    const DataMatrix data = gaussian_blob(rng, 20, 0.0, 0.0);
    Matrix resp(20, 2, 0.0);
    for (std::size_t i = 0; i < 20; ++i) resp(i, 0) = 1.0;
    resp(0, 0) = 0.0;
    resp(0, 1) = 1.0;  // component 2 holds one point < p+2 = 4
    CHECK_THROWS_AS(mstep(data, resp), EmptyComponent);
}

TEST_CASE("fit on single-Gaussian data converges immediately to the MLE") {
    std::mt19937_64 rng(6);
    const DataMatrix data = gaussian_blob(rng, 100, 1.0, 2.0);
    const MixtureFit f = fit(data, Matrix(100, 1, 1.0));
    CHECK(f.converged);
    CHECK(f.iters <= 2);
    CHECK(f.comp_sizes[0] == doctest::Approx(100.0));
}

TEST_CASE("fit separates two far clusters exactly and is label-equivariant") {
    std::mt19937_64 rng(7);
    DataMatrix data(200, 2);
    std::vector<int> truth(200);
    for (std::size_t i = 0; i < 200; ++i) {
        const bool second = i >= 100;
        const DataMatrix row = gaussian_blob(rng, 1, second ? 10.0 : -10.0, 0.0);
        data(i, 0) = row(0, 0);
        data(i, 1) = row(0, 1);
        truth[i] = second ? 1 : 0;
    }
    Matrix init(200, 2, 0.0);
    for (std::size_t i = 0; i < 200; ++i) init(i, truth[i]) = 1.0;
    const MixtureFit f = fit(data, init);
    for (std::size_t i = 0; i < 200; ++i) {
        const std::size_t hard = f.resp(i, 0) > f.resp(i, 1) ? 0 : 1;
        CHECK(hard == static_cast<std::size_t>(truth[i]));
    }

    // Swap the init columns: the fitted components swap identically.
    Matrix swapped(200, 2, 0.0);
    for (std::size_t i = 0; i < 200; ++i) swapped(i, 1 - truth[i]) = 1.0;
    const MixtureFit g = fit(data, swapped);
    CHECK(g.params.means(0, 0) == doctest::Approx(f.params.means(1, 0)).epsilon(1e-12));
    CHECK(g.params.means(1, 0) == doctest::Approx(f.params.means(0, 0)).epsilon(1e-12));
}

TEST_CASE("fit restarted at its own fixed point stops at once") {
    std::mt19937_64 rng(8);
    DataMatrix data(120, 2);
    for (std::size_t i = 0; i < 120; ++i) {
        const DataMatrix row = gaussian_blob(rng, 1, i < 60 ? -5.0 : 5.0, 0.0);
        data(i, 0) = row(0, 0);
        data(i, 1) = row(0, 1);
    }
    const MixtureFit first = fit(data, hier_init(data, 2));
    const MixtureFit again = fit(data, first.resp);
    CHECK(again.iters <= 2);
    CHECK(again.loglik == doctest::Approx(first.loglik).epsilon(1e-10));
}

TEST_CASE("fit is deterministic") {
    std::mt19937_64 rng(9);
    DataMatrix data(150, 2);
    for (std::size_t i = 0; i < 150; ++i) {
        const DataMatrix row = gaussian_blob(rng, 1, i < 75 ? -6.0 : 6.0, 1.0);
        data(i, 0) = row(0, 0);
        data(i, 1) = row(0, 1);
    }
    const Matrix init = hier_init(data, 2);
    const MixtureFit a = fit(data, init);
    const MixtureFit b = fit(data, init);
    CHECK(a.loglik == b.loglik);
    CHECK(a.resp == b.resp);
    CHECK(a.params.means == b.params.means);
}

TEST_CASE("mixture_density closed forms") {
    DataMatrix x(1, 1);
    const MixtureParams params = single_standard_normal(1);
    CHECK(mixture_density(x, params)[0] ==
          doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-14));

    // Two-component hand computation from the normal density formula.
    MixtureParams two;
    two.components = 2;
    two.weights = {0.3, 0.7};
    two.means = Matrix(2, 1);
    two.means(0, 0) = -1.0;
    two.means(1, 0) = 2.0;
    two.covariances = {Matrix::identity(1), Matrix::identity(1)};
    two.covariances[1](0, 0) = 4.0;
    DataMatrix at(1, 1);
    at(0, 0) = 0.5;
    const double phi1 = std::exp(-0.5 * 1.5 * 1.5) / std::sqrt(2.0 * std::numbers::pi);
    const double phi2 = std::exp(-0.5 * 1.5 * 1.5 / 4.0) / std::sqrt(8.0 * std::numbers::pi);
    CHECK(mixture_density(at, two)[0] ==
          doctest::Approx(0.3 * phi1 + 0.7 * phi2).epsilon(1e-12));

    // Density at the dominant mean beats a point five sigma out.
    DataMatrix pair(2, 1);
    pair(0, 0) = 2.0;
    pair(1, 0) = 2.0 + 5.0 * 2.0;
    const std::vector<double> d = mixture_density(pair, two);
    CHECK(d[0] > d[1]);
}

TEST_CASE("EM log-likelihood is monotone across the suite") {
    CHECK(max_loglik_decrease() <= 1e-9);
}
