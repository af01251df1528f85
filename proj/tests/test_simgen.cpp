#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>

#include "ombc/simgen.hpp"
#include "ombc/special.hpp"

using namespace ombc;

TEST_CASE("tclust_scenario materializes the published designs") {
    const ScenarioSpec m1 = tclust_scenario(2, "equal", 1, 1);
    CHECK(m1.n_obs == 900);
    CHECK(m1.n_outliers == 100);
    CHECK(m1.proportions == std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
    for (const Matrix& cov : m1.covariances) {
        CHECK(cov(0, 0) == 1.0);
        CHECK(cov(1, 1) == 1.0);
        CHECK(cov(0, 1) == 0.0);
    }
    CHECK(m1.means(0, 0) == 0.0);
    CHECK(m1.means(0, 1) == 8.0);
    CHECK(m1.means(1, 0) == 8.0);
    CHECK(m1.means(2, 0) == -8.0);
    CHECK(m1.means(2, 1) == -8.0);

    const ScenarioSpec m4 = tclust_scenario(2, "unequal", 4, 2);
    CHECK(m4.proportions == std::vector<double>{0.2, 0.4, 0.4});
    CHECK(m4.covariances[2](0, 0) == 15.0);
    CHECK(m4.covariances[2](0, 1) == -10.0);
    CHECK(m4.covariances[2](1, 1) == 15.0);
    CHECK(m4.covariances[1](0, 0) == 20.0);
    CHECK(m4.covariances[1](1, 1) == 5.0);

    const ScenarioSpec six = tclust_scenario(6, "equal", 4, 1);
    CHECK(six.dim == 6);
    for (std::size_t g = 0; g < 3; ++g) {
        for (std::size_t j = 2; j < 6; ++j) {
            CHECK(six.means(g, j) == 0.0);
            CHECK(six.covariances[g](j, j) == 1.0);
            for (std::size_t i = 0; i < 2; ++i) {
                CHECK(six.covariances[g](i, j) == 0.0);
                CHECK(six.covariances[g](j, i) == 0.0);
            }
        }
        CHECK(six.covariances[g](0, 0) == m4.covariances[g](0, 0));
    }

    CHECK_THROWS_AS(tclust_scenario(3, "equal", 1, 1), UnknownScenario);
    CHECK_THROWS_AS(tclust_scenario(2, "odd", 1, 1), UnknownScenario);
    CHECK_THROWS_AS(tclust_scenario(2, "equal", 6, 1), UnknownScenario);
}

TEST_CASE("sample_mixture component counts") {
    const ScenarioSpec equal = tclust_scenario(2, "equal", 1, 1);
    const LabeledData a = sample_mixture(equal);
    std::size_t c1 = 0, c2 = 0, c3 = 0;
    for (int l : a.labels) {
        c1 += l == 1;
        c2 += l == 2;
        c3 += l == 3;
    }
    CHECK(c1 == 300);
    CHECK(c2 == 300);
    CHECK(c3 == 300);

    const ScenarioSpec unequal = tclust_scenario(2, "unequal", 1, 1);
    const LabeledData b = sample_mixture(unequal);
    c1 = c2 = c3 = 0;
    for (int l : b.labels) {
        c1 += l == 1;
        c2 += l == 2;
        c3 += l == 3;
    }
    CHECK(c1 == 180);
    CHECK(c2 == 360);
    CHECK(c3 == 360);
}

TEST_CASE("sample_mixture law of large numbers") {
    ScenarioSpec spec = tclust_scenario(2, "equal", 2, 9);
    spec.n_obs = 300000;  // 100k per component
    const LabeledData data = sample_mixture(spec);
    double mx = 0.0, my = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < data.data.rows(); ++i) {
        if (data.labels[i] != 1) continue;
        mx += data.data(i, 0);
        my += data.data(i, 1);
        ++count;
    }
    CHECK(count == 100000);
    CHECK(std::fabs(mx / count - spec.means(0, 0)) < 0.05);
    CHECK(std::fabs(my / count - spec.means(0, 1)) < 0.05);
}

TEST_CASE("rejection outliers are extreme for every component and inside the box") {
    const ScenarioSpec spec = tclust_scenario(2, "equal", 1, 3);
    const LabeledData mixture = sample_mixture(spec);
    const Matrix outliers = sample_outliers_reject(spec, mixture.data);
    CHECK(outliers.rows() == 100);

    const double threshold = chisq_quantile(0.99, 2);
    CHECK(threshold == doctest::Approx(9.21034).epsilon(1e-5));
    std::vector<double> lo(2, 1e300), hi(2, -1e300);
    for (std::size_t i = 0; i < mixture.data.rows(); ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            lo[j] = std::min(lo[j], mixture.data(i, j));
            hi[j] = std::max(hi[j], mixture.data(i, j));
        }
    for (std::size_t i = 0; i < outliers.rows(); ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(outliers(i, j) >= lo[j]);
            CHECK(outliers(i, j) <= hi[j]);
        }
        for (std::size_t g = 0; g < 3; ++g) {
            const double q =
                mahalanobis_sq(outliers.row(i), spec.means.row(g), spec.covariances[g]);
            CHECK(q > threshold);
        }
    }
}

TEST_CASE("rejection generator terminates across seeds") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ScenarioSpec spec = tclust_scenario(2, "equal", 1, seed);
        const LabeledData dataset = generate(spec);
        CHECK(dataset.data.rows() == 1000);
    }
}

TEST_CASE("box outliers cover the expanded box and nothing else") {
    DataMatrix data(11, 1);
    for (std::size_t i = 0; i <= 10; ++i) data(i, 0) = static_cast<double>(i);
    // Data spans [0,10], mean 5; factor 2 gives proposals on [-5, 15].
    const Matrix proposals = sample_outliers_box(100000, data, 2.0, 5);
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < proposals.rows(); ++i) {
        lo = std::min(lo, proposals(i, 0));
        hi = std::max(hi, proposals(i, 0));
        CHECK(proposals(i, 0) >= -5.0);
        CHECK(proposals(i, 0) <= 15.0);
    }
    CHECK(lo < -5.0 + 0.02);  // within 0.1% of the box width of the bounds
    CHECK(hi > 15.0 - 0.02);

    const Matrix collapsed = sample_outliers_box(50, data, 0.0, 5);
    for (std::size_t i = 0; i < collapsed.rows(); ++i)
        CHECK(collapsed(i, 0) == doctest::Approx(5.0));
}

TEST_CASE("illustrative datasets have the documented shapes and shared parameters") {
    const ScenarioSpec small = illustrative_scenario("small", 1);
    const ScenarioSpec large = illustrative_scenario("large", 1);
    CHECK(small.means == large.means);
    CHECK(small.proportions == large.proportions);
    for (std::size_t g = 0; g < 3; ++g) CHECK(small.covariances[g] == large.covariances[g]);

    const LabeledData s = generate(small);
    CHECK(s.data.rows() == 1010);
    CHECK(std::count(s.labels.begin(), s.labels.end(), 0) == 10);

    const LabeledData l = generate(large);
    CHECK(l.data.rows() == 4040);
    CHECK(std::count(l.labels.begin(), l.labels.end(), 0) == 40);

    CHECK_THROWS_AS(illustrative_scenario("medium", 1), UnknownScenario);
}

TEST_CASE("generation is deterministic per seed and distinct across seeds") {
    const ScenarioSpec spec = tclust_scenario(2, "unequal", 5, 4);
    const LabeledData a = generate(spec);
    const LabeledData b = generate(spec);
    CHECK(a.data == b.data);
    CHECK(a.labels == b.labels);

    std::set<std::size_t> hashes;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const LabeledData d = generate(tclust_scenario(2, "equal", 1, seed));
        std::size_t h = 14695981039346656037ULL;
        for (double v : d.data.data()) {
            std::uint64_t bits;
            std::memcpy(&bits, &v, sizeof bits);
            h = (h ^ bits) * 1099511628211ULL;
        }
        hashes.insert(h);
    }
    CHECK(hashes.size() == 10);
}
