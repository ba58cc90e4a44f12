#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "ppc/pit.hpp"
#include "ppc/stats.hpp"

using namespace ppc;

namespace {

// Fine Simpson quadrature over the linear interpolant of the KDE grid; an
// independent path to the same displayed-curve integral.
double kde_quadrature_oracle(const KdeEstimate& est, double x) {
    if (x <= est.grid.front()) return 0.0;
    if (x >= est.grid.back()) return 1.0;
    auto interp = [&](double t) {
        const auto it = std::upper_bound(est.grid.begin(), est.grid.end(), t);
        const std::size_t j = static_cast<std::size_t>(it - est.grid.begin()) - 1;
        const std::size_t k = std::min(j, est.grid.size() - 2);
        const double w = (t - est.grid[k]) / (est.grid[k + 1] - est.grid[k]);
        return (1.0 - w) * est.density[k] + w * est.density[k + 1];
    };
    const int steps = 20000;
    const double a = est.grid.front();
    const double h = (x - a) / steps;
    double total = interp(a) + interp(x);
    for (int i = 1; i < steps; ++i) total += (i % 2 ? 4.0 : 2.0) * interp(a + i * h);
    return total * h / 3.0;
}

}  // namespace

TEST_CASE("histogram PIT on a single uniform bin") {
    HistogramEstimate est;
    est.bin_width = 1.0;
    est.edges = {0.0, 1.0};
    est.densities = {1.0};
    est.counts = {10};
    CHECK(pit_histogram(est, 0.25) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(pit_histogram(est, 0.0) == 0.0);
    CHECK(pit_histogram(est, 1.0) == 1.0);
    CHECK(pit_histogram(est, -3.0) == 0.0);
    CHECK(pit_histogram(est, 5.0) == 1.0);
}

TEST_CASE("histogram PIT with uneven masses") {
    HistogramEstimate est;
    est.bin_width = 1.0;
    est.edges = {0.0, 1.0, 2.0};
    est.densities = {0.25, 0.75};
    est.counts = {1, 3};
    CHECK(pit_histogram(est, 1.5) == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(pit_histogram(est, 2.0) == 1.0);
}

TEST_CASE("histogram PIT is nondecreasing") {
    HistogramEstimate est;
    est.bin_width = 0.5;
    est.edges = {0.0, 0.5, 1.0, 1.5, 2.0};
    est.densities = {0.5, 1.0, 0.25, 0.25};
    est.counts = {2, 4, 1, 1};
    double prev = -1.0;
    for (double x = -0.2; x <= 2.2; x += 0.01) {
        const double u = pit_histogram(est, x);
        CHECK(u >= prev);
        prev = u;
    }
}

TEST_CASE("single-point KDE PIT at the center is one half") {
    ObservationSample s{{0.0}, "x"};
    KdeConfig cfg;
    cfg.bandwidth = 1.0;
    const auto est = fit_kde(s, cfg);
    CHECK(pit_kde(est, 0.0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(pit_kde(est, est.grid.front() - 1.0) == 0.0);
    CHECK(pit_kde(est, est.grid.back() + 1.0) == 1.0);
}

TEST_CASE("two-point KDE PIT matches the quadrature oracle") {
    ObservationSample s{{-1.0, 1.0}, "x"};
    KdeConfig cfg;
    cfg.bandwidth = 0.5;
    const auto est = fit_kde(s, cfg);
    for (double x : {-1.5, -1.0, -0.3, 0.0, 0.4, 1.0, 2.0}) {
        CHECK(pit_kde(est, x) == doctest::Approx(kde_quadrature_oracle(est, x)).epsilon(1e-6));
    }
}

TEST_CASE("qdot PIT left of all dots") {
    QuantileDotPlot est;
    est.n_q = 4;
    est.centers = {1.0, 2.0, 3.0, 4.0};
    est.quantiles = est.centers;
    est.radius = 0.25;
    est.stack_centers = est.centers;
    est.stack_heights = {1, 1, 1, 1};
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        const double u = pit_qdot(est, -5.0, rng);
        CHECK(u > 0.0);
        CHECK(u < 0.25);
    }
}

TEST_CASE("qdot PIT inside the first of two dots") {
    QuantileDotPlot est;
    est.n_q = 2;
    est.centers = {0.0, 1.0};
    est.quantiles = est.centers;
    est.radius = 0.25;
    est.stack_centers = est.centers;
    est.stack_heights = {1, 1};
    Rng rng(10);
    for (int i = 0; i < 200; ++i) {
        const double u = pit_qdot(est, 0.0, rng);
        CHECK(u > 0.0);
        CHECK(u < 0.5);
    }
}

TEST_CASE("qdot PIT right of all dots is exactly one") {
    QuantileDotPlot est;
    est.n_q = 3;
    est.centers = {0.0, 0.0, 1.0};
    est.quantiles = est.centers;
    est.radius = 0.25;
    est.stack_centers = {0.0, 1.0};
    est.stack_heights = {2, 1};
    Rng rng(11);
    CHECK(pit_qdot(est, 2.0, rng) == 1.0);
}

TEST_CASE("randomized discrete PIT interpolates the cdf") {
    const std::map<double, double> cdf{{0.0, 0.5}, {1.0, 1.0}};
    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        const double u0 = pit_randomized_discrete(cdf, 0.0, rng);
        CHECK(u0 > 0.0);
        CHECK(u0 < 0.5);
        const double u1 = pit_randomized_discrete(cdf, 1.0, rng);
        CHECK(u1 > 0.5);
        CHECK(u1 < 1.0);
    }
    CHECK_THROWS_AS(pit_randomized_discrete(cdf, 0.5, rng), DataError);
}

TEST_CASE("randomized discrete PIT of pmf draws is uniform") {
    // Poisson-like pmf
    std::map<double, double> cdf;
    std::vector<double> pmf{0.05, 0.15, 0.22, 0.22, 0.17, 0.1, 0.05, 0.03, 0.01};
    double cum = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        cum += pmf[k];
        cdf[static_cast<double>(k)] = cum;
    }
    cdf[static_cast<double>(pmf.size() - 1)] = 1.0;
    cdf.rbegin()->second = 1.0;

    Rng rng(13);
    const int n = 100000;
    std::vector<double> us;
    for (int i = 0; i < n; ++i) {
        // sample from the pmf via its cdf
        const double v = rng.uniform();
        double x = 0.0;
        for (const auto& [value, c] : cdf) {
            x = value;
            if (v <= c) break;
        }
        us.push_back(pit_randomized_discrete(cdf, x, rng));
    }
    std::sort(us.begin(), us.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i) {
        const double e = static_cast<double>(i + 1) / n;
        ks = std::max(ks, std::abs(us[static_cast<std::size_t>(i)] - e));
    }
    CHECK(ks < 0.01);
}

TEST_CASE("pit_sample is deterministic and flags randomization") {
    ObservationSample s{{0.1, 0.4, 0.4, 0.9, 1.5}, "x"};
    const auto qd = fit_qdot(s, 10);
    const auto a = pit_sample(DensityEstimate{qd}, s, 99);
    const auto b = pit_sample(DensityEstimate{qd}, s, 99);
    CHECK(a.randomized);
    CHECK(a.values == b.values);
    const auto c = pit_sample(DensityEstimate{qd}, s, 100);
    CHECK(a.values != c.values);

    const auto hist = fit_histogram(s);
    const auto h = pit_sample(DensityEstimate{hist}, s, 99);
    CHECK_FALSE(h.randomized);
    CHECK(h.values.size() == 5);
}

TEST_CASE("qdot self-consistency: center resampling gives uniform PITs") {
    ObservationSample s{{}, "x"};
    Rng gen(3);
    for (int i = 0; i < 500; ++i) s.values.push_back(gen.normal());
    const auto est = fit_qdot(s);
    Rng rng(4);
    const int n = 10000;
    std::vector<double> us;
    for (int i = 0; i < n; ++i) {
        const double x = est.centers[rng.below(static_cast<std::uint64_t>(est.centers.size()))];
        us.push_back(pit_qdot(est, x, rng));
    }
    std::sort(us.begin(), us.end());
    double ks = 0.0;
    for (int i = 0; i < n; ++i)
        ks = std::max(ks, std::abs(us[static_cast<std::size_t>(i)] - static_cast<double>(i + 1) / n));
    CHECK(ks < 0.02);
}

TEST_CASE("pit_from_cdf_values validates the range") {
    const auto p = pit_from_cdf_values({0.1, 0.9});
    CHECK(p.values == std::vector<double>{0.1, 0.9});
    CHECK_FALSE(p.randomized);
    CHECK_THROWS_AS(pit_from_cdf_values({1.2}), DataError);
}
