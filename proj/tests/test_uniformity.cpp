#include <doctest.h>

#include <cmath>
#include <vector>

#include "ppc/rng.hpp"
#include "ppc/uniformity.hpp"

using namespace ppc;

namespace {

PitSet grid_pits(std::size_t n) {
    PitSet p;
    for (std::size_t k = 1; k <= n; ++k)
        p.values.push_back((static_cast<double>(k) - 0.5) / static_cast<double>(n));
    return p;
}

CalibrationConfig fast_config() {
    CalibrationConfig cfg;
    cfg.replicates = 2000;
    return cfg;
}

}  // namespace

TEST_CASE("ecdf evaluation counts with <=") {
    PitSet p;
    p.values = {0.2, 0.7};
    const auto e = ecdf_at(p, 2);
    REQUIRE(e.points.size() == 2);
    CHECK(e.points[0] == 0.5);
    CHECK(e.points[1] == 1.0);
    CHECK(e.ecdf[0] == 0.5);
    CHECK(e.ecdf[1] == 1.0);
}

TEST_CASE("ecdf of all-ones mass") {
    PitSet p;
    p.values.assign(10, 1.0);
    const auto e = ecdf_at(p, 5);
    for (std::size_t k = 0; k + 1 < e.ecdf.size(); ++k) CHECK(e.ecdf[k] == 0.0);
    CHECK(e.ecdf.back() == 1.0);
}

TEST_CASE("large uniform sample tracks the diagonal") {
    Rng rng(55);
    PitSet p;
    for (int i = 0; i < 10000; ++i) p.values.push_back(rng.uniform());
    const auto e = ecdf_at(p, 100);
    for (std::size_t k = 0; k < e.points.size(); ++k)
        CHECK(std::abs(e.ecdf[k] - e.points[k]) < 0.03);
}

TEST_CASE("single evaluation point needs no adjustment") {
    CHECK(calibrate_gamma(100, 1, 0.05, fast_config()) == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("pointwise band at the middle matches the binomial quantile oracle") {
    const auto bands = simultaneous_bands(100, 1, 0.05, fast_config());
    // K=1 evaluates only z=1 where the band is degenerate; build K=2 instead
    const auto b2 = simultaneous_bands(100, 2, 0.05, fast_config());
    REQUIRE(b2.lower.size() == 2);
    // gamma = 0.05 would give [0.40, 0.60] at z=0.5; adjusted gamma <= alpha narrows it
    CHECK(b2.lower[0] <= 0.40);
    CHECK(b2.upper[0] >= 0.60);
    CHECK(bands.k_points == 1);
}

TEST_CASE("uniform grid passes") {
    const auto v = gof_test(grid_pits(100), 0.05, std::nullopt, EcdfStyle::Ecdf, fast_config());
    CHECK(v.pass);
    CHECK_FALSE(v.first_exit.has_value());
}

TEST_CASE("degenerate point mass fails below the diagonal") {
    PitSet p;
    p.values.assign(100, 0.5);
    const auto v = gof_test(p, 0.05, std::nullopt, EcdfStyle::Ecdf, fast_config());
    CHECK_FALSE(v.pass);
    REQUIRE(v.first_exit.has_value());
    CHECK(v.first_exit->z < 0.5);
    CHECK_FALSE(v.first_exit->above);
}

TEST_CASE("verdict is invariant to plot style") {
    Rng rng(66);
    PitSet p;
    for (int i = 0; i < 250; ++i) p.values.push_back(std::pow(rng.uniform(), 1.3));
    const auto a = gof_test(p, 0.05, std::nullopt, EcdfStyle::Ecdf, fast_config());
    const auto b = gof_test(p, 0.05, std::nullopt, EcdfStyle::EcdfDifference, fast_config());
    CHECK(a.pass == b.pass);
    CHECK(a.first_exit.has_value() == b.first_exit.has_value());
    if (a.first_exit) {
        CHECK(a.first_exit->z == b.first_exit->z);
        CHECK(a.first_exit->above == b.first_exit->above);
    }
    CHECK(b.style == EcdfStyle::EcdfDifference);
}

TEST_CASE("gamma decreases with more evaluation points") {
    const double g20 = calibrate_gamma(200, 20, 0.05, fast_config());
    const double g50 = calibrate_gamma(200, 50, 0.05, fast_config());
    const double g100 = calibrate_gamma(200, 100, 0.05, fast_config());
    CHECK(g20 >= g50);
    CHECK(g50 >= g100);
    CHECK(g100 > 0.0);
    CHECK(g20 <= 0.05);
}

TEST_CASE("calibration is deterministic and cached") {
    const double a = calibrate_gamma(123, 40, 0.05, fast_config());
    const double b = calibrate_gamma(123, 40, 0.05, fast_config());
    CHECK(a == b);
}

TEST_CASE("serial and parallel replicate kernels agree") {
    const auto s = detail::simulate_counts_serial(80, 30, 500, 0xfeed);
    const auto p = detail::simulate_counts_parallel(80, 30, 500, 0xfeed);
    CHECK(s == p);
}

TEST_CASE("bands bracket the null, not the diagonal") {
    const auto b = simultaneous_bands(50, 25, 0.05, fast_config());
    for (std::size_t k = 0; k < b.lower.size(); ++k) {
        CHECK(b.lower[k] >= 0.0);
        CHECK(b.upper[k] <= 1.0);
        CHECK(b.lower[k] <= b.upper[k]);
    }
    CHECK(b.gamma > 0.0);
    CHECK(b.gamma <= 0.05);
}
