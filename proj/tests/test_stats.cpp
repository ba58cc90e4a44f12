#include <doctest.h>

#include <cmath>
#include <vector>

#include "ppc/stats.hpp"

using namespace ppc;

TEST_CASE("type-7 quantiles interpolate order statistics") {
    std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    CHECK(stats::quantile_type7(x, 0.0) == 1.0);
    CHECK(stats::quantile_type7(x, 1.0) == 4.0);
    CHECK(stats::quantile_type7(x, 0.5) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(stats::quantile_type7(x, 0.25) == doctest::Approx(1.75).epsilon(1e-12));
}

TEST_CASE("iqr of evenly spaced data") {
    std::vector<double> x;
    for (int i = 1; i <= 101; ++i) x.push_back(i);
    CHECK(stats::iqr(x) == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("normal cdf and quantile are inverse") {
    for (double p : {0.001, 0.025, 0.2, 0.5, 0.8, 0.975, 0.999}) {
        CHECK(stats::normal_cdf(stats::normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
    }
    CHECK(stats::normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(stats::normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(stats::normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
}

TEST_CASE("incomplete beta against closed forms") {
    // I_x(1, b) = 1 - (1-x)^b
    CHECK(stats::incbeta(1.0, 3.0, 0.3) == doctest::Approx(1.0 - std::pow(0.7, 3)).epsilon(1e-12));
    // symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
    CHECK(stats::incbeta(2.5, 4.0, 0.4) ==
          doctest::Approx(1.0 - stats::incbeta(4.0, 2.5, 0.6)).epsilon(1e-12));
    CHECK(stats::incbeta_inv(2.5, 4.0, stats::incbeta(2.5, 4.0, 0.4)) ==
          doctest::Approx(0.4).epsilon(1e-9));
}

TEST_CASE("binomial cdf matches direct summation") {
    auto direct = [](int k, int n, double p) {
        double total = 0.0;
        for (int j = 0; j <= k; ++j) {
            double term = 1.0;
            for (int i = 0; i < j; ++i) term *= static_cast<double>(n - i) / (j - i);
            total += term * std::pow(p, j) * std::pow(1.0 - p, n - j);
        }
        return total;
    };
    for (int k : {0, 3, 7, 12, 20}) {
        CHECK(stats::binom_cdf(k, 20, 0.3) == doctest::Approx(direct(k, 20, 0.3)).epsilon(1e-10));
    }
}

TEST_CASE("binomial quantile oracle from the band construction") {
    // BinQ(0.025; 100, 0.5) = 40
    CHECK(stats::binom_quantile(0.025, 100, 0.5) == 40);
    CHECK(stats::binom_quantile(0.975, 100, 0.5) == 60);
    CHECK(stats::binom_quantile(0.0, 100, 0.5) == 0);
    CHECK(stats::binom_quantile(1.0, 100, 0.5) == 100);
}

TEST_CASE("Clopper-Pearson closed forms") {
    // n=1, k=1 at 95%: [0.025, 1]
    const auto iv = stats::clopper_pearson(1, 1, 0.95);
    CHECK(iv.lo == doctest::Approx(0.025).epsilon(1e-9));
    CHECK(iv.hi == doctest::Approx(1.0).epsilon(1e-12));
    const auto iv0 = stats::clopper_pearson(0, 10, 0.95);
    CHECK(iv0.lo == doctest::Approx(0.0).epsilon(1e-12));
    // upper bound solves (1-p)^10 = 0.025
    CHECK(iv0.hi == doctest::Approx(1.0 - std::pow(0.025, 0.1)).epsilon(1e-9));
}

TEST_CASE("trapezoid integral of a line is exact") {
    std::vector<double> x{0.0, 0.5, 1.0, 1.5, 2.0};
    std::vector<double> y{0.0, 0.5, 1.0, 1.5, 2.0};
    CHECK(stats::trapezoid(x, y) == doctest::Approx(2.0).epsilon(1e-15));
}
