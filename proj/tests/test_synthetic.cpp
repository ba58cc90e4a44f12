#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "ppc/synthetic.hpp"

using namespace ppc;
using synthetic::Kind;

namespace {

// KS distance handling atoms: tied blocks compare their upper rank against
// cdf(v) and their lower rank against the left limit cdf(v-).
double ks_distance(std::vector<double> sample, Kind kind) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double ks = 0.0;
    std::size_t i = 0;
    while (i < sample.size()) {
        std::size_t j = i;
        while (j + 1 < sample.size() && sample[j + 1] == sample[i]) ++j;
        const double v = sample[i];
        ks = std::max(ks, std::abs(synthetic::cdf(kind, v) - static_cast<double>(j + 1) / n));
        ks = std::max(ks, std::abs(synthetic::cdf(kind, v - 1e-9) - static_cast<double>(i) / n));
        i = j + 1;
    }
    return ks;
}

}  // namespace

TEST_CASE("bounded exponential support endpoints") {
    const auto sup = synthetic::support(Kind::BoundedExp);
    CHECK(sup.lo == doctest::Approx(-std::log(0.9)).epsilon(1e-12));
    CHECK(sup.hi == doctest::Approx(-std::log(0.1)).epsilon(1e-12));
    const auto s = synthetic::generate(Kind::BoundedExp, 10000, 1);
    const auto [mn, mx] = std::minmax_element(s.values.begin(), s.values.end());
    CHECK(*mn >= sup.lo);
    CHECK(*mx <= sup.hi);
}

TEST_CASE("point mass fraction near one fifth") {
    const auto s = synthetic::generate(Kind::PointMass, 10000, 2);
    const double frac =
        static_cast<double>(std::count(s.values.begin(), s.values.end(), 1.0)) / 10000.0;
    CHECK(std::abs(frac - 0.2) < 0.013);
}

TEST_CASE("stepped middle-branch mass near one fifth") {
    const auto s = synthetic::generate(Kind::Stepped, 10000, 3);
    const double frac = static_cast<double>(std::count_if(s.values.begin(), s.values.end(),
                                                          [](double v) {
                                                              return v > -0.5 && v <= 0.5;
                                                          })) /
                        10000.0;
    CHECK(std::abs(frac - 0.2) < 0.013);
}

TEST_CASE("stepped density integrates to one") {
    // integrate piecewise: the density jumps at -0.5 and 0.5
    auto piece = [](double a, double b) {
        const int steps = 100000;
        const double h = (b - a) / steps;
        double total = 0.5 * (synthetic::pdf(Kind::Stepped, a + 1e-12) +
                              synthetic::pdf(Kind::Stepped, b - 1e-12));
        for (int i = 1; i < steps; ++i) total += synthetic::pdf(Kind::Stepped, a + i * h);
        return total * h;
    };
    const double total = piece(-8.0, -0.5) + piece(-0.5, 0.5) + piece(0.5, 8.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("cdf endpoints and monotonicity") {
    for (Kind kind : {Kind::SmoothNormal, Kind::Stepped, Kind::BoundedExp, Kind::PointMass}) {
        CHECK(synthetic::cdf(kind, -50.0) == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(synthetic::cdf(kind, 50.0) == doctest::Approx(1.0).epsilon(1e-9));
        double prev = -1.0;
        for (double x = -6.0; x <= 6.0; x += 0.01) {
            const double c = synthetic::cdf(kind, x);
            CHECK(c >= prev - 1e-12);
            CHECK(synthetic::pdf(kind, x) >= 0.0);
            prev = c;
        }
    }
}

TEST_CASE("samplers match their cdf evaluators") {
    for (Kind kind : {Kind::SmoothNormal, Kind::Stepped, Kind::BoundedExp, Kind::PointMass}) {
        const auto s = synthetic::generate(kind, 10000, 7);
        CHECK(ks_distance(s.values, kind) < 0.02);
    }
}

TEST_CASE("generation is deterministic by seed") {
    const auto a = synthetic::generate(Kind::Stepped, 100, 5);
    const auto b = synthetic::generate(Kind::Stepped, 100, 5);
    const auto c = synthetic::generate(Kind::Stepped, 100, 6);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
}

TEST_CASE("kind names round-trip") {
    for (Kind kind : {Kind::SmoothNormal, Kind::Stepped, Kind::BoundedExp, Kind::PointMass}) {
        CHECK(synthetic::kind_from_name(synthetic::kind_name(kind)) == kind);
    }
    CHECK_THROWS_AS(synthetic::kind_from_name("cauchy"), DataError);
}
