#include <doctest.h>

#include <cmath>

#include "ppc/rng.hpp"
#include "ppc/rootogram.hpp"

using namespace ppc;

namespace {

PredictiveDraws repeat_obs(const ObservationSample& obs, std::size_t s_draws) {
    PredictiveDraws d;
    d.n_draws = s_draws;
    d.n_observations = obs.size();
    for (std::size_t s = 0; s < s_draws; ++s)
        for (double v : obs.values) d.matrix.push_back(v);
    return d;
}

const Layer& find_layer(const PlotSpec& plot, const std::string& name) {
    for (const auto& layer : plot.layers)
        if (layer.name == name) return layer;
    REQUIRE(false);
    return plot.layers.front();
}

}  // namespace

TEST_CASE("count tabulation with identical draws") {
    ObservationSample obs{{0, 0, 1}, "x"};
    const auto draws = repeat_obs(obs, 5);
    const auto table = count_frequencies(obs, draws);
    REQUIRE(table.counts.size() == 2);
    CHECK(table.observed_freq[0] == 2);
    CHECK(table.observed_freq[1] == 1);
    CHECK(table.interval_lo[0] == 2.0);
    CHECK(table.interval_hi[0] == 2.0);
    CHECK(table.interval_lo[1] == 1.0);
    CHECK(table.interval_hi[1] == 1.0);
}

TEST_CASE("non-integer values are rejected with guidance") {
    ObservationSample obs{{0, 2.5}, "x"};
    const auto draws = repeat_obs(ObservationSample{{0, 2}, "x"}, 2);
    CHECK_THROWS_AS(count_frequencies(obs, draws), DataError);
    ObservationSample neg{{-1, 2}, "x"};
    CHECK_THROWS_AS(count_frequencies(neg, draws), DataError);
}

TEST_CASE("frequency conservation") {
    Rng rng(9);
    ObservationSample obs;
    obs.label = "x";
    for (int i = 0; i < 200; ++i) obs.values.push_back(static_cast<double>(rng.below(7)));
    PredictiveDraws draws;
    draws.n_draws = 40;
    draws.n_observations = 200;
    for (std::size_t i = 0; i < 40 * 200; ++i)
        draws.matrix.push_back(static_cast<double>(rng.below(9)));
    const auto table = count_frequencies(obs, draws);
    long obs_total = 0;
    for (long f : table.observed_freq) obs_total += f;
    CHECK(obs_total == 200);
    for (std::size_t s = 0; s < 40; ++s) {
        double row_total = 0.0;
        for (double f : table.draw_row(s)) row_total += f;
        CHECK(row_total == 200.0);
    }
}

TEST_CASE("identity case: hanging ends at zero, suspended is flat, no flags") {
    ObservationSample obs{{0, 1, 1, 2, 2, 2, 3}, "x"};
    const auto draws = repeat_obs(obs, 6);
    const auto table = count_frequencies(obs, draws);

    RootogramSpec spec;
    spec.style = RootogramStyle::Hanging;
    const auto hanging = rootogram(table, spec);
    const auto& hbars = find_layer(hanging.plot, "observed");
    for (double lo : hbars.y) CHECK(lo == doctest::Approx(0.0).epsilon(1e-12));

    spec.style = RootogramStyle::Suspended;
    const auto suspended = rootogram(table, spec);
    const auto& sbars = find_layer(suspended.plot, "residual");
    for (double hi : sbars.y2) CHECK(hi == doctest::Approx(0.0).epsilon(1e-12));

    spec.style = RootogramStyle::Discrete;
    const auto discrete = rootogram(table, spec);
    CHECK(discrete.flagged_counts.empty());
}

TEST_CASE("style equivariance links hanging and suspended geometry") {
    Rng rng(4);
    ObservationSample obs;
    obs.label = "x";
    for (int i = 0; i < 150; ++i) obs.values.push_back(static_cast<double>(rng.below(5)));
    PredictiveDraws draws;
    draws.n_draws = 25;
    draws.n_observations = 150;
    for (std::size_t i = 0; i < 25 * 150; ++i)
        draws.matrix.push_back(static_cast<double>(rng.below(5)));
    const auto table = count_frequencies(obs, draws);

    RootogramSpec spec;
    spec.style = RootogramStyle::Hanging;
    const auto hanging = rootogram(table, spec);
    spec.style = RootogramStyle::Suspended;
    const auto suspended = rootogram(table, spec);
    const auto& hbars = find_layer(hanging.plot, "observed");
    const auto& sbars = find_layer(suspended.plot, "residual");
    REQUIRE(hbars.y.size() == sbars.y2.size());
    for (std::size_t c = 0; c < hbars.y.size(); ++c) {
        const double sqrt_mean = std::sqrt(table.predictive_mean[c]);
        // hanging lower end + suspended bar value = 0; hanging upper = sqrt(mean)
        CHECK(hbars.y[c] + sbars.y2[c] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(hbars.y2[c] == doctest::Approx(sqrt_mean).epsilon(1e-12));
    }
}

TEST_CASE("discrete style flags exactly the interval violations") {
    // zero-inflated observations against a flat predictive
    ObservationSample obs;
    obs.label = "x";
    for (int i = 0; i < 60; ++i) obs.values.push_back(0.0);
    for (int i = 0; i < 40; ++i) obs.values.push_back(static_cast<double>(1 + i % 4));
    Rng rng(12);
    PredictiveDraws draws;
    draws.n_draws = 200;
    draws.n_observations = 100;
    for (std::size_t i = 0; i < 200 * 100; ++i)
        draws.matrix.push_back(static_cast<double>(rng.below(5)));
    const auto table = count_frequencies(obs, draws);

    RootogramSpec spec;
    spec.style = RootogramStyle::Discrete;
    const auto result = rootogram(table, spec);
    REQUIRE_FALSE(result.flagged_counts.empty());
    CHECK(result.flagged_counts.front() == 0);
    // flags agree with the interval definition
    for (std::size_t c = 0; c < table.counts.size(); ++c) {
        const double f = static_cast<double>(table.observed_freq[c]);
        const bool outside = f < table.interval_lo[c] || f > table.interval_hi[c];
        const bool flagged = std::find(result.flagged_counts.begin(), result.flagged_counts.end(),
                                       table.counts[c]) != result.flagged_counts.end();
        CHECK(outside == flagged);
    }
    CHECK(result.plot.y_scale == AxisScale::SqrtLabels);
}

TEST_CASE("standing style carries ribbon and mean line") {
    ObservationSample obs{{0, 1, 1, 2}, "x"};
    const auto draws = repeat_obs(obs, 3);
    const auto table = count_frequencies(obs, draws);
    RootogramSpec spec;
    spec.style = RootogramStyle::Standing;
    const auto result = rootogram(table, spec);
    CHECK(result.plot.y_scale == AxisScale::Linear);
    find_layer(result.plot, "predictive interval");
    find_layer(result.plot, "predictive mean");
    const auto& bars = find_layer(result.plot, "observed");
    CHECK(bars.y[0] == doctest::Approx(std::sqrt(1.0)).epsilon(1e-12));
    CHECK(bars.y[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}
