#include "ppc/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ppc/rng.hpp"
#include "ppc/stats.hpp"

namespace ppc {

std::vector<std::size_t> select_draws(std::size_t n_draws, std::size_t subset, std::uint64_t seed) {
    std::vector<std::size_t> idx(n_draws);
    std::iota(idx.begin(), idx.end(), 0);
    if (subset >= n_draws) return idx;
    Rng rng(derive_seed(seed, 0x5e1ec7));
    for (std::size_t i = 0; i < subset; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.below(n_draws - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(subset);
    std::sort(idx.begin(), idx.end());
    return idx;
}

namespace {

ObservationSample draw_sample(const PredictiveDraws& draws, std::size_t s) {
    const auto row = draws.row(s);
    return {{row.begin(), row.end()}, "draw " + std::to_string(s)};
}

Layer kde_line(const KdeEstimate& est, std::string name, std::string color, double opacity) {
    Layer layer;
    layer.kind = Layer::Kind::Line;
    layer.name = std::move(name);
    layer.color = std::move(color);
    layer.opacity = opacity;
    layer.x = est.grid;
    layer.y = est.density;
    return layer;
}

}  // namespace

OverlayResult overlay_kde(const ObservationSample& obs, const PredictiveDraws& draws,
                          const OverlaySpec& spec) {
    validate_pairing(obs, draws);
    OverlayResult out;
    out.plot.title = "Predictive check: KDE overlay";
    out.plot.x_label = obs.label;
    out.plot.y_label = "density";

    const KdeEstimate obs_est = fit_kde(obs, spec.kde);
    KdeConfig draw_cfg = spec.kde;
    if (spec.freeze_bandwidth) draw_cfg.bandwidth = obs_est.bandwidth;

    const auto idx = select_draws(draws.n_draws, spec.draw_subset, spec.seed);
    std::vector<KdeEstimate> fits(idx.size());
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(idx.size()); ++i)
        fits[static_cast<std::size_t>(i)] =
            fit_kde(draw_sample(draws, idx[static_cast<std::size_t>(i)]), draw_cfg);

    for (std::size_t i = 0; i < fits.size(); ++i)
        out.plot.layers.push_back(
            kde_line(fits[i], "draw " + std::to_string(idx[i]), "#9bb9dc", 0.35));
    out.plot.layers.push_back(kde_line(obs_est, "observed", "#204a87", 1.0));
    return out;
}

OverlayResult overlay_histogram(const ObservationSample& obs, const PredictiveDraws& draws,
                                const OverlaySpec& spec) {
    validate_pairing(obs, draws);
    OverlayResult out;
    out.plot.title = "Predictive check: histogram bin summaries";
    out.plot.x_label = obs.label;
    out.plot.y_label = "count";

    const HistogramEstimate hist = fit_histogram(obs);
    const std::size_t nb = hist.densities.size();
    const std::size_t s_draws = draws.n_draws;

    // per-draw counts on the shared bins, plus overflow on each side
    std::vector<double> per_bin(s_draws * nb, 0.0);
    std::vector<double> low(s_draws, 0.0), high(s_draws, 0.0);
    for (std::size_t s = 0; s < s_draws; ++s) {
        for (double v : draws.row(s)) {
            if (v < hist.edges.front()) {
                ++low[s];
            } else if (v > hist.edges.back()) {
                ++high[s];
            } else {
                auto j = static_cast<long>(std::upper_bound(hist.edges.begin(), hist.edges.end(), v) -
                                           hist.edges.begin()) -
                         1;
                j = std::clamp<long>(j, 0, static_cast<long>(nb) - 1);
                per_bin[s * nb + static_cast<std::size_t>(j)] += 1.0;
            }
        }
    }

    Layer bars;
    bars.kind = Layer::Kind::Bars;
    bars.name = "observed";
    bars.color = "#c4d7ee";
    bars.width = hist.bin_width;
    Layer means;
    means.kind = Layer::Kind::Points;
    means.name = "predictive mean";
    means.color = "#204a87";
    Layer intervals;
    intervals.kind = Layer::Kind::Intervals;
    intervals.name = "predictive interval";
    intervals.color = "#204a87";

    const double p_lo = (1.0 - spec.interval_mass) / 2.0;
    std::vector<double> column(s_draws);
    for (std::size_t j = 0; j < nb; ++j) {
        const double center = 0.5 * (hist.edges[j] + hist.edges[j + 1]);
        bars.x.push_back(center);
        bars.y.push_back(static_cast<double>(hist.counts[j]));
        for (std::size_t s = 0; s < s_draws; ++s) column[s] = per_bin[s * nb + j];
        std::sort(column.begin(), column.end());
        means.x.push_back(center);
        means.y.push_back(stats::mean(column));
        intervals.x.push_back(center);
        intervals.y.push_back(stats::quantile_type7(column, p_lo));
        intervals.y2.push_back(stats::quantile_type7(column, 1.0 - p_lo));
    }

    out.overflow_low = stats::mean(low);
    out.overflow_high = stats::mean(high);
    if (out.overflow_low > 0.0 || out.overflow_high > 0.0) {
        Layer overflow;
        overflow.kind = Layer::Kind::Bars;
        overflow.name = "overflow";
        overflow.color = "#cc0000";
        overflow.opacity = 0.6;
        overflow.width = hist.bin_width;
        if (out.overflow_low > 0.0) {
            overflow.x.push_back(hist.edges.front() - 0.5 * hist.bin_width);
            overflow.y.push_back(out.overflow_low);
            overflow.flags.push_back(true);
        }
        if (out.overflow_high > 0.0) {
            overflow.x.push_back(hist.edges.back() + 0.5 * hist.bin_width);
            overflow.y.push_back(out.overflow_high);
            overflow.flags.push_back(true);
        }
        out.plot.layers.push_back(std::move(overflow));
    }
    out.plot.layers.push_back(std::move(bars));
    out.plot.layers.push_back(std::move(intervals));
    out.plot.layers.push_back(std::move(means));
    return out;
}

OverlayResult overlay_qdot(const ObservationSample& obs, const PredictiveDraws& draws,
                           const OverlaySpec& spec) {
    validate_pairing(obs, draws);
    OverlayResult out;
    out.plot.title = "Predictive check: quantile dot overlay";
    out.plot.x_label = obs.label;
    out.plot.y_label = "stack height";

    const QuantileDotPlot obs_est = fit_qdot(obs);
    const double binwidth = 2.0 * obs_est.radius;

    Layer dots;
    dots.kind = Layer::Kind::Dots;
    dots.name = "observed";
    dots.color = "#c4d7ee";
    dots.width = obs_est.radius;
    {
        std::size_t d = 0;
        for (std::size_t s = 0; s < obs_est.stack_centers.size(); ++s) {
            for (int k = 0; k < obs_est.stack_heights[s]; ++k, ++d) {
                dots.x.push_back(obs_est.stack_centers[s]);
                dots.y.push_back(static_cast<double>(k + 1));
            }
        }
    }
    out.plot.layers.push_back(std::move(dots));

    const auto idx = select_draws(draws.n_draws, spec.draw_subset, spec.seed);
    Layer tops;
    tops.kind = Layer::Kind::Points;
    tops.name = "draw stack tops";
    tops.color = "#204a87";
    tops.opacity = 0.5;
    for (const auto s : idx) {
        const QuantileDotPlot fit = fit_qdot(draw_sample(draws, s), obs_est.n_q, binwidth);
        for (std::size_t k = 0; k < fit.stack_centers.size(); ++k) {
            tops.x.push_back(fit.stack_centers[k]);
            tops.y.push_back(static_cast<double>(fit.stack_heights[k]));
        }
    }
    out.plot.layers.push_back(std::move(tops));
    return out;
}

OverlayResult overlay(const ObservationSample& obs, const PredictiveDraws& draws,
                      const OverlaySpec& spec) {
    switch (spec.style) {
        case OverlayStyle::Kde: return overlay_kde(obs, draws, spec);
        case OverlayStyle::Histogram: return overlay_histogram(obs, draws, spec);
        case OverlayStyle::Qdot: return overlay_qdot(obs, draws, spec);
    }
    throw DataError("unknown overlay style");
}

}  // namespace ppc
