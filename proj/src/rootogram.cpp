#include "ppc/rootogram.hpp"

#include <algorithm>
#include <cmath>

#include "ppc/stats.hpp"

namespace ppc {

namespace {

long as_count(double v) {
    if (v < 0.0 || v != std::floor(v))
        throw DataError("value " + std::to_string(v) +
                        " is not a nonnegative integer; use the continuous checks instead");
    return static_cast<long>(v);
}

}  // namespace

CountFrequencyTable count_frequencies(const ObservationSample& obs, const PredictiveDraws& draws,
                                      std::optional<long> c_max, double interval_mass) {
    obs.validate();
    draws.validate();
    validate_pairing(obs, draws);
    if (!(interval_mass > 0.0 && interval_mass < 1.0)) throw DataError("interval mass must lie in (0,1)");

    long top = 0;
    for (double v : obs.values) top = std::max(top, as_count(v));
    for (double v : draws.matrix) top = std::max(top, as_count(v));
    if (c_max) top = *c_max;

    CountFrequencyTable table;
    table.n = obs.size();
    table.n_draws = draws.n_draws;
    table.interval_mass = interval_mass;
    const auto nc = static_cast<std::size_t>(top) + 1;
    table.counts.resize(nc);
    for (std::size_t c = 0; c < nc; ++c) table.counts[c] = static_cast<long>(c);

    table.observed_freq.assign(nc, 0);
    for (double v : obs.values) {
        const long c = as_count(v);
        if (c <= top) ++table.observed_freq[static_cast<std::size_t>(c)];
    }

    table.predictive_freq.assign(draws.n_draws * nc, 0.0);
    for (std::size_t s = 0; s < draws.n_draws; ++s)
        for (double v : draws.row(s)) {
            const long c = as_count(v);
            if (c <= top) table.predictive_freq[s * nc + static_cast<std::size_t>(c)] += 1.0;
        }

    table.predictive_mean.resize(nc);
    table.interval_lo.resize(nc);
    table.interval_hi.resize(nc);
    const double p_lo = (1.0 - interval_mass) / 2.0;
    std::vector<double> column(draws.n_draws);
    for (std::size_t c = 0; c < nc; ++c) {
        for (std::size_t s = 0; s < draws.n_draws; ++s) column[s] = table.predictive_freq[s * nc + c];
        std::sort(column.begin(), column.end());
        table.predictive_mean[c] = stats::mean(column);
        table.interval_lo[c] = stats::quantile_type7(column, p_lo);
        table.interval_hi[c] = stats::quantile_type7(column, 1.0 - p_lo);
    }
    return table;
}

RootogramResult rootogram(const CountFrequencyTable& table, const RootogramSpec& spec) {
    const std::size_t nc = table.counts.size();
    RootogramResult out;
    out.plot.x_label = "count";
    if (spec.style == RootogramStyle::Discrete) {
        // axis is sqrt-scaled but labelled with the raw frequencies
        out.plot.y_label = "frequency";
        out.plot.y_scale = AxisScale::SqrtLabels;
    } else {
        out.plot.y_label = spec.sqrt_differences ? "sqrt(frequency)" : "frequency";
        out.plot.y_scale = AxisScale::Linear;
    }

    auto tr = [&](double v) { return spec.sqrt_differences ? std::sqrt(std::max(v, 0.0)) : v; };

    std::vector<double> centers(nc), sq_obs(nc), sq_mean(nc), sq_lo(nc), sq_hi(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        centers[c] = static_cast<double>(table.counts[c]);
        sq_obs[c] = tr(static_cast<double>(table.observed_freq[c]));
        sq_mean[c] = tr(table.predictive_mean[c]);
        sq_lo[c] = tr(table.interval_lo[c]);
        sq_hi[c] = tr(table.interval_hi[c]);
    }

    for (std::size_t c = 0; c < nc; ++c) {
        const double f = static_cast<double>(table.observed_freq[c]);
        if (f < table.interval_lo[c] || f > table.interval_hi[c])
            out.flagged_counts.push_back(table.counts[c]);
    }

    switch (spec.style) {
        case RootogramStyle::Standing: {
            out.plot.title = "Standing rootogram";
            Layer bars;
            bars.kind = Layer::Kind::Bars;
            bars.name = "observed";
            bars.color = "#c4d7ee";
            bars.width = 0.9;
            bars.x = centers;
            bars.y = sq_obs;
            Layer ribbon;
            ribbon.kind = Layer::Kind::Ribbon;
            ribbon.name = "predictive interval";
            ribbon.color = "#204a87";
            ribbon.opacity = 0.3;
            ribbon.x = centers;
            ribbon.y = sq_lo;
            ribbon.y2 = sq_hi;
            Layer line;
            line.kind = Layer::Kind::Line;
            line.name = "predictive mean";
            line.color = "#204a87";
            line.x = centers;
            line.y = sq_mean;
            out.plot.layers = {std::move(bars), std::move(ribbon), std::move(line)};
            break;
        }
        case RootogramStyle::Hanging: {
            out.plot.title = "Hanging rootogram";
            Layer bars;
            bars.kind = Layer::Kind::Bars;
            bars.name = "observed";
            bars.color = "#c4d7ee";
            bars.width = 0.9;
            bars.x = centers;
            for (std::size_t c = 0; c < nc; ++c) {
                bars.y.push_back(sq_mean[c] - sq_obs[c]);  // lower end
                bars.y2.push_back(sq_mean[c]);             // hangs from the prediction
            }
            Layer line;
            line.kind = Layer::Kind::Line;
            line.name = "predictive mean";
            line.color = "#204a87";
            line.x = centers;
            line.y = sq_mean;
            out.plot.layers = {std::move(bars), std::move(line)};
            break;
        }
        case RootogramStyle::Suspended: {
            out.plot.title = "Suspended rootogram";
            Layer bars;
            bars.kind = Layer::Kind::Bars;
            bars.name = "residual";
            bars.color = "#c4d7ee";
            bars.width = 0.9;
            bars.x = centers;
            for (std::size_t c = 0; c < nc; ++c) {
                bars.y.push_back(0.0);
                bars.y2.push_back(sq_obs[c] - sq_mean[c]);
            }
            out.plot.layers = {std::move(bars)};
            break;
        }
        case RootogramStyle::Discrete: {
            out.plot.title = "Discrete rootogram";
            // sqrt-scaled axis with untransformed labels; the renderer applies
            // the scale, so geometry carries raw frequencies
            Layer intervals;
            intervals.kind = Layer::Kind::Intervals;
            intervals.name = "predictive interval";
            intervals.color = "#9bb9dc";
            intervals.x = centers;
            for (std::size_t c = 0; c < nc; ++c) {
                intervals.y.push_back(table.interval_lo[c]);
                intervals.y2.push_back(table.interval_hi[c]);
            }
            Layer pred;
            pred.kind = Layer::Kind::Points;
            pred.name = "predictive mean";
            pred.color = "#9bb9dc";
            pred.x = centers;
            pred.y = table.predictive_mean;
            Layer observed;
            observed.kind = Layer::Kind::Points;
            observed.name = "observed";
            observed.color = "#204a87";
            observed.x = centers;
            for (std::size_t c = 0; c < nc; ++c) {
                observed.y.push_back(static_cast<double>(table.observed_freq[c]));
                const double f = static_cast<double>(table.observed_freq[c]);
                observed.flags.push_back(f < table.interval_lo[c] || f > table.interval_hi[c]);
            }
            out.plot.layers = {std::move(intervals), std::move(pred), std::move(observed)};
            break;
        }
    }
    return out;
}

}  // namespace ppc
