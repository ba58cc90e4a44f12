#include "ppc/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ppc/rng.hpp"
#include "ppc/stats.hpp"

namespace ppc {

namespace {

std::vector<std::size_t> sort_order(std::span<const double> pred) {
    std::vector<std::size_t> order(pred.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pred[a] < pred[b]; });
    return order;
}

struct Block {
    long sum;
    long count;
    double pred_first;
};

// Classic stack-based PAV over pre-pooled tie blocks.
void pav_blocks(std::span<const double> pred, const std::vector<std::size_t>& order,
                std::span<const int> outcome, std::vector<Block>& blocks) {
    blocks.clear();
    std::size_t i = 0;
    const std::size_t n = order.size();
    while (i < n) {
        std::size_t j = i;
        long sum = outcome[order[i]];
        while (j + 1 < n && pred[order[j + 1]] == pred[order[i]]) {
            ++j;
            sum += outcome[order[j]];
        }
        Block b{sum, static_cast<long>(j - i + 1), pred[order[i]]};
        while (!blocks.empty() &&
               blocks.back().sum * b.count >= b.sum * blocks.back().count) {
            // merge when the previous block mean is >= the new one (integer cross product)
            b.sum += blocks.back().sum;
            b.count += blocks.back().count;
            b.pred_first = blocks.back().pred_first;
            blocks.pop_back();
        }
        blocks.push_back(b);
        i = j + 1;
    }
}

}  // namespace

std::vector<double> IsotonicFit::cep_by_observation() const {
    std::vector<double> out(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) out[order[i]] = cep[i];
    return out;
}

IsotonicFit pav_isotonic(std::span<const double> pred, std::span<const int> outcome) {
    if (pred.size() != outcome.size()) throw DataError("pred/outcome length mismatch");
    if (pred.empty()) throw DataError("isotonic regression needs at least one observation");

    IsotonicFit fit;
    fit.order = sort_order(pred);
    fit.sorted_pred.resize(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) fit.sorted_pred[i] = pred[fit.order[i]];

    std::vector<Block> blocks;
    pav_blocks(pred, fit.order, outcome, blocks);

    fit.cep.resize(pred.size());
    fit.block_index.resize(pred.size());
    std::size_t pos = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        fit.block_sum.push_back(blocks[b].sum);
        fit.block_count.push_back(blocks[b].count);
        const double mean = static_cast<double>(blocks[b].sum) / static_cast<double>(blocks[b].count);
        for (long k = 0; k < blocks[b].count; ++k, ++pos) {
            fit.cep[pos] = mean;
            fit.block_index[pos] = b;
        }
    }
    return fit;
}

namespace detail {

namespace {

void draw_ceps(std::span<const double> pred, const std::vector<std::size_t>& order,
               const std::vector<int>& outcome, std::vector<Block>& scratch, double* out) {
    pav_blocks(pred, order, outcome, scratch);
    std::size_t pos = 0;
    for (const Block& b : scratch) {
        const double mean = static_cast<double>(b.sum) / static_cast<double>(b.count);
        for (long k = 0; k < b.count; ++k, ++pos) out[pos] = mean;
    }
}

}  // namespace

std::vector<double> band_ceps_serial(std::span<const double> pred,
                                     const std::vector<std::vector<int>>& outcomes) {
    const auto order = sort_order(pred);
    const std::size_t n = pred.size();
    std::vector<double> ceps(outcomes.size() * n);
    std::vector<Block> scratch;
    for (std::size_t s = 0; s < outcomes.size(); ++s)
        draw_ceps(pred, order, outcomes[s], scratch, ceps.data() + s * n);
    return ceps;
}

std::vector<double> band_ceps_parallel(std::span<const double> pred,
                                       const std::vector<std::vector<int>>& outcomes) {
    const auto order = sort_order(pred);
    const std::size_t n = pred.size();
    std::vector<double> ceps(outcomes.size() * n);
#pragma omp parallel
    {
        std::vector<Block> scratch;
#pragma omp for schedule(static)
        for (long long s = 0; s < static_cast<long long>(outcomes.size()); ++s)
            draw_ceps(pred, order, outcomes[static_cast<std::size_t>(s)], scratch,
                      ceps.data() + static_cast<std::size_t>(s) * n);
    }
    return ceps;
}

}  // namespace detail

CalibrationCurve binned_calibration(const BinaryPredictionTable& table, int n_bins, double level) {
    table.validate();
    if (n_bins < 1) throw DataError("binned calibration needs at least one bin");
    const std::size_t n = table.size();

    CalibrationCurve curve;
    curve.kind = CalibrationCurve::Kind::Binned;
    for (int b = 0; b < n_bins; ++b) {
        const double lo = static_cast<double>(b) / n_bins;
        const double hi = static_cast<double>(b + 1) / n_bins;
        double pred_sum = 0.0;
        int events = 0, count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double p = table.predicted_prob[i];
            const bool in_bin = b + 1 == n_bins ? (p >= lo && p <= hi) : (p >= lo && p < hi);
            if (!in_bin) continue;
            pred_sum += p;
            events += table.outcome[i];
            ++count;
        }
        if (count == 0) continue;  // empty bins are omitted
        curve.x.push_back(pred_sum / count);
        curve.y.push_back(static_cast<double>(events) / count);
        const auto iv = stats::clopper_pearson(events, count, level);
        curve.interval_lo.push_back(iv.lo);
        curve.interval_hi.push_back(iv.hi);
        curve.outside_flags.push_back(false);
    }
    return curve;
}

CalibrationCurve pav_calibration_plot(const BinaryPredictionTable& table, const PavConfig& config) {
    table.validate();
    const std::size_t n = table.size();

    CalibrationCurve curve;
    curve.kind = CalibrationCurve::Kind::Pav;
    const IsotonicFit fit = pav_isotonic(table.predicted_prob, table.outcome);
    curve.x = fit.sorted_pred;
    curve.y = fit.cep;

    // simulated outcome sets for the consistency bands
    std::vector<std::vector<int>> outcomes;
    std::size_t s_draws;
    if (table.predictive_outcome_draws) {
        s_draws = table.predictive_outcome_draws->n_draws;
        outcomes.resize(s_draws);
        for (std::size_t s = 0; s < s_draws; ++s) {
            const auto row = table.predictive_outcome_draws->row(s);
            outcomes[s].resize(n);
            for (std::size_t i = 0; i < n; ++i) outcomes[s][i] = row[i] != 0.0 ? 1 : 0;
        }
    } else {
        s_draws = config.resample_draws;
        outcomes.resize(s_draws);
        for (std::size_t s = 0; s < s_draws; ++s) {
            Rng rng(derive_seed(config.seed, s));
            outcomes[s].resize(n);
            for (std::size_t i = 0; i < n; ++i)
                outcomes[s][i] = rng.uniform() < table.predicted_prob[i] ? 1 : 0;
        }
    }
    if (s_draws == 0) return curve;

    const auto ceps = config.parallel ? detail::band_ceps_parallel(table.predicted_prob, outcomes)
                                      : detail::band_ceps_serial(table.predicted_prob, outcomes);

    curve.has_bands = true;
    curve.bands.level = config.level;
    curve.bands.draws_used = s_draws;
    curve.bands.at_pred = fit.sorted_pred;
    curve.bands.lo.resize(n);
    curve.bands.hi.resize(n);

    // column-sorted copy of the draw CEPs for quantile lookups
    std::vector<double> sorted_cols(ceps.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t s = 0; s < s_draws; ++s) sorted_cols[i * s_draws + s] = ceps[s * n + i];
        std::sort(sorted_cols.begin() + static_cast<std::ptrdiff_t>(i * s_draws),
                  sorted_cols.begin() + static_cast<std::ptrdiff_t>((i + 1) * s_draws));
    }
    auto fill_bands = [&](double tail) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::span<const double> col{sorted_cols.data() + i * s_draws, s_draws};
            curve.bands.lo[i] = stats::quantile_type7(col, tail);
            curve.bands.hi[i] = stats::quantile_type7(col, 1.0 - tail);
        }
    };
    // fraction of simulated curves lying fully inside the current bands
    auto contained = [&](void) {
        std::size_t inside = 0;
        for (std::size_t s = 0; s < s_draws; ++s) {
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
                const double v = ceps[s * n + i];
                ok = v >= curve.bands.lo[i] - 1e-12 && v <= curve.bands.hi[i] + 1e-12;
            }
            inside += ok;
        }
        return static_cast<double>(inside) / static_cast<double>(s_draws);
    };

    // Pointwise quantile bands at tail (1-level)/2 exit somewhere on the curve
    // far more often than 1-level. Widen the bands by shrinking the tail until
    // a `level` fraction of the simulated curves stay inside throughout,
    // mirroring the simultaneous adjustment used for the ECDF bands.
    const double tail_max = (1.0 - config.level) / 2.0;
    fill_bands(tail_max);
    double tail = tail_max;
    if (contained() < config.level) {
        double lo_t = 0.0, hi_t = tail_max;
        while (hi_t - lo_t > 1e-4 * tail_max) {
            const double mid = 0.5 * (lo_t + hi_t);
            fill_bands(mid);
            if (contained() >= config.level)
                lo_t = mid;
            else
                hi_t = mid;
        }
        tail = lo_t;
        fill_bands(tail);
    }
    curve.bands.gamma = 2.0 * tail;
    curve.interval_lo = curve.bands.lo;
    curve.interval_hi = curve.bands.hi;
    curve.outside_flags.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        curve.outside_flags[i] =
            curve.y[i] < curve.bands.lo[i] - 1e-12 || curve.y[i] > curve.bands.hi[i] + 1e-12;
    return curve;
}

ResidualPlot pav_residuals(const BinaryPredictionTable& table, std::span<const double> covariate,
                           const CalibrationCurve& curve) {
    table.validate();
    const std::size_t n = table.size();
    if (covariate.size() != n) throw DataError("covariate length mismatch");
    if (curve.kind != CalibrationCurve::Kind::Pav || curve.x.size() != n)
        throw DataError("residuals need the PAV curve of the same table");

    const IsotonicFit fit = pav_isotonic(table.predicted_prob, table.outcome);
    const auto cep = fit.cep_by_observation();

    ResidualPlot out;
    out.residuals.resize(n);
    out.flags.assign(n, false);
    // flags inherited from the curve, mapped back to observation order
    for (std::size_t i = 0; i < n; ++i) {
        out.residuals[fit.order[i]] = cep[fit.order[i]] - table.predicted_prob[fit.order[i]];
        if (!curve.outside_flags.empty()) out.flags[fit.order[i]] = curve.outside_flags[i];
    }

    out.plot.title = "PAV-adjusted residuals";
    out.plot.x_label = "covariate";
    out.plot.y_label = "CEP - predicted probability";
    Layer pts;
    pts.kind = Layer::Kind::Points;
    pts.name = "residuals";
    pts.color = "#204a87";
    pts.x.assign(covariate.begin(), covariate.end());
    pts.y = out.residuals;
    pts.flags = out.flags;
    out.plot.layers.push_back(std::move(pts));
    return out;
}

namespace {

BinaryPredictionTable binary_reduction(std::span<const double> probs,
                                       const std::vector<int>& outcome) {
    BinaryPredictionTable b;
    b.predicted_prob.assign(probs.begin(), probs.end());
    b.outcome = outcome;
    return b;
}

}  // namespace

std::vector<CalibrationCurve> ovo_calibration(const CategoricalPredictionTable& table,
                                              const PavConfig& config) {
    table.validate();
    std::vector<CalibrationCurve> curves;
    for (std::size_t m = 0; m < table.n_categories; ++m) {
        std::vector<double> probs(table.n_rows);
        std::vector<int> outcome(table.n_rows);
        for (std::size_t i = 0; i < table.n_rows; ++i) {
            probs[i] = table.row(i)[m];
            outcome[i] = table.outcome[i] == static_cast<int>(m) + 1 ? 1 : 0;
        }
        auto curve = pav_calibration_plot(binary_reduction(probs, outcome), config);
        curve.label = "category " + std::to_string(m + 1);
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::vector<CalibrationCurve> cumulative_ordinal_calibration(const CategoricalPredictionTable& table,
                                                             const PavConfig& config) {
    table.validate();
    if (!table.ordered) throw DataError("cumulative calibration needs an ordered categorical table");
    std::vector<CalibrationCurve> curves;
    std::vector<double> cum(table.n_rows, 0.0);
    for (std::size_t m = 0; m + 1 < table.n_categories; ++m) {
        std::vector<int> outcome(table.n_rows);
        for (std::size_t i = 0; i < table.n_rows; ++i) {
            cum[i] += table.row(i)[m];
            outcome[i] = table.outcome[i] <= static_cast<int>(m) + 1 ? 1 : 0;
        }
        auto curve = pav_calibration_plot(binary_reduction(cum, outcome), config);
        curve.label = "y <= " + std::to_string(m + 1);
        curves.push_back(std::move(curve));
    }
    return curves;
}

PlotSpec bar_check(const CountFrequencyTable& table) {
    PlotSpec plot;
    plot.title = "Bar check";
    plot.x_label = "value";
    plot.y_label = "frequency";

    Layer bars;
    bars.kind = Layer::Kind::Bars;
    bars.name = "observed";
    bars.color = "#c4d7ee";
    bars.width = 0.8;
    Layer means;
    means.kind = Layer::Kind::Points;
    means.name = "predictive mean";
    means.color = "#204a87";
    Layer intervals;
    intervals.kind = Layer::Kind::Intervals;
    intervals.name = "predictive interval";
    intervals.color = "#204a87";
    for (std::size_t c = 0; c < table.counts.size(); ++c) {
        const double x = static_cast<double>(table.counts[c]);
        bars.x.push_back(x);
        bars.y.push_back(static_cast<double>(table.observed_freq[c]));
        means.x.push_back(x);
        means.y.push_back(table.predictive_mean[c]);
        intervals.x.push_back(x);
        intervals.y.push_back(table.interval_lo[c]);
        intervals.y2.push_back(table.interval_hi[c]);
    }
    plot.layers = {std::move(bars), std::move(intervals), std::move(means)};
    return plot;
}

PlotSpec calibration_plot_spec(const CalibrationCurve& curve) {
    PlotSpec plot;
    plot.title = curve.kind == CalibrationCurve::Kind::Pav ? "PAV-adjusted calibration"
                                                           : "Binned calibration";
    if (!curve.label.empty()) plot.title += " (" + curve.label + ")";
    plot.x_label = "predicted probability";
    plot.y_label = "conditional event probability";

    Layer diag;
    diag.kind = Layer::Kind::Line;
    diag.name = "diagonal";
    diag.color = "#888a85";
    diag.x = {0.0, 1.0};
    diag.y = {0.0, 1.0};
    plot.layers.push_back(std::move(diag));

    if (!curve.interval_lo.empty()) {
        Layer band;
        band.kind = curve.kind == CalibrationCurve::Kind::Pav ? Layer::Kind::Ribbon
                                                              : Layer::Kind::Intervals;
        band.name = curve.kind == CalibrationCurve::Kind::Pav ? "consistency band" : "binomial interval";
        band.color = "#9bb9dc";
        band.opacity = 0.5;
        band.x = curve.x;
        band.y = curve.interval_lo;
        band.y2 = curve.interval_hi;
        plot.layers.push_back(std::move(band));
    }

    Layer line;
    line.kind = curve.kind == CalibrationCurve::Kind::Pav ? Layer::Kind::Line : Layer::Kind::Points;
    line.name = "calibration";
    line.color = "#204a87";
    line.x = curve.x;
    line.y = curve.y;
    line.flags = curve.outside_flags;
    plot.layers.push_back(std::move(line));
    return plot;
}

}  // namespace ppc
