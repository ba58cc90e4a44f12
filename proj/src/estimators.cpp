#include "ppc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ppc/detect.hpp"
#include "ppc/stats.hpp"

namespace ppc {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

struct SpreadInfo {
    double sd;
    double iqr;
};

SpreadInfo spread(const std::vector<double>& sorted) {
    return {stats::sample_sd(sorted), stats::iqr(sorted)};
}

}  // namespace

double bandwidth_silverman(const ObservationSample& sample) {
    sample.validate();
    const auto n = sample.size();
    if (n < 2) throw DataError("Silverman bandwidth needs at least two observations");
    const auto sorted = stats::sorted_copy(sample.values);
    const auto [sd, iqr] = spread(sorted);
    double scale = std::min(sd, iqr / 1.34);
    if (scale <= 0.0) scale = std::max(sd, iqr / 1.34);
    if (scale <= 0.0) throw DataError("degenerate sample: zero spread");
    return 0.9 * scale * std::pow(static_cast<double>(n), -0.2);
}

namespace {

// Binned pair-distance counts make each plug-in functional evaluation O(nb)
// instead of O(n^2).
struct PairCounts {
    std::vector<double> cnt;  // cnt[k]: number of (i<j) pairs at binned distance k
    double delta = 0.0;       // distance represented by one bin step
};

PairCounts pair_counts(const std::vector<double>& x, int nb) {
    PairCounts pc;
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    const double range = (*mx - *mn) * 1.01;
    pc.delta = range / nb;
    std::vector<double> binned(static_cast<std::size_t>(nb), 0.0);
    for (double v : x) {
        int b = static_cast<int>((v - *mn) / pc.delta);
        b = std::clamp(b, 0, nb - 1);
        binned[static_cast<std::size_t>(b)] += 1.0;
    }
    pc.cnt.assign(static_cast<std::size_t>(nb), 0.0);
    for (int i = 0; i < nb; ++i) {
        if (binned[i] == 0.0) continue;
        pc.cnt[0] += binned[i] * (binned[i] - 1.0) / 2.0;
        for (int j = i + 1; j < nb; ++j) pc.cnt[j - i] += binned[i] * binned[j];
    }
    return pc;
}

double phi4_sum(const PairCounts& pc, double n, double h) {
    double sum = 0.0;
    for (std::size_t k = 0; k < pc.cnt.size(); ++k) {
        if (pc.cnt[k] == 0.0) continue;
        const double u = static_cast<double>(k) * pc.delta / h;
        const double u2 = u * u;
        sum += (u2 * u2 - 6.0 * u2 + 3.0) * std::exp(-0.5 * u2) * pc.cnt[k];
    }
    sum = 2.0 * sum + n * 3.0;
    return sum / (n * (n - 1.0) * std::pow(h, 5.0) * kSqrt2Pi);
}

double phi6_sum(const PairCounts& pc, double n, double h) {
    double sum = 0.0;
    for (std::size_t k = 0; k < pc.cnt.size(); ++k) {
        if (pc.cnt[k] == 0.0) continue;
        const double u = static_cast<double>(k) * pc.delta / h;
        const double u2 = u * u;
        sum += ((u2 * u2 * u2) - 15.0 * u2 * u2 + 45.0 * u2 - 15.0) * std::exp(-0.5 * u2) * pc.cnt[k];
    }
    sum = 2.0 * sum - n * 15.0;
    return sum / (n * (n - 1.0) * std::pow(h, 7.0) * kSqrt2Pi);
}

}  // namespace

BandwidthResult bandwidth_sj(const ObservationSample& sample) {
    sample.validate();
    const auto n_sz = sample.size();
    if (n_sz < 4) throw DataError("Sheather-Jones bandwidth needs at least four observations");
    const double hs = bandwidth_silverman(sample);
    const double n = static_cast<double>(n_sz);

    const auto sorted = stats::sorted_copy(sample.values);
    const auto [sd, iqr] = spread(sorted);
    double scale = std::min(sd, iqr / 1.349);
    if (scale <= 0.0) scale = std::max(sd, iqr / 1.349);

    const int nb = n_sz > 1000 ? 1000 : static_cast<int>(n_sz);
    const PairCounts pc = pair_counts(sample.values, nb);

    const double a = 0.92 * scale * std::pow(n, -1.0 / 7.0);
    const double b = 0.912 * scale * std::pow(n, -1.0 / 9.0);
    const double td = -phi6_sum(pc, n, b);
    if (!(td > 0.0) || !std::isfinite(td)) return {hs, true};
    const double sda = phi4_sum(pc, n, a);
    if (!(sda > 0.0) || !std::isfinite(sda)) return {hs, true};

    const double alph2 = 1.357 * std::pow(sda / td, 1.0 / 7.0);
    const double c1 = 1.0 / (2.0 * std::sqrt(M_PI) * n);
    auto objective = [&](double h) {
        const double sdh = phi4_sum(pc, n, alph2 * std::pow(h, 5.0 / 7.0));
        if (!(sdh > 0.0)) return -h;  // push the root search toward smaller h
        return std::pow(c1 / sdh, 0.2) - h;
    };

    double lo = hs / 10.0, hi = hs * 10.0;
    double flo = objective(lo), fhi = objective(hi);
    if (flo * fhi > 0.0) return {hs, true};
    const double tol = 1e-6 * hs;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = objective(mid);
        if (flo * fmid <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return {0.5 * (lo + hi), false};
}

namespace {

// Gaussian kernel sum over sorted data; kernels beyond 8 bandwidths are dropped.
double kernel_sum(const std::vector<double>& sorted, double t, double h) {
    const double cut = 8.0 * h;
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), t - cut);
    const auto hi = std::upper_bound(sorted.begin(), sorted.end(), t + cut);
    double s = 0.0;
    for (auto it = lo; it != hi; ++it) {
        const double u = (t - *it) / h;
        s += std::exp(-0.5 * u * u);
    }
    return s / (static_cast<double>(sorted.size()) * h * kSqrt2Pi);
}

}  // namespace

KdeEstimate fit_kde(const ObservationSample& sample, const KdeConfig& config) {
    sample.validate();
    KdeEstimate est;
    est.data = sample.values;

    if (std::holds_alternative<double>(config.bandwidth)) {
        est.bandwidth = std::get<double>(config.bandwidth);
        if (!(est.bandwidth > 0.0)) throw DataError("bandwidth must be positive");
    } else if (std::get<BandwidthRule>(config.bandwidth) == BandwidthRule::Silverman) {
        est.bandwidth = bandwidth_silverman(sample);
    } else {
        const auto bw = bandwidth_sj(sample);
        est.bandwidth = bw.value;
        est.bandwidth_fallback = bw.fallback;
    }

    Bounds bounds;
    if (config.boundary == BoundaryMode::Reflect) {
        bounds = config.declared_bounds;
    } else if (config.boundary == BoundaryMode::Auto) {
        bounds = detect_bounds(sample);
    }
    est.boundary = bounds;

    const auto sorted = stats::sorted_copy(sample.values);
    const double h = est.bandwidth;
    double lo = sorted.front() - 3.0 * h;
    double hi = sorted.back() + 3.0 * h;
    if (bounds.left) lo = std::max(lo, *bounds.left);
    if (bounds.right) hi = std::min(hi, *bounds.right);
    if (!(lo < hi)) throw DataError("invalid display bounds: lo >= hi");
    est.display_lo = lo;
    est.display_hi = hi;

    const int g = std::max(config.grid_size, 2);
    est.grid.resize(static_cast<std::size_t>(g));
    est.density.resize(static_cast<std::size_t>(g));
    const double step = (hi - lo) / (g - 1);
    for (int i = 0; i < g; ++i) {
        const double t = lo + step * i;
        est.grid[static_cast<std::size_t>(i)] = t;
        double d = kernel_sum(sorted, t, h);
        if (bounds.left) d += kernel_sum(sorted, 2.0 * *bounds.left - t, h);
        if (bounds.right) d += kernel_sum(sorted, 2.0 * *bounds.right - t, h);
        est.density[static_cast<std::size_t>(i)] = d;
    }

    est.cumulative.resize(est.grid.size());
    est.cumulative[0] = 0.0;
    for (std::size_t i = 1; i < est.grid.size(); ++i)
        est.cumulative[i] = est.cumulative[i - 1] +
                            0.5 * (est.density[i] + est.density[i - 1]) * (est.grid[i] - est.grid[i - 1]);
    est.normalization = est.cumulative.back();
    for (auto& d : est.density) d /= est.normalization;
    for (auto& c : est.cumulative) c /= est.normalization;
    return est;
}

HistogramEstimate fit_histogram(const ObservationSample& sample, HistogramRule rule) {
    sample.validate();
    const auto n = sample.size();
    const auto sorted = stats::sorted_copy(sample.values);
    double range = sorted.back() - sorted.front();
    double mid = 0.5 * (sorted.front() + sorted.back());
    if (range <= 0.0) range = 1.0;

    HistogramEstimate est;
    double h = 0.0;
    int nbins = 0;
    switch (rule.kind) {
        case HistogramRule::Kind::FreedmanDiaconis: {
            if (n < 2) throw DataError("Freedman-Diaconis rule needs at least two observations");
            const double iqr = stats::iqr(sorted);
            if (iqr <= 0.0) {
                est.rule_fallback = true;
                nbins = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
                h = range / nbins;
            } else {
                h = 2.0 * iqr * std::pow(static_cast<double>(n), -1.0 / 3.0);
                nbins = static_cast<int>(std::ceil(range / h));
            }
            break;
        }
        case HistogramRule::Kind::Bins:
            if (rule.bins < 1) throw DataError("bin count must be positive");
            nbins = rule.bins;
            h = range / nbins;
            break;
        case HistogramRule::Kind::Width:
            if (!(rule.width > 0.0)) throw DataError("bin width must be positive");
            h = rule.width;
            nbins = std::max(1, static_cast<int>(std::ceil(range / h)));
            break;
    }

    est.bin_width = h;
    est.edges.resize(static_cast<std::size_t>(nbins) + 1);
    const double span = h * nbins;
    for (int j = 0; j <= nbins; ++j)
        est.edges[static_cast<std::size_t>(j)] = mid - 0.5 * span + h * j;
    // pin the outer edges so min/max always fall inside
    est.edges.front() = std::min(est.edges.front(), sorted.front());
    est.edges.back() = std::max(est.edges.back(), sorted.back());

    est.counts.assign(static_cast<std::size_t>(nbins), 0);
    for (double v : sorted) {
        auto j = static_cast<long>(std::upper_bound(est.edges.begin(), est.edges.end(), v) -
                                   est.edges.begin()) -
                 1;
        j = std::clamp<long>(j, 0, nbins - 1);
        ++est.counts[static_cast<std::size_t>(j)];
    }
    est.densities.resize(static_cast<std::size_t>(nbins));
    for (int j = 0; j < nbins; ++j)
        est.densities[static_cast<std::size_t>(j)] =
            static_cast<double>(est.counts[static_cast<std::size_t>(j)]) / (static_cast<double>(n) * h);
    return est;
}

QuantileDotPlot fit_qdot(const ObservationSample& sample, int n_q, std::optional<double> binwidth) {
    sample.validate();
    if (n_q < 1) throw DataError("quantile dot plot needs n_q >= 1");
    const auto sorted = stats::sorted_copy(sample.values);

    QuantileDotPlot est;
    est.n_q = n_q;
    est.quantiles.resize(static_cast<std::size_t>(n_q));
    for (int k = 1; k <= n_q; ++k)
        est.quantiles[static_cast<std::size_t>(k - 1)] =
            stats::quantile_type7(sorted, (static_cast<double>(k) - 0.5) / n_q);

    double bw;
    if (binwidth) {
        bw = *binwidth;
        if (!(bw > 0.0)) throw DataError("dot binwidth must be positive");
    } else {
        const double qrange = est.quantiles.back() - est.quantiles.front();
        bw = qrange > 0.0 ? qrange / 30.0 : 1.0;
    }
    est.radius = bw / 2.0;

    est.centers.resize(static_cast<std::size_t>(n_q));
    std::size_t i = 0;
    while (i < est.quantiles.size()) {
        std::size_t j = i;
        while (j + 1 < est.quantiles.size() && est.quantiles[j + 1] <= est.quantiles[i] + bw) ++j;
        const double c = 0.5 * (est.quantiles[i] + est.quantiles[j]);
        for (std::size_t k = i; k <= j; ++k) est.centers[k] = c;
        est.stack_centers.push_back(c);
        est.stack_heights.push_back(static_cast<int>(j - i + 1));
        i = j + 1;
    }
    return est;
}

}  // namespace ppc
