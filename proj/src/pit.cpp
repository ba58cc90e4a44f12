#include "ppc/pit.hpp"

#include <algorithm>
#include <cmath>

namespace ppc {

double pit_kde(const KdeEstimate& est, double x) {
    if (x <= est.display_lo) return 0.0;
    if (x >= est.display_hi) return 1.0;
    const auto& g = est.grid;
    const auto i = static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), x) - g.begin()) - 1;
    const double t = (x - g[i]) / (g[i + 1] - g[i]);
    const double fx = est.density[i] + t * (est.density[i + 1] - est.density[i]);
    const double u = est.cumulative[i] + 0.5 * (est.density[i] + fx) * (x - g[i]);
    return std::clamp(u, 0.0, 1.0);
}

double pit_histogram(const HistogramEstimate& est, double x) {
    if (x <= est.edges.front()) return 0.0;
    if (x >= est.edges.back()) return 1.0;
    const auto& e = est.edges;
    const auto j = static_cast<std::size_t>(std::upper_bound(e.begin(), e.end(), x) - e.begin()) - 1;
    double u = 0.0;
    for (std::size_t k = 0; k < j; ++k) u += est.bin_width * est.densities[k];
    u += (x - e[j]) * est.densities[j];
    return std::clamp(u, 0.0, 1.0);
}

double pit_qdot(const QuantileDotPlot& est, double x, Rng& rng) {
    const auto& c = est.centers;
    const double r = est.radius;
    const auto n_q = static_cast<double>(est.n_q);
    if (x > c.back() + r) return 1.0;

    // dots with |c_k - x| <= r; centers are nondecreasing
    const auto ov_lo = std::lower_bound(c.begin(), c.end(), x - r);
    const auto ov_hi = std::upper_bound(c.begin(), c.end(), x + r);
    double lo_idx, hi_idx;
    if (ov_lo != ov_hi) {
        lo_idx = static_cast<double>(ov_lo - c.begin());
        hi_idx = static_cast<double>(ov_hi - c.begin());
    } else {
        // strictly between stacks (or left of all dots)
        lo_idx = static_cast<double>(ov_lo - c.begin());
        hi_idx = lo_idx + (lo_idx < static_cast<double>(c.size()) ? 1.0 : 0.0);
    }
    const double alpha = rng.uniform_open();
    return (lo_idx + alpha * (hi_idx - lo_idx)) / n_q;
}

double pit_randomized_discrete(const std::map<double, double>& cdf, double x, Rng& rng) {
    const auto it = cdf.find(x);
    if (it == cdf.end()) throw DataError("value not in the discrete support");
    const double upper = it->second;
    const double lower = it == cdf.begin() ? 0.0 : std::prev(it)->second;
    const double alpha = rng.uniform_open();
    return alpha * upper + (1.0 - alpha) * lower;
}

PitSet pit_sample(const DensityEstimate& est, const ObservationSample& sample, std::uint64_t seed) {
    sample.validate();
    PitSet pits;
    pits.values.resize(sample.size());
    if (const auto* kde = std::get_if<KdeEstimate>(&est)) {
        pits.source = "kde";
        for (std::size_t i = 0; i < sample.size(); ++i) pits.values[i] = pit_kde(*kde, sample.values[i]);
    } else if (const auto* hist = std::get_if<HistogramEstimate>(&est)) {
        pits.source = "histogram";
        for (std::size_t i = 0; i < sample.size(); ++i)
            pits.values[i] = pit_histogram(*hist, sample.values[i]);
    } else {
        const auto& qd = std::get<QuantileDotPlot>(est);
        pits.source = "qdot";
        pits.randomized = true;
        pits.seed = seed;
        for (std::size_t i = 0; i < sample.size(); ++i) {
            Rng rng(derive_seed(seed, i));
            pits.values[i] = pit_qdot(qd, sample.values[i], rng);
        }
    }
    return pits;
}

PitSet pit_from_cdf_values(const std::vector<double>& values) {
    for (double v : values)
        if (!(v >= 0.0 && v <= 1.0)) throw DataError("PIT value outside [0,1]");
    PitSet pits;
    pits.values = values;
    pits.source = "external";
    return pits;
}

}  // namespace ppc
