#include "ppc/detect.hpp"

#include <algorithm>
#include <cmath>

#include "ppc/stats.hpp"

namespace ppc {

DataDiagnosis detect_discrete(const ObservationSample& sample, const DetectConfig& config) {
    sample.validate();
    const auto sorted = stats::sorted_copy(sample.values);
    const double n = static_cast<double>(sorted.size());

    DataDiagnosis diag;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double rel = static_cast<double>(j - i + 1) / n;
        diag.max_rel_freq = std::max(diag.max_rel_freq, rel);
        if (j > i && rel > config.point_mass_threshold) diag.point_mass_values.push_back(sorted[i]);
        ++diag.n_unique;
        i = j + 1;
    }
    diag.discrete_flag = !diag.point_mass_values.empty();
    return diag;
}

Bounds detect_bounds(const ObservationSample& sample, const DetectConfig& config) {
    sample.validate();
    Bounds bounds;
    const auto n = sample.size();
    if (n < 10) return bounds;
    const auto sorted = stats::sorted_copy(sample.values);
    const double range = sorted.back() - sorted.front();
    if (range <= 0.0) return bounds;

    const auto m = std::min<std::size_t>(static_cast<std::size_t>(config.edge_gaps), n - 2);
    double left_gap = 0.0, right_gap = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        left_gap += sorted[k + 1] - sorted[k];
        right_gap += sorted[n - 1 - k] - sorted[n - 2 - k];
    }
    left_gap /= static_cast<double>(m);
    right_gap /= static_cast<double>(m);

    const double scale = static_cast<double>(n) / range;
    if (left_gap * scale < config.gap_threshold) bounds.left = sorted.front();
    if (right_gap * scale < config.gap_threshold) bounds.right = sorted.back();
    return bounds;
}

DataDiagnosis diagnose(const ObservationSample& sample, const DetectConfig& config) {
    DataDiagnosis diag = detect_discrete(sample, config);
    const Bounds b = detect_bounds(sample, config);
    diag.left_bound = b.left;
    diag.right_bound = b.right;
    return diag;
}

}  // namespace ppc
