#include "ppc/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "ppc/rng.hpp"
#include "ppc/stats.hpp"

namespace ppc {

EcdfEvaluation ecdf_at(const PitSet& pits, std::size_t k_points) {
    if (k_points < 1) throw DataError("ECDF needs at least one evaluation point");
    EcdfEvaluation ev;
    ev.n = pits.values.size();
    ev.points.resize(k_points);
    ev.ecdf.resize(k_points);
    const auto sorted = stats::sorted_copy(pits.values);
    for (std::size_t k = 0; k < k_points; ++k) {
        const double z = static_cast<double>(k + 1) / static_cast<double>(k_points);
        ev.points[k] = z;
        const auto cnt = std::upper_bound(sorted.begin(), sorted.end(), z) - sorted.begin();
        ev.ecdf[k] = static_cast<double>(cnt) / static_cast<double>(ev.n);
    }
    return ev;
}

namespace detail {

namespace {

// Bucket-count an N-point uniform replicate at the K equidistant points.
void replicate_counts(std::size_t n, std::size_t k_points, std::uint64_t seed, int* out) {
    Rng rng(seed);
    std::vector<int> bucket(k_points, 0);
    const double kd = static_cast<double>(k_points);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform();
        auto b = static_cast<std::size_t>(u * kd);  // u < 1 so b < k_points
        ++bucket[b];
    }
    int run = 0;
    for (std::size_t k = 0; k < k_points; ++k) {
        run += bucket[k];
        out[k] = run;
    }
}

}  // namespace

std::vector<int> simulate_counts_serial(std::size_t n, std::size_t k_points, std::size_t replicates,
                                        std::uint64_t seed) {
    std::vector<int> counts(replicates * k_points);
    for (std::size_t r = 0; r < replicates; ++r)
        replicate_counts(n, k_points, derive_seed(seed, r), counts.data() + r * k_points);
    return counts;
}

std::vector<int> simulate_counts_parallel(std::size_t n, std::size_t k_points, std::size_t replicates,
                                          std::uint64_t seed) {
    std::vector<int> counts(replicates * k_points);
#pragma omp parallel for schedule(static)
    for (long long r = 0; r < static_cast<long long>(replicates); ++r)
        replicate_counts(n, k_points, derive_seed(seed, static_cast<std::uint64_t>(r)),
                         counts.data() + static_cast<std::size_t>(r) * k_points);
    return counts;
}

}  // namespace detail

namespace {

struct BandCounts {
    std::vector<int> lower;  // inclusive count bounds per evaluation point
    std::vector<int> upper;
};

BandCounts band_counts(std::size_t n, std::size_t k_points, double gamma) {
    BandCounts bc;
    bc.lower.resize(k_points);
    bc.upper.resize(k_points);
    const int ni = static_cast<int>(n);
    for (std::size_t k = 0; k < k_points; ++k) {
        const double z = static_cast<double>(k + 1) / static_cast<double>(k_points);
        bc.lower[k] = stats::binom_quantile(gamma / 2.0, ni, z);
        bc.upper[k] = stats::binom_quantile(1.0 - gamma / 2.0, ni, z);
    }
    return bc;
}

double exit_fraction(const std::vector<int>& counts, std::size_t k_points, const BandCounts& bands) {
    const std::size_t replicates = counts.size() / k_points;
    std::size_t exits = 0;
    for (std::size_t r = 0; r < replicates; ++r) {
        const int* row = counts.data() + r * k_points;
        for (std::size_t k = 0; k < k_points; ++k) {
            if (row[k] < bands.lower[k] || row[k] > bands.upper[k]) {
                ++exits;
                break;
            }
        }
    }
    return static_cast<double>(exits) / static_cast<double>(replicates);
}

std::map<std::tuple<std::size_t, std::size_t, double>, double> gamma_cache;
std::mutex gamma_cache_mutex;

}  // namespace

double calibrate_gamma(std::size_t n, std::size_t k_points, double alpha,
                       const CalibrationConfig& config) {
    if (n < 1 || k_points < 1) throw DataError("calibration needs N >= 1 and K >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DataError("alpha must lie in (0,1)");

    const auto key = std::make_tuple(n, k_points, alpha);
    {
        std::lock_guard lock(gamma_cache_mutex);
        const auto it = gamma_cache.find(key);
        if (it != gamma_cache.end()) return it->second;
    }

    const auto counts = config.parallel
                            ? detail::simulate_counts_parallel(n, k_points, config.replicates, config.seed)
                            : detail::simulate_counts_serial(n, k_points, config.replicates, config.seed);

    auto rejects = [&](double g) {
        return exit_fraction(counts, k_points, band_counts(n, k_points, g));
    };

    double gamma;
    if (rejects(alpha) <= alpha) {
        gamma = alpha;  // pointwise already simultaneous (e.g. K == 1)
    } else {
        double lo = 0.0, hi = alpha;
        while (hi - lo > config.tolerance) {
            const double mid = 0.5 * (lo + hi);
            if (rejects(mid) <= alpha)
                lo = mid;
            else
                hi = mid;
        }
        gamma = lo;
    }

    std::lock_guard lock(gamma_cache_mutex);
    gamma_cache.emplace(key, gamma);
    return gamma;
}

SimultaneousBands simultaneous_bands(std::size_t n, std::size_t k_points, double alpha,
                                     const CalibrationConfig& config) {
    SimultaneousBands bands;
    bands.alpha = alpha;
    bands.gamma = calibrate_gamma(n, k_points, alpha, config);
    bands.k_points = k_points;
    bands.n = n;
    const BandCounts bc = band_counts(n, k_points, bands.gamma);
    bands.lower.resize(k_points);
    bands.upper.resize(k_points);
    for (std::size_t k = 0; k < k_points; ++k) {
        bands.lower[k] = static_cast<double>(bc.lower[k]) / static_cast<double>(n);
        bands.upper[k] = static_cast<double>(bc.upper[k]) / static_cast<double>(n);
    }
    return bands;
}

GofVerdict gof_test(const PitSet& pits, double alpha, std::optional<std::size_t> k_points,
                    EcdfStyle style, const CalibrationConfig& config) {
    const std::size_t n = pits.values.size();
    if (n < 1) throw DataError("goodness-of-fit test needs at least one PIT value");
    const std::size_t k = k_points.value_or(std::min<std::size_t>(n, 100));

    GofVerdict verdict;
    verdict.style = style;
    verdict.ecdf = ecdf_at(pits, k);
    verdict.bands = simultaneous_bands(n, k, alpha, config);
    for (std::size_t i = 0; i < k; ++i) {
        const double e = verdict.ecdf.ecdf[i];
        if (e < verdict.bands.lower[i] - 1e-12 || e > verdict.bands.upper[i] + 1e-12) {
            verdict.pass = false;
            verdict.first_exit = FirstExit{verdict.ecdf.points[i], e > verdict.bands.upper[i]};
            break;
        }
    }
    return verdict;
}

}  // namespace ppc
