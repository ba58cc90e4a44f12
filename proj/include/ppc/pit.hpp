#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ppc/data.hpp"
#include "ppc/estimators.hpp"
#include "ppc/rng.hpp"

namespace ppc {

struct PitSet {
    std::vector<double> values;  // all in [0,1]
    bool randomized = false;
    std::uint64_t seed = 0;  // meaningful iff randomized
    std::string source;
};

// Trapezoid CDF of the displayed, renormalized KDE curve; 0 / 1 outside the
// display range.
double pit_kde(const KdeEstimate& est, double x);

// h * sum f_j over full bins left of x, plus the partial bin.
double pit_histogram(const HistogramEstimate& est, double x);

// Randomized PIT for the discrete dot-plot mass. Uniform on (L/n_q, U/n_q)
// where U is the largest dot overlapping x (or, with no overlap, one less than
// the first dot fully right of x, i.e. the count of dots left of x) and L is
// one less than the smallest overlapping dot (or the count of dots fully left).
// Exactly 1 for x right of every dot.
double pit_qdot(const QuantileDotPlot& est, double x, Rng& rng);

// u = alpha * P(X <= x) + (1 - alpha) * P(X < x), alpha ~ U(0,1).
// cdf maps each support point to its cumulative probability (nondecreasing,
// last value 1).
double pit_randomized_discrete(const std::map<double, double>& cdf, double x, Rng& rng);

// Elementwise PIT of a sample. Randomized variants use per-index derived seeds
// so the result is deterministic regardless of evaluation order.
PitSet pit_sample(const DensityEstimate& est, const ObservationSample& sample, std::uint64_t seed = 0);

// Wraps externally computed predictive CDF evaluations (e.g. LOO-PIT values).
PitSet pit_from_cdf_values(const std::vector<double>& values);

}  // namespace ppc
