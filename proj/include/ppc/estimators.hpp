#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ppc/data.hpp"

namespace ppc {

struct Bounds {
    std::optional<double> left;
    std::optional<double> right;
};

struct KdeEstimate {
    double bandwidth = 0.0;
    std::vector<double> data;
    double display_lo = 0.0;
    double display_hi = 0.0;
    Bounds boundary;  // reflection bounds actually applied
    std::vector<double> grid;
    std::vector<double> density;
    std::vector<double> cumulative;  // trapezoid CDF on the grid, cumulative.back() == 1
    double normalization = 1.0;      // raw trapezoid mass before renormalizing
    bool bandwidth_fallback = false;
};

struct HistogramEstimate {
    double bin_width = 0.0;
    std::vector<double> edges;      // B+1
    std::vector<double> densities;  // B, count / (N * h)
    std::vector<long> counts;
    bool rule_fallback = false;  // zero IQR forced bins(ceil(sqrt(N)))
};

struct QuantileDotPlot {
    int n_q = 100;
    std::vector<double> quantiles;
    std::vector<double> centers;  // nondecreasing, one per dot
    double radius = 0.0;
    std::vector<int> stack_heights;
    std::vector<double> stack_centers;
};

using DensityEstimate = std::variant<KdeEstimate, HistogramEstimate, QuantileDotPlot>;

struct BandwidthResult {
    double value = 0.0;
    bool fallback = false;  // SJ bracketing failed, Silverman used instead
};

// h = 0.9 * min(sd, IQR/1.34) * N^(-1/5)
double bandwidth_silverman(const ObservationSample& sample);

// Sheather-Jones solve-the-equation plug-in, bracketed root search on
// [silverman/10, 10*silverman]. Falls back to Silverman when no bracket exists.
BandwidthResult bandwidth_sj(const ObservationSample& sample);

enum class BandwidthRule { Silverman, SheatherJones };
enum class BoundaryMode { None, Reflect, Auto };

struct KdeConfig {
    std::variant<BandwidthRule, double> bandwidth = BandwidthRule::SheatherJones;
    BoundaryMode boundary = BoundaryMode::None;
    Bounds declared_bounds;  // used when boundary == Reflect
    int grid_size = 512;
};

KdeEstimate fit_kde(const ObservationSample& sample, const KdeConfig& config = {});

struct HistogramRule {
    enum class Kind { FreedmanDiaconis, Bins, Width } kind = Kind::FreedmanDiaconis;
    int bins = 0;
    double width = 0.0;

    static HistogramRule fd() { return {}; }
    static HistogramRule fixed_bins(int k) { return {Kind::Bins, k, 0.0}; }
    static HistogramRule fixed_width(double h) { return {Kind::Width, 0, h}; }
};

HistogramEstimate fit_histogram(const ObservationSample& sample, HistogramRule rule = {});

QuantileDotPlot fit_qdot(const ObservationSample& sample, int n_q = 100,
                         std::optional<double> binwidth = std::nullopt);

}  // namespace ppc
