#pragma once

#include <optional>

#include "ppc/data.hpp"
#include "ppc/plot.hpp"

namespace ppc {

struct CountFrequencyTable {
    std::vector<long> counts;             // 0..c_max
    std::vector<long> observed_freq;      // per count
    std::vector<double> predictive_freq;  // row-major S x (c_max+1)
    std::size_t n_draws = 0;
    std::vector<double> predictive_mean;
    std::vector<double> interval_lo;
    std::vector<double> interval_hi;
    double interval_mass = 0.9;
    std::size_t n = 0;

    std::span<const double> draw_row(std::size_t s) const {
        return {predictive_freq.data() + s * counts.size(), counts.size()};
    }
};

enum class RootogramStyle { Standing, Hanging, Suspended, Discrete };

struct RootogramSpec {
    RootogramStyle style = RootogramStyle::Discrete;
    double interval_mass = 0.9;
    bool sqrt_differences = true;  // hanging/suspended operate on the sqrt scale
};

// Tabulates observed and per-draw predictive frequencies for counts
// 0..c_max. All values must be nonnegative integers.
CountFrequencyTable count_frequencies(const ObservationSample& obs, const PredictiveDraws& draws,
                                      std::optional<long> c_max = std::nullopt,
                                      double interval_mass = 0.9);

struct RootogramResult {
    PlotSpec plot;
    // counts whose observed frequency falls outside the predictive interval
    std::vector<long> flagged_counts;
};

RootogramResult rootogram(const CountFrequencyTable& table, const RootogramSpec& spec);

}  // namespace ppc
