#pragma once

#include <cstdint>
#include <vector>

#include "ppc/data.hpp"
#include "ppc/plot.hpp"
#include "ppc/rootogram.hpp"

namespace ppc {

struct IsotonicFit {
    std::vector<std::size_t> order;   // original index of each sorted position
    std::vector<double> sorted_pred;
    std::vector<double> cep;          // nondecreasing, one per sorted position
    std::vector<std::size_t> block_index;
    // exact block tallies (outcome sums are integers for binary outcomes)
    std::vector<long> block_sum;
    std::vector<long> block_count;

    // CEP values rearranged to the original observation order
    std::vector<double> cep_by_observation() const;
};

// Pool-adjacent-violators isotonic regression of outcome on pred.
// Observations with equal pred are pooled into one block up front, making the
// fit invariant to input permutation.
IsotonicFit pav_isotonic(std::span<const double> pred, std::span<const int> outcome);

struct ConsistencyBands {
    std::vector<double> at_pred;  // the sorted observed pred values
    std::vector<double> lo;
    std::vector<double> hi;
    double level = 0.95;   // simultaneous containment target
    double gamma = 0.05;   // adjusted pointwise tail mass actually used (two-sided)
    std::size_t draws_used = 0;
};

struct CalibrationCurve {
    enum class Kind { Binned, Pav };
    Kind kind = Kind::Pav;
    std::string label;
    std::vector<double> x;  // mean predicted probability (binned) / sorted pred (pav)
    std::vector<double> y;  // event rate (binned) / CEP (pav)
    std::vector<double> interval_lo;  // Clopper-Pearson (binned) / consistency band (pav)
    std::vector<double> interval_hi;
    std::vector<bool> outside_flags;
    ConsistencyBands bands;  // populated for pav curves with bands
    bool has_bands = false;
};

CalibrationCurve binned_calibration(const BinaryPredictionTable& table, int n_bins = 10,
                                    double level = 0.95);

struct PavConfig {
    double level = 0.95;
    std::size_t resample_draws = 2000;  // used when the table carries no outcome draws
    std::uint64_t seed = 0;
    bool parallel = true;
};

// PAV curve of the observed outcomes plus consistency bands from predictive
// outcome draws (or Bernoulli(pred) resampling when absent). The per-position
// quantile level is widened by bisection until a `level` fraction of the
// simulated CEP curves stay fully inside their own bands, so a calibrated
// model is flagged anywhere on the curve with probability about 1 - level.
CalibrationCurve pav_calibration_plot(const BinaryPredictionTable& table, const PavConfig& config = {});

struct ResidualPlot {
    PlotSpec plot;
    std::vector<double> residuals;  // CEP_i - pred_i, original observation order
    std::vector<bool> flags;
};

ResidualPlot pav_residuals(const BinaryPredictionTable& table, std::span<const double> covariate,
                           const CalibrationCurve& curve);

// One-versus-others reduction: one PAV curve per category.
std::vector<CalibrationCurve> ovo_calibration(const CategoricalPredictionTable& table,
                                              const PavConfig& config = {});

// Cumulative reduction for ordered categories: M-1 curves on 1{y <= m} vs the
// prefix-sum probabilities.
std::vector<CalibrationCurve> cumulative_ordinal_calibration(const CategoricalPredictionTable& table,
                                                             const PavConfig& config = {});

// Observed frequency bars with predictive mean and central interval per value.
PlotSpec bar_check(const CountFrequencyTable& table);

PlotSpec calibration_plot_spec(const CalibrationCurve& curve);

namespace detail {
// Per-draw PAV CEPs at the sorted pred positions; row-major draws x N.
// Parallel kernel and serial reference produce identical matrices.
std::vector<double> band_ceps_serial(std::span<const double> pred,
                                     const std::vector<std::vector<int>>& outcomes);
std::vector<double> band_ceps_parallel(std::span<const double> pred,
                                       const std::vector<std::vector<int>>& outcomes);
}  // namespace detail

}  // namespace ppc
