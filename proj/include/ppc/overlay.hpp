#pragma once

#include <cstdint>
#include <optional>

#include "ppc/data.hpp"
#include "ppc/estimators.hpp"
#include "ppc/plot.hpp"

namespace ppc {

enum class OverlayStyle { Kde, Histogram, Qdot };

struct OverlaySpec {
    OverlayStyle style = OverlayStyle::Kde;
    std::size_t draw_subset = 50;  // KDE/qdot overlays; histogram summaries use all draws
    double interval_mass = 0.9;
    KdeConfig kde;
    bool freeze_bandwidth = false;  // reuse the observation bandwidth for every draw
    std::uint64_t seed = 0;
};

struct OverlayResult {
    PlotSpec plot;
    // per-bin counts falling outside the shared bin range (histogram style)
    double overflow_low = 0.0;
    double overflow_high = 0.0;
};

// One KDE per selected draw plus the emphasized observation KDE; shared
// display range is the union of the individual ranges.
OverlayResult overlay_kde(const ObservationSample& obs, const PredictiveDraws& draws,
                          const OverlaySpec& spec);

// Observation histogram defines the shared bins; draws are summarized per bin
// by mean and central quantile interval. Out-of-range draw mass goes to
// flagged overflow bins.
OverlayResult overlay_histogram(const ObservationSample& obs, const PredictiveDraws& draws,
                                const OverlaySpec& spec);

// Full observation dot plot, plus each selected draw's stack tops fitted with
// the observation's binwidth.
OverlayResult overlay_qdot(const ObservationSample& obs, const PredictiveDraws& draws,
                           const OverlaySpec& spec);

OverlayResult overlay(const ObservationSample& obs, const PredictiveDraws& draws,
                      const OverlaySpec& spec);

// Deterministic subset of draw indices (never repeats an index).
std::vector<std::size_t> select_draws(std::size_t n_draws, std::size_t subset, std::uint64_t seed);

}  // namespace ppc
