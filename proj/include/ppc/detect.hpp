#pragma once

#include <optional>
#include <vector>

#include "ppc/data.hpp"
#include "ppc/estimators.hpp"

namespace ppc {

struct DetectConfig {
    double point_mass_threshold = 0.02;  // relative frequency above which a value counts as a point mass
    double gap_threshold = 6.0;          // standardized edge-gap cutoff for bound detection
    int edge_gaps = 8;                   // number of boundary-adjacent gaps averaged
};

struct DataDiagnosis {
    std::size_t n_unique = 0;
    double max_rel_freq = 0.0;
    bool discrete_flag = false;
    std::vector<double> point_mass_values;
    std::optional<double> left_bound;
    std::optional<double> right_bound;
};

// Unique-value count and point-mass screen; pure counting, permutation invariant.
DataDiagnosis detect_discrete(const ObservationSample& sample, const DetectConfig& config = {});

// Declares a bound at an extreme order statistic when the standardized mean of
// the adjacent gaps falls below the threshold. Location-scale equivariant.
Bounds detect_bounds(const ObservationSample& sample, const DetectConfig& config = {});

// Both of the above in one pass.
DataDiagnosis diagnose(const ObservationSample& sample, const DetectConfig& config = {});

}  // namespace ppc
