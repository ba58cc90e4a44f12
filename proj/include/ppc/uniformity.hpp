#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ppc/pit.hpp"

namespace ppc {

struct EcdfEvaluation {
    std::vector<double> points;  // z_k = k/K
    std::vector<double> ecdf;
    std::size_t n = 0;
};

struct SimultaneousBands {
    double alpha = 0.05;
    double gamma = 0.05;  // adjusted pointwise level
    std::vector<double> lower;
    std::vector<double> upper;
    std::size_t k_points = 0;
    std::size_t n = 0;
};

enum class EcdfStyle { Ecdf, EcdfDifference };

struct FirstExit {
    double z = 0.0;
    bool above = false;
};

struct GofVerdict {
    bool pass = true;
    std::optional<FirstExit> first_exit;
    SimultaneousBands bands;
    EcdfEvaluation ecdf;
    EcdfStyle style = EcdfStyle::Ecdf;
};

EcdfEvaluation ecdf_at(const PitSet& pits, std::size_t k_points);

struct CalibrationConfig {
    std::size_t replicates = 10000;
    std::uint64_t seed = 0x5ca1ab1e;  // replicate streams are derived from this, independent of K
    double tolerance = 1e-4;          // bisection resolution on gamma
    bool parallel = true;
};

// Largest pointwise level gamma whose binomial bands are exited by at most an
// alpha fraction of simulated uniform ECDFs. Results are cached per (N, K,
// alpha); the simulation seed is fixed so calibration is reproducible.
double calibrate_gamma(std::size_t n, std::size_t k_points, double alpha,
                       const CalibrationConfig& config = {});

SimultaneousBands simultaneous_bands(std::size_t n, std::size_t k_points, double alpha,
                                     const CalibrationConfig& config = {});

GofVerdict gof_test(const PitSet& pits, double alpha = 0.05, std::optional<std::size_t> k_points = {},
                    EcdfStyle style = EcdfStyle::Ecdf, const CalibrationConfig& config = {});

namespace detail {
// Per-replicate ECDF counts at the K evaluation points, N uniform draws each.
// The parallel kernel and the serial reference produce identical matrices.
std::vector<int> simulate_counts_serial(std::size_t n, std::size_t k_points, std::size_t replicates,
                                        std::uint64_t seed);
std::vector<int> simulate_counts_parallel(std::size_t n, std::size_t k_points, std::size_t replicates,
                                          std::uint64_t seed);
}  // namespace detail

}  // namespace ppc
