#pragma once

#include <span>
#include <vector>

namespace ppc::stats {

double mean(std::span<const double> x);
double sample_sd(std::span<const double> x);

// Type-7 sample quantile (linear interpolation between order statistics).
double quantile_type7(std::span<const double> sorted, double p);
double iqr(std::span<const double> sorted);

double normal_pdf(double x);
double normal_cdf(double x);
// Inverse standard normal CDF (Wichura's AS241 rational approximations).
double normal_quantile(double p);

// Regularized incomplete beta function I_x(a, b).
double incbeta(double a, double b, double x);
// Inverse of incbeta in x for fixed (a, b).
double incbeta_inv(double a, double b, double p);

// Binomial CDF P(X <= k) for X ~ Bin(n, p).
double binom_cdf(int k, int n, double p);
// Smallest k with P(X <= k) >= q.
int binom_quantile(double q, int n, double p);

// Central Clopper-Pearson interval for k successes out of n at the given level.
struct Interval {
    double lo;
    double hi;
};
Interval clopper_pearson(int k, int n, double level);

// Trapezoid integral of y over grid x (equal length, x increasing).
double trapezoid(std::span<const double> x, std::span<const double> y);

std::vector<double> sorted_copy(std::span<const double> x);

}  // namespace ppc::stats
