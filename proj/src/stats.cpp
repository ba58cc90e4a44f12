#include "ppc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ppc::stats {

double mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double quantile_type7(std::span<const double> sorted, double p) {
    const auto n = sorted.size();
    if (n == 0) throw std::invalid_argument("quantile of empty sample");
    if (n == 1) return sorted[0];
    const double h = (static_cast<double>(n) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::clamp(std::floor(h), 0.0, static_cast<double>(n - 1)));
    const auto hi = std::min(lo + 1, n - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double iqr(std::span<const double> sorted) {
    return quantile_type7(sorted, 0.75) - quantile_type7(sorted, 0.25);
}

double normal_pdf(double x) {
    return 0.3989422804014326779399461 * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244008444);
}

double normal_quantile(double p) {
    if (p <= 0.0 || p >= 1.0) {
        if (p == 0.0) return -HUGE_VAL;
        if (p == 1.0) return HUGE_VAL;
        throw std::invalid_argument("normal_quantile: p outside [0,1]");
    }
    const double q = p - 0.5;
    double r, val;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        val = q *
              (((((((2509.0809287301226727 * r + 33430.575583588128105) * r + 67265.770927008700853) * r +
                   45921.953931549871457) *
                      r +
                  13731.693765509461125) *
                     r +
                 1971.5909503065514427) *
                    r +
                133.14166789178437745) *
                   r +
               3.387132872796366608) /
              (((((((5226.495278852545703 * r + 28729.085735721942674) * r + 39307.89580009271061) * r +
                   21213.794301586595867) *
                      r +
                  5394.1960214247511077) *
                     r +
                 687.1870074920579083) *
                    r +
                42.313330701600911252) *
                   r +
               1.0);
        return val;
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
                   1.27045825245236838258) *
                      r +
                  3.64784832476320460504) *
                     r +
                 5.7694972214606914055) *
                    r +
                4.6303378461565452959) *
                   r +
               1.42343711074968357734) /
              (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
                   0.14810397642748007459) *
                      r +
                  0.68976733498510000455) *
                     r +
                 1.6763848301838038494) *
                    r +
                2.05319162663775882187) *
                   r +
               1.0);
    } else {
        r -= 5.0;
        val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
                   0.026532189526576123093) *
                      r +
                  0.29656057182850489123) *
                     r +
                 1.7848265399172913358) *
                    r +
                5.4637849111641143699) *
                   r +
               6.6579046435011037772) /
              (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
                   7.868691311456132591e-4) *
                      r +
                  0.0148753612908506148525) *
                     r +
                 0.13692988092273580531) *
                    r +
                0.59983220655588793769) *
                   r +
               1.0);
    }
    return q < 0.0 ? -val : val;
}

namespace {

double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kFpmin = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpmin) d = kFpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpmin) d = kFpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpmin) c = kFpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpmin) d = kFpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpmin) c = kFpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double incbeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - lbeta) * betacf(b, a, 1.0 - x) / b;
}

double incbeta_inv(double a, double b, double p) {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (incbeta(a, b, mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double binom_cdf(int k, int n, double p) {
    if (k < 0) return 0.0;
    if (k >= n) return 1.0;
    // P(X <= k) = I_{1-p}(n-k, k+1)
    return incbeta(static_cast<double>(n - k), static_cast<double>(k + 1), 1.0 - p);
}

int binom_quantile(double q, int n, double p) {
    if (q <= 0.0) return 0;
    if (q >= 1.0) return n;
    int lo = 0, hi = n;
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (binom_cdf(mid, n, p) >= q)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

Interval clopper_pearson(int k, int n, double level) {
    const double alpha = 1.0 - level;
    Interval iv{0.0, 1.0};
    if (k > 0) iv.lo = incbeta_inv(static_cast<double>(k), static_cast<double>(n - k + 1), alpha / 2.0);
    if (k < n) iv.hi = incbeta_inv(static_cast<double>(k + 1), static_cast<double>(n - k), 1.0 - alpha / 2.0);
    return iv;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return s;
}

std::vector<double> sorted_copy(std::span<const double> x) {
    std::vector<double> out(x.begin(), x.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ppc::stats
