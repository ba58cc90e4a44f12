#include "ppc/synthetic.hpp"

#include <cmath>
#include <limits>

#include "ppc/rng.hpp"
#include "ppc/stats.hpp"

namespace ppc::synthetic {

namespace {

using stats::normal_cdf;
using stats::normal_pdf;
using stats::normal_quantile;

// Stepped density: left normal tail (weight 2/5), flat middle (1/5), right
// half-normal with sd 1/2 (2/5). The right branch is normalized over
// (1/2, inf), so total mass is exactly one.
const double kPhiLeft = normal_cdf(-0.5);   // mass of N(0,1) below -1/2
const double kPhiRight = normal_cdf(-1.0);  // mass of N(0,1/2 sd) above 1/2, standardized

double stepped_pdf(double x) {
    if (x <= -0.5) return 0.4 / kPhiLeft * normal_pdf(x);
    if (x <= 0.5) return 0.2;
    return 0.4 / kPhiRight * normal_pdf(x / 0.5) / 0.5;
}

double stepped_cdf(double x) {
    if (x <= -0.5) return 0.4 * normal_cdf(x) / kPhiLeft;
    if (x <= 0.5) return 0.4 + 0.2 * (x + 0.5);
    return 0.6 + 0.4 * (normal_cdf(x / 0.5) - (1.0 - kPhiRight)) / kPhiRight;
}

const double kExpLo = -std::log(0.9);  // Exp(1) 10% quantile
const double kExpHi = -std::log(0.1);  // Exp(1) 90% quantile

double bexp_pdf(double x) {
    if (x < kExpLo || x > kExpHi) return 0.0;
    return std::exp(-x) / 0.8;
}

double bexp_cdf(double x) {
    if (x <= kExpLo) return 0.0;
    if (x >= kExpHi) return 1.0;
    return (0.9 - std::exp(-x)) / 0.8;
}

}  // namespace

Kind kind_from_name(const std::string& name) {
    if (name == "smooth_normal" || name == "normal") return Kind::SmoothNormal;
    if (name == "stepped") return Kind::Stepped;
    if (name == "bounded_exp") return Kind::BoundedExp;
    if (name == "point_mass") return Kind::PointMass;
    throw DataError("unknown synthetic kind '" + name + "'");
}

std::string kind_name(Kind kind) {
    switch (kind) {
        case Kind::SmoothNormal: return "smooth_normal";
        case Kind::Stepped: return "stepped";
        case Kind::BoundedExp: return "bounded_exp";
        case Kind::PointMass: return "point_mass";
    }
    return "?";
}

double pdf(Kind kind, double x) {
    switch (kind) {
        case Kind::SmoothNormal: return normal_pdf(x);
        case Kind::Stepped: return stepped_pdf(x);
        case Kind::BoundedExp: return bexp_pdf(x);
        case Kind::PointMass: return 0.8 * normal_pdf(x);  // continuous part
    }
    return 0.0;
}

double cdf(Kind kind, double x) {
    switch (kind) {
        case Kind::SmoothNormal: return normal_cdf(x);
        case Kind::Stepped: return stepped_cdf(x);
        case Kind::BoundedExp: return bexp_cdf(x);
        case Kind::PointMass: return 0.8 * normal_cdf(x) + (x >= 1.0 ? 0.2 : 0.0);
    }
    return 0.0;
}

Support support(Kind kind) {
    const double inf = std::numeric_limits<double>::infinity();
    if (kind == Kind::BoundedExp) return {kExpLo, kExpHi};
    return {-inf, inf};
}

ObservationSample generate(Kind kind, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw DataError("generator needs n >= 1");
    ObservationSample sample;
    sample.label = kind_name(kind);
    sample.values.resize(n);
    Rng rng(derive_seed(seed, 0xda7a));
    for (std::size_t i = 0; i < n; ++i) {
        double x = 0.0;
        switch (kind) {
            case Kind::SmoothNormal:
                x = rng.normal();
                break;
            case Kind::Stepped: {
                const double branch = rng.uniform();
                const double u = rng.uniform_open();
                if (branch < 0.4) {
                    x = normal_quantile(u * kPhiLeft);
                } else if (branch < 0.6) {
                    x = -0.5 + u;
                } else {
                    x = 0.5 * normal_quantile(1.0 - kPhiRight + u * kPhiRight);
                }
                break;
            }
            case Kind::BoundedExp:
                x = -std::log(0.9 - 0.8 * rng.uniform());
                break;
            case Kind::PointMass:
                x = rng.normal();
                if (rng.uniform() < 0.2) x = 1.0;
                break;
        }
        sample.values[i] = x;
    }
    return sample;
}

}  // namespace ppc::synthetic
