#pragma once

#include <cstdint>
#include <string>

#include "ppc/data.hpp"

namespace ppc::synthetic {

enum class Kind { SmoothNormal, Stepped, BoundedExp, PointMass };

Kind kind_from_name(const std::string& name);
std::string kind_name(Kind kind);

// Ground-truth density/CDF evaluators used as test oracles.
double pdf(Kind kind, double x);   // continuous part only for PointMass
double cdf(Kind kind, double x);

// Hard support bounds where the density has them.
struct Support {
    double lo;
    double hi;
};
Support support(Kind kind);

ObservationSample generate(Kind kind, std::size_t n, std::uint64_t seed);

}  // namespace ppc::synthetic
