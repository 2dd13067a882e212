#pragma once

#include <algorithm>
#include <stdexcept>

namespace pouw {

/// Coefficients of the two security conditions against selfish deviation.
/// alpha1/beta1/gamma1 weight the fork-and-steal condition
///   alpha1*R(s1) + beta1*R(2s1-s2) - gamma1*R(s2-s1) > 0,
/// alpha2/beta2/gamma2 the ignore-and-fork condition
///   alpha2*R(s2) + beta2*R(s2-s1) + gamma2*R(2s2-2s1) > 0.
/// beta1, gamma1, beta2 are sums of products of positive relative values.
struct SecurityCoefficients {
    double alpha1 = 0;
    double beta1 = 0;
    double gamma1 = 0;
    double alpha2 = 0;
    double beta2 = 0;
    double gamma2 = 0;
};

/// max{(gamma1-alpha1)/beta1, -alpha2/(beta2+gamma2)}: the factor the reward
/// design principle compares against R(0)/R(s).
inline double binding_ratio(const SecurityCoefficients& c) {
    if (!(c.beta1 > 0.0))
        throw std::domain_error("degenerate coefficients: beta1 must be positive");
    if (c.beta2 + c.gamma2 == 0.0)
        throw std::domain_error("degenerate coefficients: beta2 + gamma2 is zero");
    return std::max((c.gamma1 - c.alpha1) / c.beta1, -c.alpha2 / (c.beta2 + c.gamma2));
}

}  // namespace pouw
