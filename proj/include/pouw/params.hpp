// Network-level parameters of the round-based mining model: the per-round
// solution-finding and nonce-finding probabilities, the two-party power
// split, and the security overhead ratio derived from them.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace pouw {

/// Round-level probabilities for a two-party network.
///
/// p0 / q0 are the whole-network per-round probabilities of finding a better
/// solution / a valid nonce. Party shares split them proportionally:
/// p_i = lambda_i * p0, q_i = lambda_i * q0. eta = p0 / (p0 + q0) is the
/// share of per-round event probability spent on the PoW safeguard.
/// Values are immutable after construction; share freely across threads.
struct NetworkParams {
    double lambda1 = 0;
    double lambda2 = 0;
    double p0 = 0;
    double q0 = 0;
    double p1 = 0;
    double p2 = 0;
    double q1 = 0;
    double q2 = 0;
    double eta = 0;
};

/// Optimization improvements of the two parties. Party 1 always carries the
/// smaller improvement; the comparability assumption s1 < s2 < 2*s1 keeps
/// every reward argument of the payoff formulas non-negative.
struct ImprovementPair {
    double s1 = 0;
    double s2 = 0;
};

inline NetworkParams make_params(double lambda1, double p0, double q0) {
    if (!(lambda1 >= 0.0 && lambda1 <= 1.0))
        throw std::invalid_argument("lambda1 out of range [0,1]: " + std::to_string(lambda1));
    if (!(p0 >= 0.0 && p0 < 1.0))
        throw std::invalid_argument("p0 out of range [0,1): " + std::to_string(p0));
    if (!(q0 >= 0.0 && q0 < 1.0))
        throw std::invalid_argument("q0 out of range [0,1): " + std::to_string(q0));
    if (!(p0 + q0 > 0.0))
        throw std::invalid_argument("p0 + q0 must be positive");

    NetworkParams n;
    n.lambda1 = lambda1;
    n.lambda2 = 1.0 - lambda1;
    n.p0 = p0;
    n.q0 = q0;
    n.p1 = lambda1 * p0;
    n.p2 = n.lambda2 * p0;
    n.q1 = lambda1 * q0;
    n.q2 = n.lambda2 * q0;
    n.eta = p0 / (p0 + q0);
    return n;
}

inline ImprovementPair make_improvement(double s1, double s2) {
    if (!(s1 > 0.0))
        throw std::invalid_argument("s1 must be positive: " + std::to_string(s1));
    if (!(s1 < s2 && s2 < 2.0 * s1))
        throw std::invalid_argument("improvements must satisfy s1 < s2 < 2*s1, got s1=" +
                                    std::to_string(s1) + " s2=" + std::to_string(s2));
    return ImprovementPair{s1, s2};
}

/// Per-round nonce probability from the hash-trial budget and the target
/// ratio T/2^L. The linearization q0 ~= q_total * T/2^L only holds for
/// T/2^L << 1, so ratios above 0.01 are rejected.
inline double difficulty_to_q0(double q_total, double target_ratio) {
    if (!(q_total >= 0.0))
        throw std::invalid_argument("q_total must be non-negative: " + std::to_string(q_total));
    if (!(target_ratio >= 0.0))
        throw std::invalid_argument("target_ratio must be non-negative: " + std::to_string(target_ratio));
    if (target_ratio > 0.01)
        throw std::invalid_argument("target_ratio " + std::to_string(target_ratio) +
                                    " exceeds 0.01; the linear approximation is invalid there");
    double q0 = q_total * target_ratio;
    const double below_one = 0x1.fffffffffffffp-1;
    return q0 < below_one ? q0 : below_one;
}

/// Convergence-order estimate from four consecutive objective values,
/// newest first: log(d2/d1) / log(d1/d0) with d2 = y3-y2 etc.
/// Linear convergence gives 1, quadratic approaches 2.
inline double estimate_convergence_order(double y3, double y2, double y1, double y0) {
    const double d2 = y3 - y2;
    const double d1 = y2 - y1;
    const double d0 = y1 - y0;
    if (!(d2 > 0.0 && d1 > 0.0 && d0 > 0.0))
        throw std::domain_error("degenerate sequence: objective differences must be strictly positive");
    const double denom = std::log(d1 / d0);
    if (denom == 0.0)
        throw std::domain_error("degenerate sequence: successive difference ratios are equal");
    return std::log(d2 / d1) / denom;
}

}  // namespace pouw
