// Closed-form security analysis against malicious miners: the long-range
// necessary power bound, the gambler's-ruin success probability, and the
// exact probability that the honest side wins the per-block race.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "pouw/params.hpp"

namespace pouw {

/// Per-round hit rates of the three geometric race variables: the honest
/// side's solution time (p2) and PoW time (q2), and the attacker's PoW
/// time (q1). The attacker copies on-chain solutions, so it has no
/// solution stage. The closed form needs p2 != q2.
struct RaceVariables {
    double p2 = 0;
    double q2 = 0;
    double q1 = 0;
};

/// Necessary bound on the attacker's power share: lambda1 < eta / (1 + eta).
/// Above it the attacker's expected block time beats the honest side's and
/// a long-range attack always catches up eventually.
inline double longrange_necessary_bound(double eta) {
    if (!(eta > 0.0 && eta < 1.0))
        throw std::invalid_argument("eta out of range (0,1): " + std::to_string(eta));
    return eta / (1.0 + eta);
}

/// Gambler's-ruin success probability of rebuilding from k blocks deep when
/// each race is won by the honest side with probability p_h: rho^(k+1) with
/// rho = (1-p_h)/p_h, or 1 when the walk does not drift toward the chain.
inline double longrange_success_prob(int k, double p_h) {
    if (k < 0) throw std::invalid_argument("attack depth k must be >= 0");
    if (!(p_h > 0.0 && p_h < 1.0))
        throw std::invalid_argument("p_h out of range (0,1): " + std::to_string(p_h));
    const double rho = (1.0 - p_h) / p_h;
    if (rho >= 1.0) return 1.0;
    return std::pow(rho, k + 1);
}

/// Probability that the honest side finds a solution and then a nonce
/// strictly before the plagiarizing attacker finds its nonce.
inline double honest_wins_prob(const RaceVariables& r) {
    auto in_open_unit = [](double v) { return v > 0.0 && v < 1.0; };
    if (!in_open_unit(r.p2) || !in_open_unit(r.q2) || !in_open_unit(r.q1))
        throw std::invalid_argument("race rates must lie in (0,1): p2=" + std::to_string(r.p2) +
                                    " q2=" + std::to_string(r.q2) + " q1=" + std::to_string(r.q1));
    if (r.p2 == r.q2)
        throw std::domain_error(
            "p2 == q2 makes the closed form degenerate (eta == 1/2 for a proportional split); "
            "perturb eta or use the Monte-Carlo race");
    const double one_m_q1_sq = (1.0 - r.q1) * (1.0 - r.q1);
    const double t1 = one_m_q1_sq *
                      (1.0 - (r.q1 * r.p2 / (r.p2 - r.q2)) *
                                 ((1.0 - r.q2) * (1.0 - r.q2) / (r.q1 + r.q2 - r.q1 * r.q2)));
    const double t2 = one_m_q1_sq * (r.q1 * r.q2 / (r.p2 - r.q2)) *
                      ((1.0 - r.p2) * (1.0 - r.p2) / (r.q1 + r.p2 - r.q1 * r.p2));
    return t1 + t2;
}

/// Party 1 is the attacker: it contributes only PoW rate q1, while the rest
/// of the network solves (p2) and hashes (q2).
inline double honest_wins_prob(const NetworkParams& n) {
    return honest_wins_prob(RaceVariables{n.p2, n.q2, n.q1});
}

/// Secure against maliciousness when the honest side wins the per-block race
/// more often than not, which makes the ruin walk drift away from failure.
inline bool check_malice_security(const NetworkParams& n) {
    return honest_wins_prob(n) > 0.5;
}

/// Small-probability approximation of the maliciousness condition, in terms
/// of the attacker share and eta alone. Valid for eta > 1/2.
inline bool approx_malice_condition(double lambda1, double eta) {
    if (!(lambda1 > 0.0 && lambda1 < 1.0))
        throw std::invalid_argument("lambda1 out of range (0,1): " + std::to_string(lambda1));
    if (!(eta > 0.5 && eta < 1.0))
        throw std::domain_error("approximation requires 1/2 < eta < 1, got " + std::to_string(eta));
    const double r = eta / (1.0 - eta);
    const double expr = 0.5 - lambda1 / (2.0 - 1.0 / eta) +
                        1.0 / ((r - 1.0) * (1.0 + r * (1.0 / lambda1 - 1.0)));
    return expr >= 0.0;
}

/// Largest attacker share that still satisfies the exact maliciousness
/// condition at the given (p0, q0), found by bisection.
inline double malice_lambda_bound(double p0, double q0, double tol = 1e-9) {
    const double eps = 1e-9;
    auto secure_at = [&](double lam) {
        return check_malice_security(make_params(lam, p0, q0));
    };
    if (!secure_at(eps)) return 0.0;
    double lo = eps, hi = 1.0 - eps;
    if (secure_at(hi)) return hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (secure_at(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Boundary attacker share of the approximate condition at a given eta.
inline double approx_malice_lambda_bound(double eta, double tol = 1e-9) {
    const double eps = 1e-9;
    if (!approx_malice_condition(eps, eta)) return 0.0;
    double lo = eps, hi = 1.0 - eps;
    if (approx_malice_condition(hi, eta)) return hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (approx_malice_condition(mid, eta) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace pouw
