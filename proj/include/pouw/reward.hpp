// Block-reward curves R(s) over the optimization improvement s, plus the
// checks a curve must pass to keep honest mining the best strategy: the
// reward design principle, the mu upper bound, and the linear-slope rule.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pouw/coefficients.hpp"

namespace pouw {

enum class RewardKind { Constant, Linear, Power, CustomTable };

/// A block-reward function on [0, s_m]. Positive for s > 0 and monotone
/// non-decreasing; CustomTable interpolates linearly between sorted knots.
struct RewardFunction {
    RewardKind kind = RewardKind::Constant;
    double b = 1.0;   // intercept R(0)
    double k = 0.0;   // slope (Linear)
    double c = 0.0;   // coefficient (Power: c*s^e + b)
    double e = 1.0;   // exponent (Power)
    std::vector<std::pair<double, double>> table;  // (s, R) knots (CustomTable)
    double s_m = 1.0;  // maximum improvement

    static RewardFunction constant(double b, double s_m) {
        require_positive(b, "b");
        require_positive(s_m, "s_m");
        RewardFunction r;
        r.kind = RewardKind::Constant;
        r.b = b;
        r.s_m = s_m;
        return r;
    }

    static RewardFunction linear(double k, double b, double s_m) {
        if (!(k >= 0.0)) throw std::invalid_argument("linear reward slope k must be >= 0");
        require_positive(b, "b");
        require_positive(s_m, "s_m");
        RewardFunction r;
        r.kind = RewardKind::Linear;
        r.k = k;
        r.b = b;
        r.s_m = s_m;
        return r;
    }

    static RewardFunction power(double c, double e, double b, double s_m) {
        if (!(c >= 0.0)) throw std::invalid_argument("power reward coefficient c must be >= 0");
        if (!(e > 0.0 && e <= 1.0)) throw std::invalid_argument("power reward exponent e must be in (0,1]");
        require_positive(b, "b");
        require_positive(s_m, "s_m");
        RewardFunction r;
        r.kind = RewardKind::Power;
        r.c = c;
        r.e = e;
        r.b = b;
        r.s_m = s_m;
        return r;
    }

    static RewardFunction custom(std::vector<std::pair<double, double>> knots) {
        if (knots.size() < 2)
            throw std::invalid_argument("custom reward table needs at least two knots");
        if (knots.front().first != 0.0)
            throw std::invalid_argument("custom reward table must start at s = 0");
        if (!(knots.front().second >= 0.0))
            throw std::invalid_argument("custom reward table: R(0) must be >= 0");
        for (std::size_t i = 1; i < knots.size(); ++i) {
            if (!(knots[i].first > knots[i - 1].first))
                throw std::invalid_argument("custom reward table: s values must be strictly increasing");
            if (!(knots[i].second > 0.0))
                throw std::invalid_argument("custom reward table: R(s) must be positive for s > 0");
            if (knots[i].second < knots[i - 1].second)
                throw std::invalid_argument("custom reward table: R must be non-decreasing");
        }
        RewardFunction r;
        r.kind = RewardKind::CustomTable;
        r.b = knots.front().second;
        r.s_m = knots.back().first;
        r.table = std::move(knots);
        return r;
    }

  private:
    static void require_positive(double v, const char* name) {
        if (!(v > 0.0))
            throw std::invalid_argument(std::string(name) + " must be positive: " + std::to_string(v));
    }
};

inline double evaluate(const RewardFunction& r, double s) {
    if (!(s >= 0.0 && s <= r.s_m))
        throw std::domain_error("reward argument s=" + std::to_string(s) + " outside [0, " +
                                std::to_string(r.s_m) + "]");
    switch (r.kind) {
        case RewardKind::Constant: return r.b;
        case RewardKind::Linear: return r.k * s + r.b;
        case RewardKind::Power: return r.c * std::pow(s, r.e) + r.b;
        case RewardKind::CustomTable: {
            auto it = std::lower_bound(r.table.begin(), r.table.end(), s,
                                       [](const auto& knot, double x) { return knot.first < x; });
            if (it == r.table.end()) return r.table.back().second;
            if (it->first == s || it == r.table.begin()) return it->second;
            auto prev = it - 1;
            const double t = (s - prev->first) / (it->first - prev->first);
            return prev->second + t * (it->second - prev->second);
        }
    }
    throw std::logic_error("unreachable reward kind");
}

struct PropertyReport {
    bool positive = false;   // R(s) > 0 on (0, s_m]
    bool monotone = false;   // non-decreasing on [0, s_m]
    bool concave = false;    // second differences non-positive on the grid
};

/// Grid evaluation of the two required reward properties plus concavity.
inline PropertyReport check_basic_properties(const RewardFunction& r, int grid) {
    if (grid < 3) throw std::invalid_argument("property grid must have at least 3 points");
    std::vector<double> vals(static_cast<std::size_t>(grid) + 1);
    for (int i = 0; i <= grid; ++i)
        vals[static_cast<std::size_t>(i)] = evaluate(r, r.s_m * i / grid);

    PropertyReport rep;
    rep.positive = true;
    rep.monotone = true;
    rep.concave = true;
    const double scale = std::max(1.0, std::abs(vals.back()));
    const double tol = 1e-9 * scale;
    for (int i = 1; i <= grid; ++i) {
        if (!(vals[static_cast<std::size_t>(i)] > 0.0)) rep.positive = false;
        if (vals[static_cast<std::size_t>(i)] < vals[static_cast<std::size_t>(i - 1)] - tol)
            rep.monotone = false;
    }
    for (int i = 1; i < grid; ++i) {
        const double second = vals[static_cast<std::size_t>(i + 1)] -
                              2.0 * vals[static_cast<std::size_t>(i)] +
                              vals[static_cast<std::size_t>(i - 1)];
        if (second > tol) rep.concave = false;
    }
    return rep;
}

/// Result of the reward design principle check R(0) > binding_ratio * R(s).
struct RewardVerdict {
    bool principle_holds = false;
    double binding_ratio = 0;  // max{(gamma1-alpha1)/beta1, -alpha2/(beta2+gamma2)}
    double mu = 0;             // 1/binding_ratio when positive, else +inf
    double worst_s = 0;        // argmax over the grid of binding_ratio*R(s)/R(0)
    bool necessary_only = false;  // set for non-concave R: the check is then only necessary
};

/// Upper-bound multiplier on the block reward: R(s) < mu * R(0).
inline double compute_mu(const SecurityCoefficients& c) {
    const double ratio = binding_ratio(c);  // validates beta1, beta2+gamma2
    if (c.alpha1 >= c.gamma1 && c.alpha2 >= 0.0)
        return std::numeric_limits<double>::infinity();
    return 1.0 / ratio;
}

/// Reward design principle. Assumes coefficients from the eta > 1/2 regime
/// (there beta2 + gamma2 > 0 always holds); outside it the caller gets a
/// domain error. For concave first-order-smooth R the verdict is equivalent
/// to the selfish-security conditions over all admissible (s1, s2); for
/// non-concave R it is necessary only and the verdict says so.
inline RewardVerdict check_reward_principle(const RewardFunction& r,
                                            const SecurityCoefficients& c,
                                            int s_grid_resolution = 1000) {
    if (s_grid_resolution < 1) throw std::invalid_argument("s grid resolution must be >= 1");
    if (!(c.beta1 > 0.0))
        throw std::domain_error("degenerate coefficients: beta1 must be positive");
    if (c.beta2 + c.gamma2 == 0.0)
        throw std::domain_error("degenerate coefficients: beta2 + gamma2 is zero");
    if (c.beta2 + c.gamma2 < 0.0)
        throw std::domain_error(
            "reward principle not applicable: beta2 + gamma2 < 0 only occurs when eta <= 1/2");

    RewardVerdict v;
    v.binding_ratio = binding_ratio(c);
    v.mu = compute_mu(c);

    // Monotone R peaks at s_m, but the grid still scans CustomTable knots.
    double max_r = -std::numeric_limits<double>::infinity();
    v.worst_s = r.s_m;
    for (int i = 1; i <= s_grid_resolution; ++i) {
        const double s = r.s_m * i / s_grid_resolution;
        const double val = evaluate(r, s);
        if (val > max_r) {
            max_r = val;
            v.worst_s = s;
        }
    }
    const double r0 = evaluate(r, 0.0);
    v.principle_holds = r0 > v.binding_ratio * max_r;
    v.necessary_only = !check_basic_properties(r, std::max(3, s_grid_resolution)).concave;
    return v;
}

struct SlopeCheck {
    bool sufficient = false;          // 0 <= k < (mu-1)*b/s_m
    bool necessary_violated = false;  // mu <= 1: no slope can work
};

/// Sufficient linear-reward rule: with eta > 1/2, R(s) = k*s + b is secure
/// against selfishness whenever the slope stays below (mu-1)*b/s_m.
inline SlopeCheck check_linear_slope(double k, double b, double s_m, double mu) {
    if (!(b > 0.0)) throw std::invalid_argument("intercept b must be positive");
    if (!(s_m > 0.0)) throw std::invalid_argument("s_m must be positive");
    SlopeCheck out;
    if (!(mu > 1.0)) {  // includes mu in (0,1], mu == 1 and NaN
        out.necessary_violated = true;
        return out;
    }
    if (std::isinf(mu)) {
        out.sufficient = k >= 0.0;
        return out;
    }
    out.sufficient = k >= 0.0 && k < (mu - 1.0) * b / s_m;
    return out;
}

}  // namespace pouw
