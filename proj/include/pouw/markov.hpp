// Strategy-profile Markov chains of the two-party mining competition,
// their closed-form relative values and steady states, expected payoffs,
// and the security conditions against selfish deviation.
//
// State ids follow one numbering across all three profiles:
//   0-9    honest head-to-head ladder (alternating still-viable solutions,
//          truncated so that state 9 returns straight to 0),
//   10-13  fork-and-steal attack in progress (party 1 selfish),
//   14-21  ignore-and-fork attack and its aftermath (party 2 selfish).
// The fork-and-steal chain uses 0-13. The ignore-and-fork chain keeps ids
// 0-9 plus 14-21, but redirecting state 3 cuts states 4-9 off, so their
// steady-state mass is exactly zero there.
#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pouw/coefficients.hpp"
#include "pouw/malice.hpp"
#include "pouw/params.hpp"
#include "pouw/reward.hpp"

namespace pouw {

enum class StrategyProfile { HonestHonest, ForkSteal, IgnoreFork };

/// Which per-round probability drives a transition: a party finding a better
/// solution (P1/P2) or finding a valid nonce (Q1/Q2).
enum class Rate { P1, P2, Q1, Q2 };

inline double rate_value(Rate r, const NetworkParams& n) {
    switch (r) {
        case Rate::P1: return n.p1;
        case Rate::P2: return n.p2;
        case Rate::Q1: return n.q1;
        case Rate::Q2: return n.q2;
    }
    throw std::logic_error("unreachable rate");
}

struct Transition {
    int from = 0;
    int to = 0;
    Rate rate = Rate::Q1;
    double prob = 0;
};

/// Reward argument as a linear combination c1*s1 + c2*s2 of the improvements.
struct RewardArg {
    double c1 = 0;
    double c2 = 0;
    double value(const ImprovementPair& s) const { return c1 * s.s1 + c2 * s.s2; }
};

/// Block rewards credited when the (state, rate) transition fires. A
/// successful fork publishes two blocks at once, hence a list of arguments.
/// Rewards for blocks that a pending fork could still orphan are booked on
/// the transition that settles the race, never earlier.
struct RewardEvent {
    int state = 0;
    Rate rate = Rate::Q1;
    int miner = 1;
    std::vector<RewardArg> args;
};

struct ChainSpec {
    StrategyProfile profile = StrategyProfile::HonestHonest;
    std::vector<int> states;            // state ids, ascending
    std::vector<Transition> transitions;  // off-diagonal; self-loops implicit
    std::vector<RewardEvent> reward_events;

    int index_of(int state_id) const {
        for (std::size_t i = 0; i < states.size(); ++i)
            if (states[i] == state_id) return static_cast<int>(i);
        throw std::invalid_argument("state id not in chain: " + std::to_string(state_id));
    }
};

inline std::vector<int> profile_states(StrategyProfile p) {
    switch (p) {
        case StrategyProfile::HonestHonest: return {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
        case StrategyProfile::ForkSteal: return {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
        case StrategyProfile::IgnoreFork:
            return {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 14, 15, 16, 17, 18, 19, 20, 21};
    }
    throw std::logic_error("unreachable profile");
}

namespace detail {

// Shared honest ladder rows. Under ignore-and-fork, state 3's q1 exit is
// redirected to 14, which leaves 4-9 without inflow.
inline void honest_rows(std::vector<Transition>& t, const NetworkParams& n,
                        int state3_q1_target, int state3_q2_target) {
    auto add = [&](int from, int to, Rate r) { t.push_back({from, to, r, rate_value(r, n)}); };
    add(0, 2, Rate::P1);
    add(0, 1, Rate::P2);
    add(1, 3, Rate::P1);
    add(1, 0, Rate::Q2);
    add(2, 0, Rate::Q1);
    add(2, 3, Rate::P2);
    add(3, state3_q1_target, Rate::Q1);
    add(3, state3_q2_target, Rate::Q2);
    add(4, 5, Rate::P1);
    add(4, 0, Rate::Q2);
    add(5, 0, Rate::Q1);
    add(5, 6, Rate::Q2);
    add(6, 0, Rate::Q1);
    add(6, 7, Rate::P2);
    add(7, 8, Rate::Q1);
    add(7, 0, Rate::Q2);
    add(8, 9, Rate::P1);
    add(8, 0, Rate::Q2);
    add(9, 0, Rate::Q1);
    add(9, 0, Rate::Q2);
}

inline RewardEvent ev(int state, Rate rate, int miner, std::vector<RewardArg> args) {
    return RewardEvent{state, rate, miner, std::move(args)};
}

constexpr RewardArg kS1{1, 0};
constexpr RewardArg kS2{0, 1};
constexpr RewardArg kTwoS1MinusS2{2, -1};
constexpr RewardArg kS2MinusS1{-1, 1};
constexpr RewardArg kTwoS2MinusTwoS1{-2, 2};

// Honest-ladder reward pattern; states listed only if present and reachable.
inline void honest_events(std::vector<RewardEvent>& e, bool miner2_state3_credit) {
    e.push_back(ev(2, Rate::Q1, 1, {kS1}));
    e.push_back(ev(3, Rate::Q1, 1, {kS1}));
    e.push_back(ev(5, Rate::Q1, 1, {kS1}));
    e.push_back(ev(9, Rate::Q1, 1, {kS1}));
    e.push_back(ev(6, Rate::Q1, 1, {kTwoS1MinusS2}));
    e.push_back(ev(7, Rate::Q1, 1, {kTwoS1MinusS2}));
    e.push_back(ev(1, Rate::Q2, 2, {kS2}));
    if (miner2_state3_credit) e.push_back(ev(3, Rate::Q2, 2, {kS2}));
    e.push_back(ev(7, Rate::Q2, 2, {kS2}));
    e.push_back(ev(4, Rate::Q2, 2, {kS2MinusS1}));
    e.push_back(ev(5, Rate::Q2, 2, {kS2MinusS1}));
    e.push_back(ev(8, Rate::Q2, 2, {kTwoS2MinusTwoS1}));
    e.push_back(ev(9, Rate::Q2, 2, {kTwoS2MinusTwoS1}));
}

}  // namespace detail

/// Transition tables and reward annotations for a strategy profile. The
/// fork-and-steal and ignore-and-fork tables are chosen so that their
/// balance equations reproduce the closed-form relative values exactly;
/// the chain-consistency tests pin that correspondence.
inline ChainSpec build_chain(StrategyProfile profile, const NetworkParams& n) {
    using detail::ev;
    ChainSpec c;
    c.profile = profile;
    c.states = profile_states(profile);
    auto add = [&](int from, int to, Rate r) {
        c.transitions.push_back({from, to, r, rate_value(r, n)});
    };

    switch (profile) {
        case StrategyProfile::HonestHonest: {
            detail::honest_rows(c.transitions, n, 4, 0);
            detail::honest_events(c.reward_events, true);
            break;
        }
        case StrategyProfile::ForkSteal: {
            // Party 1 reacts to losing the race at state 3 by secretly mining
            // its own block and a second one with the stolen solution.
            detail::honest_rows(c.transitions, n, 4, 10);
            add(10, 11, Rate::P2);
            add(10, 12, Rate::Q1);
            add(11, 13, Rate::Q1);
            add(11, 0, Rate::Q2);  // victim publishes again: fork abandoned
            add(12, 0, Rate::Q1);  // two-block fork published
            add(12, 13, Rate::P2);
            add(13, 0, Rate::Q1);  // fork published
            add(13, 0, Rate::Q2);  // fork abandoned

            detail::honest_events(c.reward_events, false);
            c.reward_events.push_back(ev(12, Rate::Q1, 1, {detail::kS2MinusS1, detail::kS1}));
            c.reward_events.push_back(ev(13, Rate::Q1, 1, {detail::kS2MinusS1, detail::kS1}));
            // Victim's block at state 3 plus its follow-up settle only when
            // the attack fails; a successful fork orphans the first block.
            c.reward_events.push_back(ev(11, Rate::Q2, 2, {detail::kS2, detail::kS2}));
            c.reward_events.push_back(ev(13, Rate::Q2, 2, {detail::kS2, detail::kS2}));
            break;
        }
        case StrategyProfile::IgnoreFork: {
            // Party 2 ignores the honest block won at state 3 and mines a
            // two-block fork from its superior solution.
            detail::honest_rows(c.transitions, n, 14, 0);
            add(14, 15, Rate::Q2);
            add(14, 17, Rate::P1);
            add(15, 16, Rate::P2);
            add(15, 18, Rate::P1);
            add(16, 0, Rate::Q2);  // two-block fork published
            add(16, 19, Rate::P1);
            add(17, 18, Rate::Q2);
            add(17, 0, Rate::Q1);  // honest extends first: fork abandoned
            add(18, 19, Rate::P2);
            add(18, 0, Rate::Q1);  // fork abandoned
            add(19, 0, Rate::Q2);  // fork published
            add(19, 20, Rate::Q1);  // fork abandoned but second solution survives
            add(20, 0, Rate::Q2);
            add(20, 21, Rate::P1);
            add(21, 0, Rate::Q2);
            add(21, 0, Rate::Q1);

            c.reward_events.push_back(ev(1, Rate::Q2, 2, {detail::kS2}));
            c.reward_events.push_back(ev(3, Rate::Q2, 2, {detail::kS2}));
            c.reward_events.push_back(ev(16, Rate::Q2, 2, {detail::kS2, detail::kS2}));
            c.reward_events.push_back(ev(19, Rate::Q2, 2, {detail::kS2, detail::kS2}));
            c.reward_events.push_back(ev(20, Rate::Q2, 2, {detail::kTwoS2MinusTwoS1}));
            c.reward_events.push_back(ev(21, Rate::Q2, 2, {detail::kTwoS2MinusTwoS1}));
            // Honest party's blocks settle when the fork race is decided.
            c.reward_events.push_back(ev(2, Rate::Q1, 1, {detail::kS1}));
            c.reward_events.push_back(ev(17, Rate::Q1, 1, {detail::kS1, detail::kS1}));
            c.reward_events.push_back(ev(18, Rate::Q1, 1, {detail::kS1, detail::kS1}));
            c.reward_events.push_back(ev(19, Rate::Q1, 1, {detail::kS1, detail::kS1}));
            c.reward_events.push_back(ev(21, Rate::Q1, 1, {detail::kS1}));
            break;
        }
    }
    return c;
}

/// Dense row-stochastic matrix over chain.states, self-loops included.
inline std::vector<double> transition_matrix(const ChainSpec& chain) {
    const std::size_t n = chain.states.size();
    std::vector<double> m(n * n, 0.0);
    for (const auto& t : chain.transitions) {
        const auto i = static_cast<std::size_t>(chain.index_of(t.from));
        const auto j = static_cast<std::size_t>(chain.index_of(t.to));
        m[i * n + j] += t.prob;
    }
    for (std::size_t i = 0; i < n; ++i) {
        double out = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) out += m[i * n + j];
        if (out > 1.0 + 1e-12)
            throw std::domain_error("outgoing probabilities exceed 1 at state " +
                                    std::to_string(chain.states[i]));
        m[i * n + i] += 1.0 - out;
    }
    return m;
}

namespace detail {

/// Closed-form relative values v_i = w_i / w_0 for every state id, from the
/// balance-equation recursions. Shared across profiles: a state's relative
/// value depends only on its inflow and total exit rate.
inline std::array<double, 22> relative_values_all(const NetworkParams& n) {
    const double p1 = n.p1, p2 = n.p2, q1 = n.q1, q2 = n.q2;
    if (!(p1 + q2 > 0.0 && q1 + p2 > 0.0 && q1 + q2 > 0.0 && p1 + p2 > 0.0))
        throw std::domain_error("degenerate parameters: a state's total exit rate is zero");
    std::array<double, 22> v{};
    v[0] = 1.0;
    v[1] = p2 / (p1 + q2);
    v[2] = p1 / (q1 + p2);
    v[3] = (p1 * v[1] + p2 * v[2]) / (q1 + q2);
    v[4] = q1 / (p1 + q2) * v[3];
    v[5] = p1 / (q1 + q2) * v[4];
    v[6] = q2 / (q1 + p2) * v[5];
    v[7] = p2 / (q1 + q2) * v[6];
    v[8] = q1 / (p1 + q2) * v[7];
    v[9] = p1 / (q1 + q2) * v[8];
    v[10] = q2 / (q1 + p2) * v[3];
    v[11] = p2 / (q1 + q2) * v[10];
    v[12] = q1 / (q1 + p2) * v[10];
    v[13] = (q1 * v[11] + p2 * v[12]) / (q1 + q2);
    v[14] = q1 / (p1 + q2) * v[3];
    v[15] = q2 / (p1 + p2) * v[14];
    v[16] = p2 / (p1 + q2) * v[15];
    v[17] = p1 / (q1 + q2) * v[14];
    v[18] = (p1 * v[15] + q2 * v[17]) / (q1 + p2);
    v[19] = (p1 * v[16] + p2 * v[18]) / (q1 + q2);
    v[20] = q1 / (p1 + q2) * v[19];
    v[21] = p1 / (q1 + q2) * v[20];
    return v;
}

}  // namespace detail

/// Relative values for the profile's state list, aligned with
/// profile_states(). States 4-9 are unreachable under ignore-and-fork and
/// get exactly 0 there.
inline std::vector<double> relative_values(StrategyProfile profile, const NetworkParams& n) {
    const auto all = detail::relative_values_all(n);
    const auto states = profile_states(profile);
    std::vector<double> v(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        const int id = states[i];
        if (profile == StrategyProfile::IgnoreFork && id >= 4 && id <= 9)
            v[i] = 0.0;
        else
            v[i] = all[static_cast<std::size_t>(id)];
    }
    return v;
}

/// Steady-state distribution over chain.states: relative values normalized
/// over the profile's own state set.
inline std::vector<double> steady_state(const ChainSpec& chain, const NetworkParams& n) {
    auto w = relative_values(chain.profile, n);
    double sum = 0.0;
    for (double x : w) sum += x;
    for (double& x : w) x /= sum;
    return w;
}

/// Coefficients of the two selfish-security conditions, from the relative
/// values of the honest chain and the two attack chains.
inline SecurityCoefficients security_coefficients(const NetworkParams& n) {
    const auto v = detail::relative_values_all(n);
    double sum_hh = 0.0, sum_fs = 0.0, sum_if = 0.0, sum_0_3 = 0.0, sum_4_9 = 0.0;
    for (int i = 0; i <= 9; ++i) sum_hh += v[static_cast<std::size_t>(i)];
    for (int i = 10; i <= 13; ++i) sum_fs += v[static_cast<std::size_t>(i)];
    for (int i = 14; i <= 21; ++i) sum_if += v[static_cast<std::size_t>(i)];
    for (int i = 0; i <= 3; ++i) sum_0_3 += v[static_cast<std::size_t>(i)];
    for (int i = 4; i <= 9; ++i) sum_4_9 += v[static_cast<std::size_t>(i)];

    SecurityCoefficients c;
    c.alpha1 = sum_fs * (v[2] + v[3] + v[5] + v[9]) - sum_hh * (v[12] + v[13]);
    c.beta1 = sum_fs * (v[6] + v[7]);
    c.gamma1 = sum_hh * (v[12] + v[13]);
    c.alpha2 = (sum_if - sum_4_9) * (v[1] + v[3]) + (sum_0_3 + sum_if) * v[7] -
               2.0 * (sum_0_3 + sum_4_9) * (v[16] + v[19]);
    c.beta2 = (sum_0_3 + sum_if) * (v[4] + v[5]);
    c.gamma2 = (sum_0_3 + sum_if) * (v[8] + v[9]) - (sum_0_3 + sum_4_9) * (v[20] + v[21]);
    return c;
}

namespace detail {

inline void check_reward_domain(const RewardFunction& r, const ImprovementPair& s) {
    if (!(2.0 * s.s1 - s.s2 >= 0.0))
        throw std::invalid_argument("payoff needs 2*s1 - s2 >= 0");
    if (!(s.s2 <= r.s_m))
        throw std::domain_error("improvement s2=" + std::to_string(s.s2) +
                                " exceeds reward domain cap s_m=" + std::to_string(r.s_m));
}

}  // namespace detail

/// Expected reward per round for one miner, read off the chain's reward
/// events: sum over events of rate * w[state] * sum of block rewards.
inline double payoff_from_events(const ChainSpec& chain, int miner, const NetworkParams& n,
                                 const RewardFunction& r, const ImprovementPair& s) {
    detail::check_reward_domain(r, s);
    const auto w = steady_state(chain, n);
    double total = 0.0;
    for (const auto& e : chain.reward_events) {
        if (e.miner != miner) continue;
        double blocks = 0.0;
        for (const auto& a : e.args) blocks += evaluate(r, a.value(s));
        total += rate_value(e.rate, n) * w[static_cast<std::size_t>(chain.index_of(e.state))] * blocks;
    }
    return total;
}

/// Expected payoff per round. The four strategically relevant combinations
/// use the explicit steady-state formulas; the honest counterpart under an
/// attack profile (reporting only) is read off that chain's reward events.
inline double payoff(StrategyProfile profile, int miner, const NetworkParams& n,
                     const RewardFunction& r, const ImprovementPair& s) {
    if (miner != 1 && miner != 2) throw std::invalid_argument("miner must be 1 or 2");
    detail::check_reward_domain(r, s);
    const auto v = detail::relative_values_all(n);
    auto sum_states = [&](std::initializer_list<int> ids) {
        double t = 0.0;
        for (int i : ids) t += v[static_cast<std::size_t>(i)];
        return t;
    };

    switch (profile) {
        case StrategyProfile::HonestHonest: {
            double denom = sum_states({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
            if (miner == 1)
                return n.q1 *
                       (sum_states({2, 3, 5, 9}) * evaluate(r, s.s1) +
                        sum_states({6, 7}) * evaluate(r, 2.0 * s.s1 - s.s2)) /
                       denom;
            return n.q2 *
                   (sum_states({1, 3, 7}) * evaluate(r, s.s2) +
                    sum_states({4, 5}) * evaluate(r, s.s2 - s.s1) +
                    sum_states({8, 9}) * evaluate(r, 2.0 * (s.s2 - s.s1))) /
                   denom;
        }
        case StrategyProfile::ForkSteal: {
            if (miner == 2) return payoff_from_events(build_chain(profile, n), 2, n, r, s);
            double denom = sum_states({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13});
            return n.q1 *
                   (sum_states({2, 3, 5, 9}) * evaluate(r, s.s1) +
                    sum_states({6, 7}) * evaluate(r, 2.0 * s.s1 - s.s2) +
                    sum_states({12, 13}) * (evaluate(r, s.s2 - s.s1) + evaluate(r, s.s1))) /
                   denom;
        }
        case StrategyProfile::IgnoreFork: {
            if (miner == 1) return payoff_from_events(build_chain(profile, n), 1, n, r, s);
            double denom = sum_states({0, 1, 2, 3, 14, 15, 16, 17, 18, 19, 20, 21});
            return n.q2 *
                   ((v[1] + v[3] + 2.0 * v[16] + 2.0 * v[19]) * evaluate(r, s.s2) +
                    sum_states({20, 21}) * evaluate(r, 2.0 * (s.s2 - s.s1))) /
                   denom;
        }
    }
    throw std::logic_error("unreachable profile");
}

/// Both forms of the selfish-security verdict. The coefficient form and the
/// direct payoff comparison are algebraically identical, so forms_agree can
/// only break on floating-point boundary cases.
struct SelfishVerdict {
    bool fs_condition = false;      // coefficient form of the fork-and-steal condition
    bool if_condition = false;      // coefficient form of the ignore-and-fork condition
    bool fs_payoff_form = false;    // pi1(H,H) > pi1(FS,H)
    bool if_payoff_form = false;    // pi2(H,H) > pi2(H,IF)
    double fs_lhs = 0;              // alpha1*R(s1) + beta1*R(2s1-s2) - gamma1*R(s2-s1)
    double if_lhs = 0;              // alpha2*R(s2) + beta2*R(s2-s1) + gamma2*R(2s2-2s1)
    bool secure = false;
    bool forms_agree = false;
};

inline SelfishVerdict check_selfish_security(const NetworkParams& n, const RewardFunction& r,
                                             const ImprovementPair& s) {
    detail::check_reward_domain(r, s);
    const auto c = security_coefficients(n);
    SelfishVerdict out;
    out.fs_lhs = c.alpha1 * evaluate(r, s.s1) + c.beta1 * evaluate(r, 2.0 * s.s1 - s.s2) -
                 c.gamma1 * evaluate(r, s.s2 - s.s1);
    out.if_lhs = c.alpha2 * evaluate(r, s.s2) + c.beta2 * evaluate(r, s.s2 - s.s1) +
                 c.gamma2 * evaluate(r, 2.0 * (s.s2 - s.s1));
    out.fs_condition = out.fs_lhs > 0.0;
    out.if_condition = out.if_lhs > 0.0;
    out.fs_payoff_form = payoff(StrategyProfile::HonestHonest, 1, n, r, s) >
                         payoff(StrategyProfile::ForkSteal, 1, n, r, s);
    out.if_payoff_form = payoff(StrategyProfile::HonestHonest, 2, n, r, s) >
                         payoff(StrategyProfile::IgnoreFork, 2, n, r, s);
    out.secure = out.fs_condition && out.if_condition;
    out.forms_agree =
        out.fs_condition == out.fs_payoff_form && out.if_condition == out.if_payoff_form;
    return out;
}

struct NecessaryConditions {
    bool against_plagiarism = false;  // alpha1 + beta1 - gamma1 > 0
    bool against_forking = false;     // alpha2 + beta2 + gamma2 > 0
};

inline NecessaryConditions check_necessary_conditions(const SecurityCoefficients& c) {
    return NecessaryConditions{c.alpha1 + c.beta1 - c.gamma1 > 0.0,
                               c.alpha2 + c.beta2 + c.gamma2 > 0.0};
}

/// How an eta sweep maps to (p0, q0): either the total per-round event
/// probability is held fixed, or q0 is held fixed and p0 scales.
struct EtaBudget {
    enum class Mode { FixSum, FixQ0 };
    Mode mode = Mode::FixSum;
    double value = 0.006;

    std::pair<double, double> p0_q0(double eta) const {
        if (!(eta > 0.0 && eta < 1.0))
            throw std::invalid_argument("eta out of range (0,1): " + std::to_string(eta));
        if (mode == Mode::FixSum) return {eta * value, (1.0 - eta) * value};
        return {value * eta / (1.0 - eta), value};
    }
};

/// Security at an adversary power share lambda_s: the weaker optimizer with
/// share lambda_s must not profit from fork-and-steal, and the stronger
/// optimizer with share lambda_s must not profit from ignore-and-fork.
inline bool selfish_secure_at(double lambda_s, double p0, double q0, const RewardFunction& r,
                              const ImprovementPair& s) {
    const auto fs_verdict = check_selfish_security(make_params(lambda_s, p0, q0), r, s);
    const auto if_verdict = check_selfish_security(make_params(1.0 - lambda_s, p0, q0), r, s);
    return fs_verdict.fs_condition && if_verdict.if_condition;
}

struct RegionPoint {
    double eta = 0;
    double selfish_lambda_max = 0;   // largest prefix of secure lambda_s grid points
    double malice_lambda_max = 0;    // exact maliciousness boundary
    double longrange_bound = 0;      // necessary bound eta/(1+eta)
};

/// Secure-region boundaries per eta: the largest lambda_s in (0, 0.5] such
/// that every grid point below it is selfish-secure, with the maliciousness
/// and long-range curves for overlay. Pure function; points are independent.
inline std::vector<RegionPoint> secure_region(const RewardFunction& r, const ImprovementPair& s,
                                              const std::vector<double>& eta_grid,
                                              double lambda_resolution = 1e-3,
                                              const EtaBudget& budget = {}) {
    if (!(lambda_resolution > 0.0 && lambda_resolution <= 0.5))
        throw std::invalid_argument("lambda resolution out of range (0, 0.5]");
    std::vector<RegionPoint> out;
    out.reserve(eta_grid.size());
    for (double eta : eta_grid) {
        const auto [p0, q0] = budget.p0_q0(eta);
        RegionPoint pt;
        pt.eta = eta;
        pt.longrange_bound = longrange_necessary_bound(eta);
        const int steps = static_cast<int>(std::floor(0.5 / lambda_resolution + 1e-9));
        for (int i = 1; i <= steps; ++i) {
            const double lam = i * lambda_resolution;
            if (!selfish_secure_at(lam, p0, q0, r, s)) break;
            pt.selfish_lambda_max = lam;
        }
        pt.malice_lambda_max =
            (p0 == q0) ? std::numeric_limits<double>::quiet_NaN() : malice_lambda_bound(p0, q0);
        out.push_back(pt);
    }
    return out;
}

}  // namespace pouw
