// Round-based Monte-Carlo simulation of the two-party mining process.
//
// ChainExact mode samples the analytic chain directly, one multinomial
// transition per round, so occupancy and reward rates converge to the
// closed-form steady state. Behavioral mode simulates per-miner Bernoulli
// events and the protocol logic itself (longest chain, fork bookkeeping,
// benchmark updates); simultaneous events it permits are O(p*q) per round.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pouw/markov.hpp"
#include "pouw/params.hpp"
#include "pouw/reward.hpp"
#include "pouw/rng.hpp"

namespace pouw {

enum class SimMode { ChainExact, Behavioral };

/// Resolution of two block publications landing in the same round. The
/// analytic chain never needs one (at most one transition per round); the
/// behavioral simulator defaults to a fair coin.
enum class TieRule { Coin, Party1, Party2 };

struct SimConfig {
    StrategyProfile profile = StrategyProfile::HonestHonest;
    NetworkParams params;
    RewardFunction reward;
    ImprovementPair s;
    std::uint64_t rounds = 0;
    std::uint64_t seed = 0;
    SimMode mode = SimMode::ChainExact;
    bool truncate_ladder = true;  // Behavioral only; ChainExact is always truncated
    TieRule tie_rule = TieRule::Coin;
    int batches = 100;  // batch-means groups for the standard error
};

/// Occupancy id for behavioral configurations beyond the truncated ladder.
inline constexpr int kOverflowState = 22;

struct SimResult {
    std::uint64_t rounds = 0;
    std::uint64_t seed_used = 0;
    double total_reward[2] = {0, 0};
    double reward_per_round[2] = {0, 0};
    double reward_stderr[2] = {0, 0};
    std::uint64_t blocks_mined[2] = {0, 0};
    std::uint64_t forks_attempted = 0;
    std::uint64_t forks_succeeded = 0;
    std::vector<int> occupancy_states;
    std::vector<double> occupancy;  // visit fractions, same order as occupancy_states
};

/// Steps the analytic chain one transition per uniform draw. Exposed so
/// tests can couple two chains on a shared per-round uniform; cumulative
/// slices are laid out in a fixed rate order, which keeps coupled chains in
/// lockstep while they visit states with identical outgoing rows.
class ChainExactEngine {
  public:
    ChainExactEngine(const ChainSpec& chain, const RewardFunction& r, const ImprovementPair& s)
        : states_(chain.states), rows_(chain.states.size()), visits_(chain.states.size(), 0) {
        auto rate_order = [](Rate x) {
            switch (x) {
                case Rate::Q1: return 0;
                case Rate::Q2: return 1;
                case Rate::P1: return 2;
                case Rate::P2: return 3;
            }
            return 4;
        };
        std::vector<Transition> sorted = chain.transitions;
        std::stable_sort(sorted.begin(), sorted.end(), [&](const Transition& a, const Transition& b) {
            return a.from != b.from ? a.from < b.from : rate_order(a.rate) < rate_order(b.rate);
        });
        for (const auto& t : sorted) {
            Slice slc;
            slc.to = chain.index_of(t.to);
            slc.prob = t.prob;
            for (const auto& e : chain.reward_events) {
                if (e.state != t.from || e.rate != t.rate) continue;
                for (const auto& a : e.args) {
                    slc.reward[e.miner - 1] += evaluate(r, a.value(s));
                    ++slc.blocks[e.miner - 1];
                }
            }
            if ((chain.profile == StrategyProfile::ForkSteal && t.to == 10) ||
                (chain.profile == StrategyProfile::IgnoreFork && t.to == 14))
                slc.fork_attempt = true;
            if (chain.profile == StrategyProfile::ForkSteal &&
                (t.from == 12 || t.from == 13) && t.rate == Rate::Q1)
                slc.fork_success = true;
            if (chain.profile == StrategyProfile::IgnoreFork &&
                (t.from == 16 || t.from == 19) && t.rate == Rate::Q2)
                slc.fork_success = true;
            rows_[static_cast<std::size_t>(chain.index_of(t.from))].push_back(slc);
        }
        for (auto& row : rows_) {
            double cum = 0.0;
            for (auto& slc : row) {
                cum += slc.prob;
                slc.cum = cum;
            }
        }
    }

    struct RoundReward {
        double r1 = 0;
        double r2 = 0;
    };

    RoundReward step(double u) {
        ++visits_[static_cast<std::size_t>(state_)];
        const auto& row = rows_[static_cast<std::size_t>(state_)];
        for (const auto& slc : row) {
            if (u < slc.cum) {
                if (slc.fork_attempt) ++forks_attempted_;
                if (slc.fork_success) ++forks_succeeded_;
                blocks_[0] += slc.blocks[0];
                blocks_[1] += slc.blocks[1];
                state_ = slc.to;
                return {slc.reward[0], slc.reward[1]};
            }
        }
        return {};  // self-loop
    }

    int state_index() const { return state_; }
    const std::vector<int>& states() const { return states_; }
    const std::vector<std::uint64_t>& visits() const { return visits_; }
    std::uint64_t blocks(int miner) const { return blocks_[miner - 1]; }
    std::uint64_t forks_attempted() const { return forks_attempted_; }
    std::uint64_t forks_succeeded() const { return forks_succeeded_; }

  private:
    struct Slice {
        double cum = 0;
        double prob = 0;
        int to = 0;
        double reward[2] = {0, 0};
        int blocks[2] = {0, 0};
        bool fork_attempt = false;
        bool fork_success = false;
    };

    std::vector<int> states_;
    std::vector<std::vector<Slice>> rows_;
    std::vector<std::uint64_t> visits_;
    int state_ = 0;
    std::uint64_t blocks_[2] = {0, 0};
    std::uint64_t forks_attempted_ = 0;
    std::uint64_t forks_succeeded_ = 0;
};

namespace detail {

/// Protocol-level simulation state. Solutions are tracked as offsets above
/// the current public benchmark, so publishing a block of improvement d
/// rebases every other offset by -d; a solution survives while its offset
/// stays strictly positive.
class BehavioralEngine {
  public:
    BehavioralEngine(const SimConfig& cfg) : cfg_(cfg) {}

    struct RoundReward {
        double r1 = 0;
        double r2 = 0;
    };

    RoundReward step(SplitMix64& rng) {
        tally_occupancy();
        RoundReward out;
        round_rebase_ = 0;
        round_reset2_ = false;

        // One exclusive activity per miner per round. A drawn event is a
        // nonce if the miner holds a solution (or hashes a private block),
        // otherwise a solution find.
        const bool was_solving1 = fs_ == FsStage::None && !m_[0].mining;
        const bool was_solving2 = if_ == IfStage::None && !m_[1].mining;
        const bool e1 = rng.bernoulli(miner1_event_rate());
        const bool e2 = rng.bernoulli(miner2_event_rate());

        const bool pub1 = e1 && fs_ == FsStage::None && m_[0].mining;
        const bool pub2 = e2 && if_ == IfStage::None && m_[1].mining;
        const bool fork_pub = (e1 && fs_ == FsStage::Hash2) || (e2 && if_ == IfStage::Hash2);
        const bool victim_pub = (fs_ != FsStage::None && pub2) || (if_ != IfStage::None && pub1);

        if (fork_pub && victim_pub) {
            const bool fork_first = tie_winner_is_attacker(rng);
            if (fork_first)
                resolve_fork_success(out);
            else
                publish_public(pub1 ? 1 : 2, out);
        } else if (fork_pub) {
            resolve_fork_success(out);
        } else if (pub1 && pub2) {
            int winner = 0;
            switch (cfg_.tie_rule) {
                case TieRule::Coin: winner = rng.bernoulli(0.5) ? 1 : 2; break;
                case TieRule::Party1: winner = 1; break;
                case TieRule::Party2: winner = 2; break;
            }
            publish_public(winner, out);
        } else if (pub1 || pub2) {
            publish_public(pub1 ? 1 : 2, out);
        } else {
            advance_attack_stages(e1, e2);
        }

        apply_finds(e1 && was_solving1, e2 && was_solving2);
        return out;
    }

    const std::vector<std::uint64_t>& visits() const { return visits_; }
    std::uint64_t blocks(int miner) const { return blocks_[miner - 1]; }
    std::uint64_t forks_attempted() const { return forks_attempted_; }
    std::uint64_t forks_succeeded() const { return forks_succeeded_; }

  private:
    enum class FsStage { None, Hash1, Hash2 };
    enum class IfStage { None, Hash1, Solve2, Hash2 };

    struct MinerState {
        bool mining = false;  // holds a valid unspent solution, doing hash trials
        double offset = 0;    // solution value above the public benchmark
    };

    double miner1_event_rate() const {
        if (fs_ != FsStage::None) return cfg_.params.q1;  // hashing a private block
        return m_[0].mining ? cfg_.params.q1 : cfg_.params.p1;
    }

    double miner2_event_rate() const {
        switch (if_) {
            case IfStage::Hash1:
            case IfStage::Hash2: return cfg_.params.q2;
            case IfStage::Solve2: return cfg_.params.p2;
            case IfStage::None: break;
        }
        return m_[1].mining ? cfg_.params.q2 : cfg_.params.p2;
    }

    bool tie_winner_is_attacker(SplitMix64& rng) {
        const int attacker = fs_ != FsStage::None ? 1 : 2;
        switch (cfg_.tie_rule) {
            case TieRule::Coin: return rng.bernoulli(0.5);
            case TieRule::Party1: return attacker == 1;
            case TieRule::Party2: return attacker == 2;
        }
        return false;
    }

    void credit(int miner, double amount, RoundReward& out) {
        (miner == 1 ? out.r1 : out.r2) += amount;
        ++blocks_[miner - 1];
    }

    // A public block by `publisher` with its current offset. Handles attack
    // triggers, attack failures, survivor bookkeeping and truncation.
    void publish_public(int publisher, RoundReward& out) {
        MinerState& self = m_[publisher - 1];
        MinerState& other = m_[2 - publisher];
        const double d = self.offset;
        self.mining = false;
        self.offset = 0;
        round_rebase_ = d;

        if (fs_ != FsStage::None && publisher == 2) {
            // Victim extends the chain: the fork is now one behind and dies.
            // Its pending first block settles together with this one.
            credit(2, pending_credit_, out);
            credit(2, evaluate(cfg_.reward, d), out);
            fs_ = FsStage::None;
            pending_credit_ = 0;
            depth_ = 0;
            return;
        }
        if (if_ != IfStage::None && publisher == 1) {
            credit(1, pending_credit_, out);
            credit(1, evaluate(cfg_.reward, d), out);
            pending_credit_ = 0;
            if (if_ == IfStage::Hash2) {
                // The second private solution beats the new benchmark and
                // survives as an ordinary unspent solution.
                m_[1].mining = true;
                m_[1].offset = 2.0 * cfg_.s.s2 - 2.0 * cfg_.s.s1;
                depth_ = 3;
            } else {
                m_[1].mining = false;
                m_[1].offset = 0;
                depth_ = 0;
            }
            if_ = IfStage::None;
            return;
        }

        // Attack triggers: only from the fresh-benchmark race (depth 0) where
        // the selfish party already holds an unspent solution.
        if (cfg_.profile == StrategyProfile::ForkSteal && publisher == 2 && depth_ == 0 &&
            other.mining && fs_ == FsStage::None && if_ == IfStage::None) {
            pending_credit_ = evaluate(cfg_.reward, d);
            fs_ = FsStage::Hash1;
            ++forks_attempted_;
            other.mining = false;  // the solution moves into the private fork
            other.offset = 0;
            return;
        }
        if (cfg_.profile == StrategyProfile::IgnoreFork && publisher == 1 && depth_ == 0 &&
            other.mining && fs_ == FsStage::None && if_ == IfStage::None) {
            pending_credit_ = evaluate(cfg_.reward, d);
            if_ = IfStage::Hash1;
            ++forks_attempted_;
            other.mining = false;
            other.offset = 0;
            return;
        }

        credit(publisher, evaluate(cfg_.reward, d), out);
        if (other.mining) {
            other.offset -= d;
            const bool survives = other.offset > 0.0;
            const bool truncated = cfg_.truncate_ladder && depth_ >= 3;
            if (survives && !truncated) {
                ++depth_;
                return;
            }
            other.mining = false;
            other.offset = 0;
        }
        depth_ = 0;
    }

    void resolve_fork_success(RoundReward& out) {
        const ImprovementPair& s = cfg_.s;
        if (fs_ == FsStage::Hash2) {
            // Fork tip equals the public tip value: benchmark unchanged, the
            // stolen block replaces the victim's. The victim drops any
            // in-flight work along with its orphaned block.
            credit(1, evaluate(cfg_.reward, s.s1), out);
            credit(1, evaluate(cfg_.reward, s.s2 - s.s1), out);
            m_[1].mining = false;
            m_[1].offset = 0;
            round_reset2_ = true;
            fs_ = FsStage::None;
        } else {
            // Private chain ends 2*s2 above the pre-fork benchmark while the
            // public tip was s1 above it; rebase by the difference.
            credit(2, evaluate(cfg_.reward, s.s2), out);
            credit(2, evaluate(cfg_.reward, s.s2), out);
            round_rebase_ = 2.0 * s.s2 - s.s1;
            if (m_[0].mining) {
                m_[0].offset -= round_rebase_;
                if (m_[0].offset <= 0.0) {
                    m_[0].mining = false;
                    m_[0].offset = 0;
                }
            }
            if_ = IfStage::None;
        }
        pending_credit_ = 0;
        depth_ = 0;
        ++forks_succeeded_;
    }

    void advance_attack_stages(bool e1, bool e2) {
        if (e1 && fs_ == FsStage::Hash1) fs_ = FsStage::Hash2;
        if (e2) {
            if (if_ == IfStage::Hash1)
                if_ = IfStage::Solve2;
            else if (if_ == IfStage::Solve2)
                if_ = IfStage::Hash2;
        }
    }

    // A solution found this round targets the round-start benchmark; it only
    // counts if it still beats the benchmark after this round's publication.
    void apply_finds(bool found1, bool found2) {
        if (found1) {
            const double off = cfg_.s.s1 - round_rebase_;
            if (off > 0.0) {
                m_[0].mining = true;
                m_[0].offset = off;
            }
        }
        if (found2 && !round_reset2_) {
            const double off = cfg_.s.s2 - round_rebase_;
            if (off > 0.0) {
                m_[1].mining = true;
                m_[1].offset = off;
            }
        }
    }

    int classify() const {
        if (fs_ == FsStage::Hash1) return m_[1].mining ? 11 : 10;
        if (fs_ == FsStage::Hash2) return m_[1].mining ? 13 : 12;
        if (if_ == IfStage::Hash1) return m_[0].mining ? 17 : 14;
        if (if_ == IfStage::Solve2) return m_[0].mining ? 18 : 15;
        if (if_ == IfStage::Hash2) return m_[0].mining ? 19 : 16;
        switch (depth_) {
            case 0:
                if (!m_[0].mining && !m_[1].mining) return 0;
                if (m_[0].mining && m_[1].mining) return 3;
                return m_[0].mining ? 2 : 1;
            case 1:
                if (m_[1].mining) return m_[0].mining ? 5 : 4;
                break;
            case 2:
                if (m_[0].mining) return m_[1].mining ? 7 : 6;
                break;
            case 3:
                if (m_[1].mining) {
                    if (cfg_.profile == StrategyProfile::IgnoreFork)
                        return m_[0].mining ? 21 : 20;
                    return m_[0].mining ? 9 : 8;
                }
                break;
            default: break;
        }
        return kOverflowState;
    }

    void tally_occupancy() { ++visits_[static_cast<std::size_t>(classify())]; }

    SimConfig cfg_;
    MinerState m_[2];
    int depth_ = 0;  // surviving publications since the last full reset
    FsStage fs_ = FsStage::None;
    IfStage if_ = IfStage::None;
    double pending_credit_ = 0;  // reward of the block the active fork races
    double round_rebase_ = 0;    // benchmark advance applied this round
    bool round_reset2_ = false;  // a successful steal discards the victim's round
    std::vector<std::uint64_t> visits_ = std::vector<std::uint64_t>(kOverflowState + 1, 0);
    std::uint64_t blocks_[2] = {0, 0};
    std::uint64_t forks_attempted_ = 0;
    std::uint64_t forks_succeeded_ = 0;
};

struct BatchAccumulator {
    explicit BatchAccumulator(std::uint64_t rounds, int batches)
        : batch_size(std::max<std::uint64_t>(1, rounds / static_cast<std::uint64_t>(std::max(1, batches)))) {}

    void add(double x) {
        current += x;
        if (++in_batch == batch_size) {
            sums.push_back(current);
            current = 0;
            in_batch = 0;
        }
    }

    /// Standard error of the per-round mean from batch means.
    double stderr_of_mean() const {
        const std::size_t b = sums.size();
        if (b < 2) return 0.0;
        double mean = 0.0;
        for (double v : sums) mean += v;
        mean /= static_cast<double>(b);
        double var = 0.0;
        for (double v : sums) var += (v - mean) * (v - mean);
        var /= static_cast<double>(b - 1);
        // batch-mean variance -> per-round mean variance
        return std::sqrt(var / static_cast<double>(b)) / static_cast<double>(batch_size);
    }

    std::uint64_t batch_size;
    std::uint64_t in_batch = 0;
    double current = 0;
    std::vector<double> sums;
};

}  // namespace detail

inline void validate(const SimConfig& cfg) {
    if (cfg.rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    if (cfg.batches < 1) throw std::invalid_argument("batches must be >= 1");
    detail::check_reward_domain(cfg.reward, cfg.s);
}

inline SimResult run_mining_sim(const SimConfig& cfg) {
    validate(cfg);
    SplitMix64 rng(cfg.seed);
    SimResult res;
    res.rounds = cfg.rounds;
    res.seed_used = cfg.seed;
    detail::BatchAccumulator acc1(cfg.rounds, cfg.batches), acc2(cfg.rounds, cfg.batches);

    auto finish = [&](auto& engine) {
        res.reward_per_round[0] = res.total_reward[0] / static_cast<double>(cfg.rounds);
        res.reward_per_round[1] = res.total_reward[1] / static_cast<double>(cfg.rounds);
        res.reward_stderr[0] = acc1.stderr_of_mean();
        res.reward_stderr[1] = acc2.stderr_of_mean();
        res.blocks_mined[0] = engine.blocks(1);
        res.blocks_mined[1] = engine.blocks(2);
        res.forks_attempted = engine.forks_attempted();
        res.forks_succeeded = engine.forks_succeeded();
        double total_visits = 0;
        for (auto v : engine.visits()) total_visits += static_cast<double>(v);
        for (auto v : engine.visits()) res.occupancy.push_back(static_cast<double>(v) / total_visits);
    };

    if (cfg.mode == SimMode::ChainExact) {
        const auto chain = build_chain(cfg.profile, cfg.params);
        ChainExactEngine engine(chain, cfg.reward, cfg.s);
        for (std::uint64_t i = 0; i < cfg.rounds; ++i) {
            const auto rr = engine.step(rng.next_double());
            res.total_reward[0] += rr.r1;
            res.total_reward[1] += rr.r2;
            acc1.add(rr.r1);
            acc2.add(rr.r2);
        }
        res.occupancy_states = engine.states();
        finish(engine);
    } else {
        detail::BehavioralEngine engine(cfg);
        for (std::uint64_t i = 0; i < cfg.rounds; ++i) {
            const auto rr = engine.step(rng);
            res.total_reward[0] += rr.r1;
            res.total_reward[1] += rr.r2;
            acc1.add(rr.r1);
            acc2.add(rr.r2);
        }
        for (int id = 0; id <= kOverflowState; ++id) res.occupancy_states.push_back(id);
        finish(engine);
    }
    return res;
}

struct LongRangeOptions {
    std::uint64_t max_steps_per_trial = 10'000'000;
    // A trial counts as failed once the main chain leads by this much; the
    // success probability it truncates is rho^(cutoff+1).
    std::int64_t lead_failure_cutoff = 512;
};

struct LongRangeResult {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t censored = 0;  // trials that hit the step budget
    double rate = 0;
    double rate_stderr = 0;
    std::uint64_t seed_used = 0;
};

/// Long-range attack race from depth k, one walk step per block contest.
/// Each contest draws fresh block times: the honest side needs a solution
/// (geometric, p2) and then a nonce (geometric, q2), the plagiarizing
/// attacker only a nonce (geometric, q1). The main-chain lead moves +1 when
/// the honest side is strictly faster, else -1; the attack succeeds when
/// the lead reaches -1. Censored trials count as failures in the rate.
inline LongRangeResult run_longrange_sim(int k, const NetworkParams& n, std::uint64_t trials,
                                         std::uint64_t seed, LongRangeOptions opts = {}) {
    if (k < 0) throw std::invalid_argument("attack depth k must be >= 0");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    const bool honest_finite = n.p2 > 0.0 && n.q2 > 0.0;
    const bool attacker_finite = n.q1 > 0.0;
    SplitMix64 rng(seed);
    LongRangeResult res;
    res.trials = trials;
    res.seed_used = seed;

    for (std::uint64_t t = 0; t < trials; ++t) {
        std::int64_t lead = k;
        bool done = false;
        for (std::uint64_t step = 0; step < opts.max_steps_per_trial && !done; ++step) {
            bool honest_first;
            if (honest_finite && attacker_finite) {
                const std::uint64_t t_honest = rng.geometric(n.p2) + rng.geometric(n.q2);
                honest_first = t_honest < rng.geometric(n.q1);
            } else if (honest_finite != attacker_finite) {
                honest_first = honest_finite;
            } else {
                break;  // neither side can ever produce a block
            }
            lead += honest_first ? 1 : -1;
            if (lead < 0) {
                ++res.successes;
                done = true;
            } else if (lead >= opts.lead_failure_cutoff) {
                done = true;
            }
        }
        if (!done) ++res.censored;
    }
    res.rate = static_cast<double>(res.successes) / static_cast<double>(trials);
    res.rate_stderr = std::sqrt(res.rate * (1.0 - res.rate) / static_cast<double>(trials));
    return res;
}

}  // namespace pouw
