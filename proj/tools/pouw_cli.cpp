// Command-line driver: single-point analysis, Monte-Carlo simulation,
// parameter sweeps and secure-region boundaries, emitted as plot-ready
// CSV or JSON tables. See README.md for the config schema.
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pouw/io.hpp"
#include "pouw/malice.hpp"
#include "pouw/markov.hpp"
#include "pouw/params.hpp"
#include "pouw/reward.hpp"
#include "pouw/rng.hpp"
#include "pouw/sim.hpp"

namespace {

using pouw::Cell;
using pouw::Json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::optional<std::uint64_t> seed_override;
    std::optional<std::uint64_t> rounds_override;
    unsigned jobs = 0;
};

unsigned default_jobs() {
    if (const char* env = std::getenv("POUW_JOBS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "JSON experiment config")->required();
    cmd->add_option("--out", opt.out_path, "output file path")->required();
    cmd->add_option("--format", opt.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", opt.seed_override, "override the config seed(s)");
    cmd->add_option("--rounds", opt.rounds_override, "override simulation rounds");
    cmd->add_option("--jobs", opt.jobs, "worker threads (default: POUW_JOBS or hardware)");
}

void write_table(const pouw::ResultTable& table, const CommonOptions& opt) {
    std::ofstream out(opt.out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + opt.out_path);
    if (opt.format == "csv")
        table.write_csv(out);
    else
        table.write_json(out);
}

pouw::NetworkParams params_from_config(const Json& cfg, double lambda1_override = -1) {
    const Json& net = pouw::io_detail::require(cfg, "network", "config");
    const double lambda1 = lambda1_override >= 0 ? lambda1_override
                                                 : pouw::io_detail::number(net, "lambda1", "network");
    try {
        return pouw::make_params(lambda1, pouw::io_detail::number(net, "p0", "network"),
                                 pouw::io_detail::number(net, "q0", "network"));
    } catch (const std::invalid_argument& e) {
        throw pouw::ConfigError(std::string("network: ") + e.what());
    }
}

pouw::ImprovementPair improvement_from_config(const Json& cfg) {
    const Json& imp = pouw::io_detail::require(cfg, "improvement", "config");
    try {
        return pouw::make_improvement(pouw::io_detail::number(imp, "s1", "improvement"),
                                      pouw::io_detail::number(imp, "s2", "improvement"));
    } catch (const std::invalid_argument& e) {
        throw pouw::ConfigError(std::string("improvement: ") + e.what());
    }
}

pouw::RewardFunction reward_from_config(const Json& cfg) {
    return pouw::reward_from_json(pouw::io_detail::require(cfg, "reward", "config"));
}

struct SimBlock {
    pouw::StrategyProfile profile = pouw::StrategyProfile::HonestHonest;
    std::uint64_t rounds = 1'000'000;
    pouw::SimMode mode = pouw::SimMode::ChainExact;
    bool truncate_ladder = true;
    pouw::TieRule tie_rule = pouw::TieRule::Coin;
    std::vector<std::uint64_t> seeds = {1};
};

SimBlock sim_block_from_config(const Json& cfg, const CommonOptions& opt) {
    SimBlock b;
    auto it = cfg.find("sim");
    if (it != cfg.end()) {
        const Json& s = *it;
        if (s.contains("profile")) b.profile = pouw::profile_from_string(s["profile"].get<std::string>());
        if (s.contains("rounds")) {
            if (!s["rounds"].is_number_unsigned() || s["rounds"].get<std::uint64_t>() < 1)
                throw pouw::ConfigError("sim.rounds must be a positive integer");
            b.rounds = s["rounds"].get<std::uint64_t>();
        }
        if (s.contains("mode")) {
            const std::string m = s["mode"].get<std::string>();
            if (m == "chain_exact")
                b.mode = pouw::SimMode::ChainExact;
            else if (m == "behavioral")
                b.mode = pouw::SimMode::Behavioral;
            else
                throw pouw::ConfigError("sim.mode: expected chain_exact or behavioral");
        }
        if (s.contains("truncate_ladder")) b.truncate_ladder = s["truncate_ladder"].get<bool>();
        if (s.contains("tie_rule")) b.tie_rule = pouw::tie_rule_from_string(s["tie_rule"].get<std::string>());
        if (s.contains("seeds")) {
            b.seeds.clear();
            for (const auto& v : s["seeds"]) b.seeds.push_back(v.get<std::uint64_t>());
            if (b.seeds.empty()) throw pouw::ConfigError("sim.seeds must not be empty");
        }
    }
    if (opt.rounds_override) {
        if (*opt.rounds_override < 1) throw pouw::ConfigError("--rounds must be >= 1");
        b.rounds = *opt.rounds_override;
    }
    if (opt.seed_override) b.seeds = {*opt.seed_override};
    return b;
}

int grid_points(const Json& cfg) {
    auto it = cfg.find("grid");
    if (it == cfg.end()) return 1000;
    const double v = pouw::io_detail::number(*it, "s_points", "grid");
    if (!(v >= 3)) throw pouw::ConfigError("grid.s_points must be >= 3");
    return static_cast<int>(v);
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const CommonOptions& opt) {
    const Json cfg = pouw::load_config_file(opt.config_path);
    const auto n = params_from_config(cfg);
    const auto s = improvement_from_config(cfg);
    const auto reward = reward_from_config(cfg);
    const int grid = grid_points(cfg);

    const auto coeffs = pouw::security_coefficients(n);
    const auto verdict = pouw::check_selfish_security(n, reward, s);
    const auto necessary = pouw::check_necessary_conditions(coeffs);
    const bool eta_gt_half = n.eta > 0.5;

    double binding = kNan, mu = kNan, worst_s = kNan;
    bool principle_holds = false, principle_necessary_only = false;
    if (eta_gt_half) {
        const auto rv = pouw::check_reward_principle(reward, coeffs, grid);
        binding = rv.binding_ratio;
        mu = rv.mu;
        worst_s = rv.worst_s;
        principle_holds = rv.principle_holds;
        principle_necessary_only = rv.necessary_only;
    }

    bool linear_slope_ok = false;
    if (reward.kind == pouw::RewardKind::Linear && eta_gt_half)
        linear_slope_ok = pouw::check_linear_slope(reward.k, reward.b, reward.s_m, mu).sufficient;

    double honest_wins = kNan;
    bool malice_secure = false;
    try {
        honest_wins = pouw::honest_wins_prob(n);
        malice_secure = honest_wins > 0.5;
    } catch (const std::exception&) {
    }
    bool approx_malice_ok = false;
    if (eta_gt_half && n.lambda1 > 0.0 && n.lambda1 < 1.0)
        approx_malice_ok = pouw::approx_malice_condition(n.lambda1, n.eta);

    const double pi1_hh = pouw::payoff(pouw::StrategyProfile::HonestHonest, 1, n, reward, s);
    const double pi2_hh = pouw::payoff(pouw::StrategyProfile::HonestHonest, 2, n, reward, s);
    const double pi1_fs = pouw::payoff(pouw::StrategyProfile::ForkSteal, 1, n, reward, s);
    const double pi2_if = pouw::payoff(pouw::StrategyProfile::IgnoreFork, 2, n, reward, s);

    pouw::ResultTable table({
        "lambda1",       "p0",
        "q0",            "eta",
        "s1",            "s2",
        "pi1_hh",        "pi2_hh",
        "pi1_fs",        "pi2_if",
        "alpha1",        "beta1",
        "gamma1",        "alpha2",
        "beta2",         "gamma2",
        "fs_lhs",        "if_lhs",
        "binding_ratio", "mu",
        "worst_s",       "prop1_bound",
        "honest_wins",   "fs_condition",
        "if_condition",  "secure_selfish",
        "forms_agree",   "necessary_plagiarism",
        "necessary_forking", "principle_holds",
        "principle_necessary_only", "linear_slope_ok",
        "malice_secure", "approx_malice_ok",
        "eta_gt_half",
    });
    table.add_row({
        Cell::number(n.lambda1), Cell::number(n.p0),
        Cell::number(n.q0), Cell::number(n.eta),
        Cell::number(s.s1), Cell::number(s.s2),
        Cell::number(pi1_hh), Cell::number(pi2_hh),
        Cell::number(pi1_fs), Cell::number(pi2_if),
        Cell::number(coeffs.alpha1), Cell::number(coeffs.beta1),
        Cell::number(coeffs.gamma1), Cell::number(coeffs.alpha2),
        Cell::number(coeffs.beta2), Cell::number(coeffs.gamma2),
        Cell::number(verdict.fs_lhs), Cell::number(verdict.if_lhs),
        Cell::number(binding), Cell::number(mu),
        Cell::number(worst_s), Cell::number(pouw::longrange_necessary_bound(n.eta)),
        Cell::number(honest_wins), Cell::flag(verdict.fs_condition),
        Cell::flag(verdict.if_condition), Cell::flag(verdict.secure),
        Cell::flag(verdict.forms_agree), Cell::flag(necessary.against_plagiarism),
        Cell::flag(necessary.against_forking), Cell::flag(principle_holds),
        Cell::flag(principle_necessary_only), Cell::flag(linear_slope_ok),
        Cell::flag(malice_secure), Cell::flag(approx_malice_ok),
        Cell::flag(eta_gt_half),
    });
    write_table(table, opt);
    return 0;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const CommonOptions& opt) {
    const Json cfg = pouw::load_config_file(opt.config_path);
    const auto n = params_from_config(cfg);
    const auto s = improvement_from_config(cfg);
    const auto reward = reward_from_config(cfg);
    const SimBlock sim = sim_block_from_config(cfg, opt);

    const double analytic_m1 = pouw::payoff(sim.profile, 1, n, reward, s);
    const double analytic_m2 = pouw::payoff(sim.profile, 2, n, reward, s);

    std::vector<std::string> columns = {
        "seed", "profile", "mode", "rounds",
        "sim_reward1_mean", "sim_reward1_stderr",
        "sim_reward2_mean", "sim_reward2_stderr",
        "blocks1", "blocks2", "forks_attempted", "forks_succeeded",
        "analytic_reward1", "analytic_reward2",
    };
    for (int id = 0; id <= pouw::kOverflowState; ++id)
        columns.push_back(id == pouw::kOverflowState ? "occ_other" : "occ_" + std::to_string(id));
    pouw::ResultTable table(columns);
    for (std::uint64_t seed : sim.seeds) {
        pouw::SimConfig sc;
        sc.profile = sim.profile;
        sc.params = n;
        sc.reward = reward;
        sc.s = s;
        sc.rounds = sim.rounds;
        sc.seed = seed;
        sc.mode = sim.mode;
        sc.truncate_ladder = sim.truncate_ladder;
        sc.tie_rule = sim.tie_rule;
        const auto res = pouw::run_mining_sim(sc);
        std::vector<Cell> row = {
            Cell::integer_of(static_cast<std::int64_t>(seed)),
            Cell::text_of(pouw::profile_to_string(sim.profile)),
            Cell::text_of(sim.mode == pouw::SimMode::ChainExact ? "chain_exact" : "behavioral"),
            Cell::integer_of(static_cast<std::int64_t>(sim.rounds)),
            Cell::number(res.reward_per_round[0]), Cell::number(res.reward_stderr[0]),
            Cell::number(res.reward_per_round[1]), Cell::number(res.reward_stderr[1]),
            Cell::integer_of(static_cast<std::int64_t>(res.blocks_mined[0])),
            Cell::integer_of(static_cast<std::int64_t>(res.blocks_mined[1])),
            Cell::integer_of(static_cast<std::int64_t>(res.forks_attempted)),
            Cell::integer_of(static_cast<std::int64_t>(res.forks_succeeded)),
            Cell::number(analytic_m1), Cell::number(analytic_m2),
        };
        std::vector<double> occ(pouw::kOverflowState + 1, 0.0);
        for (std::size_t i = 0; i < res.occupancy_states.size(); ++i)
            occ[static_cast<std::size_t>(res.occupancy_states[i])] = res.occupancy[i];
        for (double v : occ) row.push_back(Cell::number(v));
        table.add_row(std::move(row));
    }
    write_table(table, opt);
    return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepPoint {
    double lambda_s = 0;
    double eta = 0;
    double slope_k = 0;
    double p0 = 0;
    double q0 = 0;
};

struct SweepRowResult {
    double pi1_hh = 0, pi1_fs = 0, pi2_hh = 0, pi2_if = 0;
    double fs_lhs = 0, if_lhs = 0, binding = kNan, mu = kNan;
    bool fs_secure = false, if_secure = false;
    double sim[8] = {kNan, kNan, kNan, kNan, kNan, kNan, kNan, kNan};
};

int cmd_sweep(const CommonOptions& opt) {
    const Json cfg = pouw::load_config_file(opt.config_path);
    const Json& sweep = pouw::io_detail::require(cfg, "sweep", "config");
    const auto s = improvement_from_config(cfg);
    const auto base_reward = reward_from_config(cfg);
    const SimBlock sim = sim_block_from_config(cfg, opt);
    const int grid = grid_points(cfg);
    const bool with_sim = sweep.contains("with_sim") && sweep["with_sim"].get<bool>();

    const bool has_lambda = sweep.contains("lambda_s");
    const bool has_eta = sweep.contains("eta");
    const bool has_slope = sweep.contains("slope_k");
    if (!has_lambda && !has_eta && !has_slope)
        throw pouw::ConfigError("sweep: need at least one of lambda_s, eta, slope_k");
    if (has_slope && base_reward.kind != pouw::RewardKind::Linear)
        throw pouw::ConfigError("sweep.slope_k requires a linear reward function");

    std::vector<double> lambdas, etas, slopes;
    if (has_lambda) lambdas = pouw::axis_from_json(sweep["lambda_s"], "sweep.lambda_s");
    if (has_eta) etas = pouw::axis_from_json(sweep["eta"], "sweep.eta");
    if (has_slope) slopes = pouw::axis_from_json(sweep["slope_k"], "sweep.slope_k");

    pouw::EtaBudget budget;
    if (sweep.contains("eta_budget")) budget = pouw::eta_budget_from_json(sweep["eta_budget"], "sweep.eta_budget");

    double base_p0 = 0, base_q0 = 0, base_lambda = 0;
    if (!has_eta || !has_lambda) {
        const auto base = params_from_config(cfg);
        base_p0 = base.p0;
        base_q0 = base.q0;
        base_lambda = base.lambda1;
    }
    if (!has_lambda) lambdas = {base_lambda};
    if (!has_eta) etas = {kNan};
    if (!has_slope) slopes = {base_reward.kind == pouw::RewardKind::Linear ? base_reward.k : kNan};

    // Rows in lexicographic order of (lambda_s, eta, slope_k).
    std::vector<SweepPoint> points;
    for (double lam : lambdas)
        for (double eta : etas)
            for (double k : slopes) {
                SweepPoint pt;
                pt.lambda_s = lam;
                pt.slope_k = k;
                if (has_eta) {
                    const auto [p0, q0] = budget.p0_q0(eta);
                    pt.p0 = p0;
                    pt.q0 = q0;
                    pt.eta = eta;
                } else {
                    pt.p0 = base_p0;
                    pt.q0 = base_q0;
                    pt.eta = base_p0 / (base_p0 + base_q0);
                }
                points.push_back(pt);
            }

    // Validate every point before any work starts.
    for (const auto& pt : points) {
        if (!(pt.lambda_s >= 0.0 && pt.lambda_s <= 1.0))
            throw pouw::ConfigError("sweep.lambda_s leaves [0,1]");
        if (has_slope && !(pt.slope_k >= 0.0)) throw pouw::ConfigError("sweep.slope_k must be >= 0");
    }

    auto reward_at = [&](const SweepPoint& pt) {
        if (!has_slope) return base_reward;
        return pouw::RewardFunction::linear(pt.slope_k, base_reward.b, base_reward.s_m);
    };

    std::vector<SweepRowResult> results(points.size());
    const std::uint64_t base_seed = sim.seeds.front();
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            const auto& pt = points[i];
            const auto reward = reward_at(pt);
            SweepRowResult& row = results[i];
            const auto n_fs = pouw::make_params(pt.lambda_s, pt.p0, pt.q0);
            const auto n_if = pouw::make_params(1.0 - pt.lambda_s, pt.p0, pt.q0);
            row.pi1_hh = pouw::payoff(pouw::StrategyProfile::HonestHonest, 1, n_fs, reward, s);
            row.pi1_fs = pouw::payoff(pouw::StrategyProfile::ForkSteal, 1, n_fs, reward, s);
            row.pi2_hh = pouw::payoff(pouw::StrategyProfile::HonestHonest, 2, n_if, reward, s);
            row.pi2_if = pouw::payoff(pouw::StrategyProfile::IgnoreFork, 2, n_if, reward, s);
            const auto v_fs = pouw::check_selfish_security(n_fs, reward, s);
            const auto v_if = pouw::check_selfish_security(n_if, reward, s);
            row.fs_lhs = v_fs.fs_lhs;
            row.if_lhs = v_if.if_lhs;
            row.fs_secure = v_fs.fs_condition;
            row.if_secure = v_if.if_condition;
            const auto coeffs = pouw::security_coefficients(n_fs);
            if (n_fs.eta > 0.5) {
                const auto rv = pouw::check_reward_principle(reward, coeffs, grid);
                row.binding = rv.binding_ratio;
                row.mu = rv.mu;
            }
            if (with_sim) {
                auto run = [&](pouw::StrategyProfile profile, const pouw::NetworkParams& n, int miner,
                               int slot) {
                    pouw::SimConfig sc;
                    sc.profile = profile;
                    sc.params = n;
                    sc.reward = reward;
                    sc.s = s;
                    sc.rounds = sim.rounds;
                    sc.seed = pouw::derive_stream_seed(base_seed, i);
                    sc.mode = sim.mode;
                    sc.truncate_ladder = sim.truncate_ladder;
                    sc.tie_rule = sim.tie_rule;
                    const auto res = pouw::run_mining_sim(sc);
                    row.sim[slot] = res.reward_per_round[miner - 1];
                    row.sim[slot + 1] = res.reward_stderr[miner - 1];
                };
                run(pouw::StrategyProfile::HonestHonest, n_fs, 1, 0);
                run(pouw::StrategyProfile::ForkSteal, n_fs, 1, 2);
                run(pouw::StrategyProfile::HonestHonest, n_if, 2, 4);
                run(pouw::StrategyProfile::IgnoreFork, n_if, 2, 6);
            }
        }
    };

    const unsigned jobs = opt.jobs ? opt.jobs : default_jobs();
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<std::string> columns = {"lambda_s", "eta", "slope_k", "p0", "q0",
                                        "pi1_hh", "pi1_fs", "pi2_hh", "pi2_if",
                                        "fs_lhs", "if_lhs", "binding_ratio", "mu"};
    if (with_sim)
        for (const char* c : {"sim_pi1_hh_mean", "sim_pi1_hh_stderr", "sim_pi1_fs_mean",
                              "sim_pi1_fs_stderr", "sim_pi2_hh_mean", "sim_pi2_hh_stderr",
                              "sim_pi2_if_mean", "sim_pi2_if_stderr", "sim_rounds"})
            columns.push_back(c);
    for (const char* c : {"fs_secure", "if_secure", "secure"}) columns.push_back(c);

    pouw::ResultTable table(columns);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        const auto& row = results[i];
        std::vector<Cell> cells = {
            Cell::number(pt.lambda_s), Cell::number(pt.eta), Cell::number(pt.slope_k),
            Cell::number(pt.p0), Cell::number(pt.q0),
            Cell::number(row.pi1_hh), Cell::number(row.pi1_fs),
            Cell::number(row.pi2_hh), Cell::number(row.pi2_if),
            Cell::number(row.fs_lhs), Cell::number(row.if_lhs),
            Cell::number(row.binding), Cell::number(row.mu),
        };
        if (with_sim) {
            for (int k = 0; k < 8; ++k) cells.push_back(Cell::number(row.sim[k]));
            cells.push_back(Cell::integer_of(static_cast<std::int64_t>(sim.rounds)));
        }
        cells.push_back(Cell::flag(row.fs_secure));
        cells.push_back(Cell::flag(row.if_secure));
        cells.push_back(Cell::flag(row.fs_secure && row.if_secure));
        table.add_row(std::move(cells));
    }
    write_table(table, opt);
    return 0;
}

// ---------------------------------------------------------------- region

int cmd_region(const CommonOptions& opt) {
    const Json cfg = pouw::load_config_file(opt.config_path);
    const auto s = improvement_from_config(cfg);
    const Json& region = pouw::io_detail::require(cfg, "region", "config");
    const auto etas = pouw::axis_from_json(pouw::io_detail::require(region, "eta", "region.eta"),
                                           "region.eta");
    double lambda_step = 1e-3;
    if (region.contains("lambda_step")) {
        lambda_step = region["lambda_step"].get<double>();
        if (!(lambda_step > 0.0 && lambda_step <= 0.5))
            throw pouw::ConfigError("region.lambda_step must be in (0, 0.5]");
    }
    pouw::EtaBudget budget;
    if (region.contains("eta_budget"))
        budget = pouw::eta_budget_from_json(region["eta_budget"], "region.eta_budget");

    std::vector<pouw::RewardFunction> rewards;
    if (cfg.contains("rewards")) {
        for (const auto& rj : cfg["rewards"]) rewards.push_back(pouw::reward_from_json(rj, "rewards"));
        if (rewards.empty()) throw pouw::ConfigError("rewards must not be empty");
    } else {
        rewards.push_back(reward_from_config(cfg));
    }

    for (double eta : etas)
        if (!(eta > 0.0 && eta < 1.0)) throw pouw::ConfigError("region.eta values must lie in (0,1)");

    std::vector<std::vector<pouw::RegionPoint>> curves;
    curves.reserve(rewards.size());
    for (const auto& reward : rewards)
        curves.push_back(pouw::secure_region(reward, s, etas, lambda_step, budget));

    std::vector<std::string> columns = {"eta", "p0", "q0"};
    for (std::size_t r = 0; r < rewards.size(); ++r)
        columns.push_back("selfish_lambda_max_" + std::to_string(r));
    columns.push_back("malice_lambda_max");
    columns.push_back("prop1_bound");
    columns.push_back("eta_gt_half");

    pouw::ResultTable table(columns);
    for (std::size_t i = 0; i < etas.size(); ++i) {
        const auto [p0, q0] = budget.p0_q0(etas[i]);
        std::vector<Cell> cells = {Cell::number(etas[i]), Cell::number(p0), Cell::number(q0)};
        for (const auto& curve : curves) cells.push_back(Cell::number(curve[i].selfish_lambda_max));
        cells.push_back(Cell::number(curves[0][i].malice_lambda_max));
        cells.push_back(Cell::number(curves[0][i].longrange_bound));
        cells.push_back(Cell::flag(etas[i] > 0.5));
        table.add_row(std::move(cells));
    }
    write_table(table, opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analytical model and Monte-Carlo simulator for optimization-based "
                 "proof-of-useful-work mining security"};
    app.require_subcommand(1);

    CommonOptions analyze_opt, simulate_opt, sweep_opt, region_opt;
    auto* analyze = app.add_subcommand("analyze", "full analytic report for one parameter point");
    add_common(analyze, analyze_opt);
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo mining simulation");
    add_common(simulate, simulate_opt);
    auto* sweep = app.add_subcommand("sweep", "cartesian parameter sweep table");
    add_common(sweep, sweep_opt);
    auto* region = app.add_subcommand("region", "secure-region boundary curves");
    add_common(region, region_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(analyze_opt);
        if (simulate->parsed()) return cmd_simulate(simulate_opt);
        if (sweep->parsed()) return cmd_sweep(sweep_opt);
        if (region->parsed()) return cmd_region(region_opt);
    } catch (const pouw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
