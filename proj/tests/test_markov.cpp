#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "pouw/markov.hpp"
#include "support/oracles.hpp"

using pouw::build_chain;
using pouw::check_necessary_conditions;
using pouw::check_selfish_security;
using pouw::make_improvement;
using pouw::make_params;
using pouw::payoff;
using pouw::payoff_from_events;
using pouw::relative_values;
using pouw::RewardFunction;
using pouw::security_coefficients;
using pouw::steady_state;
using pouw::StrategyProfile;

namespace {
constexpr StrategyProfile kProfiles[] = {StrategyProfile::HonestHonest, StrategyProfile::ForkSteal,
                                         StrategyProfile::IgnoreFork};
}

TEST_CASE("every chain row is stochastic after the self-loop") {
    const auto n = make_params(0.3, 0.005, 0.001);
    for (auto profile : kProfiles) {
        const auto chain = build_chain(profile, n);
        const auto m = pouw::transition_matrix(chain);
        const std::size_t dim = chain.states.size();
        for (std::size_t i = 0; i < dim; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < dim; ++j) row += m[i * dim + j];
            CHECK(row == Catch::Approx(1.0).margin(1e-15));
        }
    }
}

TEST_CASE("profile state sets") {
    const auto n = make_params(0.3, 0.005, 0.001);
    CHECK(build_chain(StrategyProfile::HonestHonest, n).states.size() == 10);
    CHECK(build_chain(StrategyProfile::ForkSteal, n).states.size() == 14);
    CHECK(build_chain(StrategyProfile::IgnoreFork, n).states.size() == 18);
}

TEST_CASE("failed second fork block keeps the surviving solution") {
    const auto n = make_params(0.3, 0.005, 0.001);
    const auto chain = build_chain(StrategyProfile::IgnoreFork, n);
    bool to_20 = false, q1_to_0 = false;
    for (const auto& t : chain.transitions) {
        if (t.from == 19 && t.rate == pouw::Rate::Q1) {
            to_20 = t.to == 20;
            q1_to_0 = t.to == 0;
        }
    }
    CHECK(to_20);
    CHECK_FALSE(q1_to_0);
}

TEST_CASE("relative values start at 1 and match the symmetric closed form") {
    const auto n = make_params(0.5, 0.001, 0.001);  // p0 = q0, lambda = 1/2
    const auto v = relative_values(StrategyProfile::HonestHonest, n);
    CHECK(v[0] == 1.0);
    CHECK(v[1] == Catch::Approx(0.5).epsilon(1e-14));   // lambda2
    CHECK(v[2] == Catch::Approx(0.5).epsilon(1e-14));   // lambda1
    CHECK(v[3] == Catch::Approx(0.5).epsilon(1e-14));   // 2*lambda1*lambda2
}

TEST_CASE("closed-form relative values match a dense stationary solve") {
    oracles::ParamGen gen(31);
    for (int i = 0; i < 100; ++i) {
        const auto n = gen.params();
        for (auto profile : kProfiles) {
            const auto chain = build_chain(profile, n);
            const auto w_oracle = oracles::stationary_of_chain(chain);
            auto v = relative_values(profile, n);
            double sum = 0.0;
            for (double x : v) sum += x;
            double max_diff = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j)
                max_diff = std::max(max_diff, std::abs(v[j] / sum - w_oracle[j]));
            REQUIRE(max_diff < 1e-10);
        }
    }
}

TEST_CASE("steady state is a distribution and satisfies balance") {
    oracles::ParamGen gen(32);
    for (int i = 0; i < 50; ++i) {
        const auto n = gen.params();
        for (auto profile : kProfiles) {
            const auto chain = build_chain(profile, n);
            const auto w = steady_state(chain, n);
            double sum = 0.0;
            for (double x : w) sum += x;
            REQUIRE(sum == Catch::Approx(1.0).margin(1e-14));

            const auto m = pouw::transition_matrix(chain);
            const std::size_t dim = chain.states.size();
            double residual = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                double wj = 0.0;
                for (std::size_t k = 0; k < dim; ++k) wj += w[k] * m[k * dim + j];
                residual = std::max(residual, std::abs(wj - w[j]));
            }
            REQUIRE(residual < 1e-12);
        }
    }
}

TEST_CASE("payoff formulas decompose into the chains' reward events") {
    oracles::ParamGen gen(33);
    for (int i = 0; i < 50; ++i) {
        const auto n = gen.params();
        const auto s = gen.improvement();
        const auto r = RewardFunction::linear(gen.uniform(0.0, 2.0), gen.uniform(0.1, 3.0),
                                              s.s2 * (1.0 + gen.uniform(0.0, 1.0)));
        for (auto profile : kProfiles) {
            const auto chain = build_chain(profile, n);
            for (int miner : {1, 2}) {
                const double direct = payoff(profile, miner, n, r, s);
                const double via_events = payoff_from_events(chain, miner, n, r, s);
                REQUIRE(direct == Catch::Approx(via_events).margin(1e-15).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("payoff vanishes for a powerless party") {
    const auto s = make_improvement(1.0, 1.5);
    const auto r = RewardFunction::constant(1.0, 2.0);
    const auto n = make_params(0.0, 0.005, 0.001);
    for (auto profile : kProfiles) CHECK(payoff(profile, 1, n, r, s) == 0.0);
}

TEST_CASE("honest beats fork-and-steal at the published high-eta point") {
    // s1:s2 = 2:3, constant reward, eta = 5/6.
    const auto n = make_params(0.45, 0.005, 0.001);
    const auto s = make_improvement(1.0, 1.5);
    const auto r = RewardFunction::constant(1.0, 2.0);
    CHECK(payoff(StrategyProfile::HonestHonest, 1, n, r, s) >
          payoff(StrategyProfile::ForkSteal, 1, n, r, s));
}

TEST_CASE("coefficient signs") {
    oracles::ParamGen gen(34);
    for (int i = 0; i < 200; ++i) {
        const auto c = security_coefficients(gen.params());
        CHECK(c.beta1 > 0.0);
        CHECK(c.gamma1 > 0.0);
        CHECK(c.beta2 > 0.0);
    }
}

TEST_CASE("beta2 dominates gamma2 whenever p0 > q0") {
    oracles::ParamGen gen(35);
    for (int i = 0; i < 200; ++i) {
        const double q0 = gen.uniform(1e-4, 0.01);
        const double p0 = q0 * gen.uniform(1.0001, 10.0);
        const auto c = security_coefficients(make_params(gen.uniform(0.05, 0.95), p0, q0));
        CHECK(c.beta2 > -3.2 * c.gamma2);
    }
}

TEST_CASE("fork-and-steal condition fails at p0 == q0") {
    // With s2 = 1.5*s1 and a constant reward the condition's left side
    // collapses to (alpha1 + beta1 - gamma1) * R, which is negative.
    oracles::ParamGen gen(36);
    for (int i = 0; i < 100; ++i) {
        const double q0 = gen.uniform(1e-4, 0.01);
        const auto c = security_coefficients(make_params(gen.uniform(0.05, 0.95), q0, q0));
        CHECK(c.alpha1 + c.beta1 - c.gamma1 < 0.0);
    }
}

TEST_CASE("coefficient and payoff verdict forms agree") {
    oracles::ParamGen gen(37);
    for (int i = 0; i < 1000; ++i) {
        const auto n = gen.params();
        const auto s = gen.improvement();
        const auto r = RewardFunction::linear(gen.uniform(0.0, 1.5), gen.uniform(0.2, 2.0),
                                              s.s2 * (1.0 + gen.uniform(0.001, 1.0)));
        const auto verdict = check_selfish_security(n, r, s);
        REQUIRE(verdict.forms_agree);
    }
}

TEST_CASE("selfish security across the published eta regimes") {
    const auto s = make_improvement(1.0, 1.5);
    const auto r = RewardFunction::constant(1.0, 2.0);
    for (double lam = 0.02; lam <= 0.5; lam += 0.02) {
        CHECK_FALSE(check_selfish_security(make_params(lam, 0.0005, 0.001), r, s).secure);
        CHECK(check_selfish_security(make_params(lam, 0.005, 0.001), r, s).secure);
    }
}

TEST_CASE("necessary conditions") {
    const auto both = check_necessary_conditions(security_coefficients(make_params(0.5, 0.005, 0.001)));
    CHECK(both.against_plagiarism);
    CHECK(both.against_forking);

    const auto at_half = check_necessary_conditions(security_coefficients(make_params(0.5, 0.001, 0.001)));
    CHECK_FALSE(at_half.against_plagiarism);

    oracles::ParamGen gen(38);
    for (int i = 0; i < 300; ++i) {
        const auto c = security_coefficients(gen.params());
        const auto nc = check_necessary_conditions(c);
        if (nc.against_plagiarism && nc.against_forking && c.beta2 + c.gamma2 != 0.0)
            CHECK(pouw::binding_ratio(c) < 1.0);
    }
}

TEST_CASE("secure region structure") {
    const auto s = make_improvement(1.0, 1.5);
    std::vector<double> low_eta{0.30, 0.40, 0.50};
    const auto flat = pouw::secure_region(RewardFunction::constant(1.0, 2.0), s, low_eta, 0.01);
    for (const auto& pt : flat) CHECK(pt.selfish_lambda_max == 0.0);

    std::vector<double> etas;
    for (double eta = 0.55; eta <= 0.951; eta += 0.05) etas.push_back(eta);
    const auto r_const = pouw::secure_region(RewardFunction::constant(1.0, 2.0), s, etas, 0.005);
    const auto r_half = pouw::secure_region(RewardFunction::linear(0.5, 1.0, 2.0), s, etas, 0.005);
    const auto r_one = pouw::secure_region(RewardFunction::linear(1.0, 1.0, 2.0), s, etas, 0.005);
    const auto r_sqrt = pouw::secure_region(RewardFunction::power(1.2, 0.5, 1.0, 2.0), s, etas, 0.005);

    bool sqrt_differs = false;
    for (std::size_t i = 0; i < etas.size(); ++i) {
        CHECK(r_const[i].selfish_lambda_max <= r_half[i].selfish_lambda_max);
        CHECK(r_half[i].selfish_lambda_max <= r_one[i].selfish_lambda_max);
        if (r_sqrt[i].selfish_lambda_max != r_one[i].selfish_lambda_max) sqrt_differs = true;
        CHECK(r_const[i].malice_lambda_max < 0.5);
        CHECK(r_const[i].malice_lambda_max < r_const[i].longrange_bound);
    }
    CHECK(sqrt_differs);
}

TEST_CASE("fork-and-steal advantage is non-increasing in eta (observed, warning only)") {
    const auto s = make_improvement(1.0, 1.5);
    const auto r = RewardFunction::constant(1.0, 2.0);
    int violations = 0;
    for (double lam : {0.15, 0.30, 0.45}) {
        double prev_gap = std::numeric_limits<double>::infinity();
        for (double eta = 0.30; eta <= 0.901; eta += 0.02) {
            const auto n = make_params(lam, 0.006 * eta, 0.006 * (1.0 - eta));
            const double gap = payoff(StrategyProfile::ForkSteal, 1, n, r, s) -
                               payoff(StrategyProfile::HonestHonest, 1, n, r, s);
            if (gap > prev_gap + 1e-15) ++violations;
            prev_gap = gap;
        }
    }
    if (violations > 0)
        WARN("fork-and-steal advantage rose with eta at " << violations << " grid points");
}
