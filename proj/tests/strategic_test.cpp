#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "regkit/strategic.hpp"

using namespace regkit;

namespace {

double closed_form_threshold(double kappa, int n, double r) {
    return r * (kappa - 1.0) * (n - 1) / (n * (kappa * (n - 1) + 1.0));
}

}  // namespace

TEST_CASE("luce probabilities normalize and reject bad weights") {
    auto p = luce_probs({5.8, 1.0, 1.0});
    CHECK(p[0] == doctest::Approx(5.8 / 7.8));
    CHECK(p[0] + p[1] + p[2] == doctest::Approx(1.0));
    CHECK_THROWS_AS(luce_probs({1.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(luce_probs({}), std::domain_error);
}

TEST_CASE("payoffs split revenue by selection share minus framing cost") {
    GameConfig cfg{3, 1.0, 0.1, 4.0, 1.0, false};
    PayoffVector pv = payoffs({true, false, false}, cfg);
    CHECK(pv.selection_probs[0] == doctest::Approx(4.0 / 6.0));
    CHECK(pv.payoffs[0] == doctest::Approx(4.0 / 6.0 - 0.1));
    CHECK(pv.payoffs[1] == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("threshold pinned values") {
    CHECK(ne_threshold({5, 1.0, 0.0, 5.8, 1.0, false}) ==
          doctest::Approx(0.15868).epsilon(1e-4));
    CHECK(ne_threshold({2, 1.0, 0.0, 15.7, 1.0, false}) ==
          doctest::Approx(0.44012).epsilon(1e-4));
    CHECK(ne_threshold({5, 2.0, 0.0, 5.8, 1.0, false}) ==
          doctest::Approx(2.0 * 0.15868).epsilon(1e-4));
    CHECK(ne_threshold({5, 1.0, 0.0, 1.0, 1.0, false}) == doctest::Approx(0.0));
    CHECK(ne_threshold({5, 1.0, 0.0, 0.5, 1.0, false}) == doctest::Approx(0.0));
}

TEST_CASE("verify_nash agrees with the closed form on 1000 random draws") {
    std::mt19937_64 rng(4242);
    auto unif = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    int disagreements = 0;
    for (int i = 0; i < 1000; ++i) {
        GameConfig cfg;
        cfg.n_providers = 2 + static_cast<int>(rng() % 7);
        cfg.revenue = unif(0.1, 10.0);
        cfg.kappa = unif(1.01, 30.0);
        cfg.cost_of_optimizing = unif(0.0, 0.6) * cfg.revenue;
        double bound = closed_form_threshold(cfg.kappa, cfg.n_providers, cfg.revenue);
        if (std::abs(cfg.cost_of_optimizing - bound) < 1e-9 * cfg.revenue) continue;
        bool predicted = cfg.cost_of_optimizing < bound;
        bool checked = verify_nash(all_optimize(cfg.n_providers), cfg).is_nash;
        if (predicted != checked) ++disagreements;
    }
    CHECK(disagreements == 0);
}

TEST_CASE("below threshold all-optimize is Nash yet Pareto-dominated") {
    GameConfig cfg{5, 1.0, 0.1, 5.8, 1.0, false};
    EquilibriumReport rep = verify_nash(all_optimize(5), cfg);
    CHECK(rep.is_nash);
    REQUIRE(rep.pareto_dominated_by.has_value());
    CHECK(*rep.pareto_dominated_by == all_zero(5));

    PayoffVector at_ne = payoffs(all_optimize(5), cfg);
    PayoffVector at_zero = payoffs(all_zero(5), cfg);
    for (int i = 0; i < 5; ++i) CHECK(at_ne.payoffs[i] < at_zero.payoffs[i]);
}

TEST_CASE("above threshold all-optimize has a profitable deviation") {
    GameConfig cfg{5, 1.0, 0.2, 5.8, 1.0, false};
    EquilibriumReport rep = verify_nash(all_optimize(5), cfg);
    CHECK_FALSE(rep.is_nash);
    REQUIRE_FALSE(rep.profitable_deviations.empty());
    CHECK(rep.profitable_deviations[0].payoff_gain > 0.0);
}

TEST_CASE("normalized registries leave all-zero as the unique equilibrium") {
    for (double kappa : {1.4, 2.2, 4.4, 5.8, 15.7, 27.6})
        for (int n : {2, 3, 5, 8})
            for (double c : {0.01, 0.05, 0.1}) {
                GameConfig cfg{n, 1.0, c, kappa, 1.0, true};
                auto eqs = enumerate_equilibria(cfg);
                REQUIRE(eqs.size() == 1);
                CHECK(eqs[0].profile == all_zero(n));
                CHECK(welfare(eqs[0].profile, cfg).welfare ==
                      doctest::Approx(cfg.value_per_use));
            }
}

TEST_CASE("welfare accounting charges every optimizer") {
    GameConfig cfg{5, 1.0, 0.1, 5.8, 1.0, false};
    WelfareReport w = welfare(all_optimize(5), cfg);
    CHECK(w.total_framing_cost == doctest::Approx(0.5));
    CHECK(w.welfare == doctest::Approx(1.0 - 0.5));
    CHECK(welfare(all_zero(5), cfg).welfare == doctest::Approx(1.0));
}

TEST_CASE("enumeration finds exactly the profiles verify_nash accepts") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        GameConfig cfg;
        cfg.n_providers = 2 + static_cast<int>(rng() % 4);
        cfg.kappa = 1.0 + static_cast<double>(rng() % 200) / 10.0;
        cfg.cost_of_optimizing = static_cast<double>(rng() % 50) / 100.0;
        auto eqs = enumerate_equilibria(cfg);
        int expected = 0;
        for (int mask = 0; mask < (1 << cfg.n_providers); ++mask) {
            StrategyProfile p(cfg.n_providers);
            for (int i = 0; i < cfg.n_providers; ++i) p[i] = (mask >> i) & 1;
            if (verify_nash(p, cfg).is_nash) ++expected;
        }
        CHECK(static_cast<int>(eqs.size()) == expected);
    }
    CHECK_THROWS_AS(enumerate_equilibria({21, 1.0, 0.1, 2.0, 1.0, false}),
                    std::invalid_argument);
}

TEST_CASE("disclosure attenuation flips profitability at kappa_d <= 1") {
    GameConfig cfg{5, 1.0, 0.05, 5.8, 1.0, false};
    DisclosureGameReport strong = disclosure_game(cfg, 0.933);
    CHECK(strong.kappa_d == doctest::Approx(13.93).epsilon(1e-2));
    CHECK_FALSE(strong.optimization_unprofitable);

    DisclosureGameReport weak = disclosure_game(cfg, 0.345);
    CHECK(weak.kappa_d == doctest::Approx(0.527).epsilon(1e-2));
    CHECK(weak.optimization_unprofitable);
}

TEST_CASE("best-response dynamics settle on a Nash fixed point") {
    GameConfig cheap{5, 1.0, 0.1, 5.8, 1.0, false};
    Trajectory up = best_response_dynamics(all_zero(5), cheap);
    CHECK(up.converged);
    CHECK(up.final_profile == all_optimize(5));
    CHECK(verify_nash(up.final_profile, cheap).is_nash);

    GameConfig normalized{5, 1.0, 0.1, 5.8, 1.0, true};
    Trajectory down = best_response_dynamics(all_optimize(5), normalized);
    CHECK(down.converged);
    CHECK(down.final_profile == all_zero(5));
}

TEST_CASE("config validation rejects nonsense parameters") {
    CHECK_THROWS_AS(GameConfig({1, 1.0, 0.1, 2.0, 1.0, false}).validate(),
                    std::domain_error);
    CHECK_THROWS_AS(GameConfig({3, -1.0, 0.1, 2.0, 1.0, false}).validate(),
                    std::domain_error);
    CHECK_THROWS_AS(GameConfig({3, 1.0, -0.1, 2.0, 1.0, false}).validate(),
                    std::domain_error);
    CHECK_THROWS_AS(GameConfig({3, 1.0, 0.1, 0.0, 1.0, false}).validate(),
                    std::domain_error);
}
