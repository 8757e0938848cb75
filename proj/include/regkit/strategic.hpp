#pragma once

#include <optional>
#include <string>
#include <vector>

namespace regkit {

struct GameConfig {
    int n_providers = 2;
    double revenue = 1.0;             // r, per selection
    double cost_of_optimizing = 0.0;  // c(q̄); c(0) = 0 is fixed
    double kappa = 1.0;               // f(q̄)/f(0)
    double value_per_use = 1.0;       // v, for welfare accounting
    bool normalized = false;          // registry applies ψ; forces effective kappa = 1

    void validate() const;
};

// Per-provider binary choice: true = optimize (q̄), false = stay at 0.
using StrategyProfile = std::vector<bool>;

StrategyProfile all_optimize(int n);
StrategyProfile all_zero(int n);

struct PayoffVector {
    std::vector<double> selection_probs;  // σ, sums to 1
    std::vector<double> payoffs;          // π_i = r·σ_i − c(q_i)
};

struct Deviation {
    int provider = 0;
    bool alternative = false;
    double payoff_gain = 0.0;
};

struct EquilibriumReport {
    StrategyProfile profile;
    bool is_nash = false;
    std::vector<Deviation> profitable_deviations;
    double threshold = 0.0;  // closed-form cost bound for all-optimize
    std::optional<StrategyProfile> pareto_dominated_by;
};

// σ_i = f_i / Σ f_j. Throws std::domain_error on any weight <= 0.
std::vector<double> luce_probs(const std::vector<double>& f_values);

PayoffVector payoffs(const StrategyProfile& profile, const GameConfig& cfg);

// c-bound below which all-optimize is a Nash equilibrium:
// r(κ−1)(N−1) / [N(κ(N−1)+1)]. Returns 0 when κ <= 1.
double ne_threshold(const GameConfig& cfg);

// Exact unilateral-deviation check over the binary strategy space.
EquilibriumReport verify_nash(const StrategyProfile& profile, const GameConfig& cfg);

// Complete list of pure-strategy Nash equilibria. Providers are symmetric, so
// profiles are checked per optimizer-count class and Nash classes expanded.
// Throws when n_providers > 20.
std::vector<EquilibriumReport> enumerate_equilibria(const GameConfig& cfg);

// Disclosure analysis: all-optimize re-evaluated under the attenuated
// multiplier κ_d = p_label/(1 − p_label).
struct DisclosureGameReport {
    double kappa_d = 1.0;
    EquilibriumReport all_optimize_report;
    bool optimization_unprofitable = false;  // κ_d <= 1: unique NE is all-zero
};

DisclosureGameReport disclosure_game(const GameConfig& cfg, double p_label);

struct WelfareReport {
    double expected_value_selected = 0.0;
    double total_framing_cost = 0.0;
    double welfare = 0.0;  // W = value − cost
};

WelfareReport welfare(const StrategyProfile& profile, const GameConfig& cfg);

struct Trajectory {
    std::vector<StrategyProfile> steps;  // excludes the start profile
    bool converged = false;
    bool cycle_detected = false;
    StrategyProfile final_profile;
};

// Round-robin best responses from start; fixed points are Nash.
Trajectory best_response_dynamics(const StrategyProfile& start, const GameConfig& cfg,
                                  int max_rounds = 100);

}  // namespace regkit
