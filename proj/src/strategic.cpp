#include "regkit/strategic.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace regkit {

namespace {

double tolerance(const GameConfig& cfg) { return 1e-12 * std::max(1.0, cfg.revenue); }

double provider_payoff(const StrategyProfile& profile, const GameConfig& cfg, int provider) {
    PayoffVector pv = payoffs(profile, cfg);
    return pv.payoffs[provider];
}

}  // namespace

void GameConfig::validate() const {
    if (n_providers < 2) throw std::domain_error("game: need at least 2 providers");
    if (revenue <= 0) throw std::domain_error("game: revenue must be positive");
    if (cost_of_optimizing < 0) throw std::domain_error("game: cost must be non-negative");
    if (kappa <= 0) throw std::domain_error("game: kappa must be positive");
}

StrategyProfile all_optimize(int n) { return StrategyProfile(n, true); }
StrategyProfile all_zero(int n) { return StrategyProfile(n, false); }

std::vector<double> luce_probs(const std::vector<double>& f_values) {
    if (f_values.empty()) throw std::domain_error("luce: empty weight vector");
    double sum = 0.0;
    for (double f : f_values) {
        if (f <= 0.0) throw std::domain_error("luce: weights must be positive");
        sum += f;
    }
    std::vector<double> probs;
    probs.reserve(f_values.size());
    for (double f : f_values) probs.push_back(f / sum);
    return probs;
}

PayoffVector payoffs(const StrategyProfile& profile, const GameConfig& cfg) {
    cfg.validate();
    if (static_cast<int>(profile.size()) != cfg.n_providers)
        throw std::invalid_argument("payoffs: profile length != n_providers");

    std::vector<double> weights;
    weights.reserve(profile.size());
    for (bool optimizes : profile)
        weights.push_back(cfg.normalized ? 1.0 : (optimizes ? cfg.kappa : 1.0));

    PayoffVector pv;
    pv.selection_probs = luce_probs(weights);
    pv.payoffs.reserve(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i)
        pv.payoffs.push_back(cfg.revenue * pv.selection_probs[i] -
                             (profile[i] ? cfg.cost_of_optimizing : 0.0));
    return pv;
}

double ne_threshold(const GameConfig& cfg) {
    cfg.validate();
    if (cfg.kappa <= 1.0) return 0.0;
    const double k = cfg.kappa;
    const double n = static_cast<double>(cfg.n_providers);
    return cfg.revenue * (k - 1.0) * (n - 1.0) / (n * (k * (n - 1.0) + 1.0));
}

EquilibriumReport verify_nash(const StrategyProfile& profile, const GameConfig& cfg) {
    EquilibriumReport rep;
    rep.profile = profile;
    rep.threshold = ne_threshold(cfg);

    PayoffVector current = payoffs(profile, cfg);
    const double eps = tolerance(cfg);
    for (int i = 0; i < cfg.n_providers; ++i) {
        StrategyProfile alt = profile;
        alt[i] = !alt[i];
        double gain = provider_payoff(alt, cfg, i) - current.payoffs[i];
        if (gain > eps) rep.profitable_deviations.push_back({i, alt[i], gain});
    }
    rep.is_nash = rep.profitable_deviations.empty();

    // All-zero Pareto-dominates any costly profile with equal shares.
    StrategyProfile zero = all_zero(cfg.n_providers);
    if (profile != zero) {
        PayoffVector base = payoffs(zero, cfg);
        bool weakly = true, strictly = false;
        for (int i = 0; i < cfg.n_providers; ++i) {
            if (base.payoffs[i] < current.payoffs[i] - eps) weakly = false;
            if (base.payoffs[i] > current.payoffs[i] + eps) strictly = true;
        }
        if (weakly && strictly) rep.pareto_dominated_by = zero;
    }
    return rep;
}

std::vector<EquilibriumReport> enumerate_equilibria(const GameConfig& cfg) {
    cfg.validate();
    if (cfg.n_providers > 20)
        throw std::invalid_argument(
            "enumerate_equilibria: n_providers > 20; use the symmetric-class sweep instead");

    std::vector<EquilibriumReport> out;
    // Providers are interchangeable, so Nash-ness depends only on how many
    // optimize. Check one representative per class, then expand the class.
    for (int k = 0; k <= cfg.n_providers; ++k) {
        StrategyProfile rep_profile(cfg.n_providers, false);
        std::fill(rep_profile.begin(), rep_profile.begin() + k, true);
        EquilibriumReport rep = verify_nash(rep_profile, cfg);
        if (!rep.is_nash) continue;

        StrategyProfile mask(cfg.n_providers, false);
        std::fill(mask.begin(), mask.begin() + k, true);
        std::sort(mask.begin(), mask.end());
        do {
            out.push_back(verify_nash(mask, cfg));
        } while (std::next_permutation(mask.begin(), mask.end()));
    }
    return out;
}

DisclosureGameReport disclosure_game(const GameConfig& cfg, double p_label) {
    if (p_label <= 0.0 || p_label >= 1.0)
        throw std::domain_error("disclosure_game: p_label must lie in (0,1)");
    DisclosureGameReport rep;
    rep.kappa_d = p_label / (1.0 - p_label);

    GameConfig attenuated = cfg;
    attenuated.kappa = rep.kappa_d;
    rep.all_optimize_report = verify_nash(all_optimize(cfg.n_providers), attenuated);
    rep.optimization_unprofitable = rep.kappa_d <= 1.0;
    return rep;
}

WelfareReport welfare(const StrategyProfile& profile, const GameConfig& cfg) {
    cfg.validate();
    WelfareReport rep;
    rep.expected_value_selected = cfg.value_per_use;  // identical tools
    long optimizers = std::count(profile.begin(), profile.end(), true);
    rep.total_framing_cost = static_cast<double>(optimizers) * cfg.cost_of_optimizing;
    rep.welfare = rep.expected_value_selected - rep.total_framing_cost;
    return rep;
}

Trajectory best_response_dynamics(const StrategyProfile& start, const GameConfig& cfg,
                                  int max_rounds) {
    cfg.validate();
    Trajectory traj;
    StrategyProfile current = start;
    const double eps = tolerance(cfg);
    std::set<StrategyProfile> seen{current};

    for (int round = 0; round < max_rounds; ++round) {
        bool changed = false;
        for (int i = 0; i < cfg.n_providers; ++i) {
            StrategyProfile alt = current;
            alt[i] = !alt[i];
            double gain = provider_payoff(alt, cfg, i) - provider_payoff(current, cfg, i);
            if (gain > eps) {
                current = alt;
                traj.steps.push_back(current);
                changed = true;
            }
        }
        if (!changed) {
            traj.converged = true;
            break;
        }
        if (!seen.insert(current).second) {
            traj.cycle_detected = true;
            break;
        }
    }
    traj.final_profile = current;
    return traj;
}

}  // namespace regkit
