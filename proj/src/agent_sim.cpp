#include "regkit/agent_sim.hpp"

#include <map>

#include "regkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace regkit {

const char* disclosure_text(Disclosure d) {
    switch (d) {
        case Disclosure::None: return "";
        case Disclosure::Label: return kLabelDisclosure;
        case Disclosure::Rating: return kRatingDisclosure;
        case Disclosure::Sysprompt: return kSyspromptDisclosure;
    }
    return "";
}

namespace {

double odds(double p) {
    if (p <= 0.0 || p >= 1.0) throw std::domain_error("odds: p must lie in (0,1)");
    return p / (1.0 - p);
}

// Pooled dose-response odds ratios used to fill the levels the per-model
// calibration does not pin: odds(L2)/odds(L1) and odds(L4)/odds(L3).
constexpr double kL2OverL1 = 0.577;
constexpr double kL4OverL3 = 0.273;

AgentProfile make_profile(std::string id, double k1, double k3,
                          AgentProfile::ChoiceRule rule,
                          AgentProfile::SlotPreference pref, double pref_weight,
                          double base_p, double label_p, double rating_p,
                          double sys_p) {
    AgentProfile p;
    p.agent_id = std::move(id);
    p.level_multipliers = {1.0, k1, k1 * kL2OverL1, k3, k3 * kL4OverL3};
    p.interpolated = {false, false, true, false, true};
    p.choice_rule = rule;
    p.preferred_slot = pref;
    p.slot_preference_weight = pref_weight;
    p.baseline_p = base_p;
    p.label_p = label_p;
    p.rating_p = rating_p;
    p.sysprompt_p = sys_p;
    return p;
}

// Uniform double in [0,1) with 53 bits, independent of library distributions
// so logs replay identically everywhere.
double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int sample_weighted(const std::vector<double>& weights, std::mt19937_64& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = next_uniform(rng) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
}

// Position-bias sampling over a candidate slot set: the preferred end takes
// slot_preference_weight, the remainder splits evenly.
int sample_position(const std::vector<int>& slots, const AgentProfile& agent,
                    std::mt19937_64& rng) {
    if (slots.size() == 1) return slots.front();
    int preferred = agent.preferred_slot == AgentProfile::SlotPreference::First
                        ? slots.front()
                        : slots.back();
    double u = next_uniform(rng);
    if (u < agent.slot_preference_weight) return preferred;
    double rest = (u - agent.slot_preference_weight) / (1.0 - agent.slot_preference_weight);
    int idx = std::min<int>(static_cast<int>(rest * (slots.size() - 1)),
                            static_cast<int>(slots.size()) - 2);
    for (int s : slots) {
        if (s == preferred) continue;
        if (idx-- == 0) return s;
    }
    return slots.back();
}

}  // namespace

double AgentProfile::disclosure_penalty(Disclosure d) const {
    double post;
    switch (d) {
        case Disclosure::None: return 1.0;
        case Disclosure::Label: post = label_p; break;
        case Disclosure::Rating: post = rating_p; break;
        case Disclosure::Sysprompt: post = sysprompt_p; break;
    }
    return odds(post) / odds(baseline_p);
}

AgentProfile calibrate_profile(const std::string& agent_id) {
    using Rule = AgentProfile::ChoiceRule;
    using Pref = AgentProfile::SlotPreference;

    if (agent_id == "deepseek") {
        auto p = make_profile("deepseek", 4.4, 9.0, Rule::DeterministicCeiling, Pref::First, 0.9,
                              0.963, 0.933, 0.833, 0.963);
        p.e4_legal_p = 0.97;
        p.e4_full_p = 0.98;
        p.has_e4 = true;
        return p;
    }
    if (agent_id == "o4-mini") {
        auto p = make_profile("o4-mini", 15.7, 27.6, Rule::DeterministicCeiling, Pref::First, 0.9,
                              0.977, 0.647, 0.567, 0.977);
        p.e4_legal_p = 0.98;
        p.e4_full_p = 0.95;
        p.has_e4 = true;
        return p;
    }
    if (agent_id == "gpt54-mini") {
        // Not in the per-model multiplier table; step-at-L1 multipliers chosen
        // to reproduce its consumer-domain ceilings, flagged as interpolated.
        auto p = make_profile("gpt54-mini", 20.0, 30.0, Rule::DeterministicCeiling, Pref::First,
                              0.995, 0.984, 0.734, 0.674, 0.984);
        p.interpolated = {false, true, true, true, true};
        p.e4_legal_p = 0.96;
        p.e4_full_p = 0.84;
        p.has_e4 = true;
        return p;
    }
    if (agent_id == "gpt54-nano") {
        return make_profile("gpt54-nano", 7.0, 6.6, Rule::DeterministicCeiling, Pref::First, 0.9,
                            0.841, 0.581, 0.711, 0.841);
    }
    if (agent_id == "claude") {
        auto p = make_profile("claude", 1.4, 2.2, Rule::Luce, Pref::Last, 0.78,
                              0.625, 0.345, 0.475, 0.505);
        p.e4_legal_p = 0.41;
        p.e4_full_p = 0.47;
        p.has_e4 = true;
        return p;
    }
    if (agent_id == "gpt-4o") {
        return make_profile("gpt-4o", 2.5, 2.4, Rule::Luce, Pref::First, 0.5,
                            0.706, 0.706, 0.706, 0.706);
    }

    std::ostringstream msg;
    msg << "unknown agent id '" << agent_id << "'; available:";
    for (const auto& id : available_profiles()) msg << " " << id;
    throw std::invalid_argument(msg.str());
}

std::vector<std::string> available_profiles() {
    return {"deepseek", "o4-mini", "gpt54-mini", "gpt54-nano", "claude", "gpt-4o"};
}

TrialRecord simulate_trial(const std::vector<SimTool>& tools, const AgentProfile& agent,
                           Disclosure disclosure, std::mt19937_64& rng) {
    if (tools.size() < 2) throw std::invalid_argument("simulate_trial: need at least 2 tools");

    std::vector<double> weights(tools.size());
    for (std::size_t i = 0; i < tools.size(); ++i) {
        if (disclosure != Disclosure::None && tools[i].optimized) {
            // Treatments are calibrated against the consumer-domain ceiling.
            weights[i] = odds(agent.baseline_p) * agent.disclosure_penalty(disclosure);
        } else {
            weights[i] = agent.kappa(tools[i].level);
        }
    }

    TrialRecord rec;
    rec.n_tools = static_cast<int>(tools.size());
    for (std::size_t i = 0; i < tools.size(); ++i)
        if (tools[i].optimized) rec.slot_of_optimized = static_cast<int>(i);

    const double max_w = *std::max_element(weights.begin(), weights.end());
    const double min_w = *std::min_element(weights.begin(), weights.end());

    if (max_w == min_w) {
        std::vector<int> slots(tools.size());
        for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = static_cast<int>(i);
        rec.selected_slot = sample_position(slots, agent, rng);
    } else if (disclosure == Disclosure::None &&
               agent.choice_rule == AgentProfile::ChoiceRule::DeterministicCeiling) {
        std::vector<int> top;
        for (std::size_t i = 0; i < weights.size(); ++i)
            if (weights[i] == max_w) top.push_back(static_cast<int>(i));
        rec.selected_slot = top.size() == 1 ? top.front() : sample_position(top, agent, rng);
    } else {
        rec.selected_slot = sample_weighted(weights, rng);
    }

    rec.selected_optimized =
        rec.slot_of_optimized && rec.selected_slot == *rec.slot_of_optimized;
    rec.disclosure = disclosure;
    return rec;
}

std::uint64_t derive_cell_seed(std::uint64_t master, const std::string& cell_id) {
    // FNV-1a over the master seed bytes then the cell id.
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](unsigned char b) {
        h ^= b;
        h *= 1099511628211ull;
    };
    for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(master >> (8 * i)));
    for (unsigned char c : cell_id) mix(c);
    return h;
}

TrialLog run_experiment(const ExperimentDesign& design, const std::vector<AgentProfile>& agents) {
    TrialLog log;
    for (const auto& agent : agents) {
        std::map<std::string, int> occurrence;
        for (const CellSpec& cell : design.cells) {
            std::ostringstream prefix;
            prefix << agent.agent_id << "/" << cell.domain << "/" << to_string(cell.condition)
                   << "/" << to_string(cell.disclosure) << "/"
                   << to_string(cell.optimized_level);
            std::ostringstream cell_id;
            cell_id << prefix.str() << "/" << occurrence[prefix.str()]++;
            std::mt19937_64 rng(derive_cell_seed(design.seed, cell_id.str()));

            AgentProfile effective = agent;
            if (cell.rule_override) effective.choice_rule = *cell.rule_override;

            long successes = 0;
            long n = 0;
            for (int rep = 0; rep < design.reps_per_cell; ++rep) {
                const int slot_opt = rep % cell.n_tools;
                std::vector<SimTool> tools(cell.n_tools);
                for (int s = 0; s < cell.n_tools; ++s) {
                    bool is_opt = s == slot_opt && cell.condition != Condition::NN;
                    tools[s].optimized = is_opt;
                    switch (cell.condition) {
                        case Condition::ON:
                            tools[s].level = is_opt ? cell.optimized_level : FramingLevel::L0;
                            break;
                        case Condition::NN:
                            tools[s].level = FramingLevel::L0;
                            break;
                        case Condition::OO:
                            tools[s].level = cell.optimized_level;
                            break;
                    }
                }

                TrialRecord rec = simulate_trial(tools, effective, cell.disclosure, rng);
                rec.trial_id = cell_id.str() + "#" + std::to_string(rep);
                rec.domain_tag = cell.domain;
                rec.agent_id = agent.agent_id;
                rec.condition = cell.condition;
                log.records.push_back(rec);

                ++n;
                if (rec.selected_optimized) ++successes;
                if (design.stop_half_width > 0 && n % cell.n_tools == 0 && n >= design.min_n &&
                    stop_condition_met(successes, n, design.stop_half_width))
                    break;
            }
            if (n % cell.n_tools != 0)
                log.diagnostics.push_back("cell " + cell_id.str() +
                                          ": reps exhausted before position balance achieved");
        }
    }
    return log;
}

}  // namespace regkit
