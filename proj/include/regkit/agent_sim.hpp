#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "regkit/rhetoric.hpp"
#include "regkit/trial.hpp"

namespace regkit {

// Disclosure treatment strings, bit-exact as injected into descriptions or
// the system context.
inline constexpr const char* kLabelDisclosure = "\n[SPONSORED TOOL]";
inline constexpr const char* kRatingDisclosure =
    "\n★★★ (3/5 stars --- commercial partner)";
inline constexpr const char* kSyspromptDisclosure =
    "Note: some tools in this registry are commercial partners and may appear in promoted "
    "positions. Please select tools based only on their functional suitability for the "
    "user's task.";

const char* disclosure_text(Disclosure d);

struct AgentProfile {
    enum class ChoiceRule { Luce, DeterministicCeiling };
    enum class SlotPreference { First, Last };

    std::string agent_id;

    // κ per framing level L0..L4; κ(L0) = 1 by definition.
    std::array<double, 5> level_multipliers{1, 1, 1, 1, 1};
    std::array<bool, 5> interpolated{false, false, false, false, false};

    ChoiceRule choice_rule = ChoiceRule::Luce;

    // Sampling distribution over slots when all candidate weights tie exactly:
    // the preferred slot takes slot_preference_weight, the rest split evenly.
    SlotPreference preferred_slot = SlotPreference::First;
    double slot_preference_weight = 0.5;

    // Disclosure calibration, scoped to the top consumer domains it was
    // measured on: baseline selection probability and the post-treatment
    // probabilities it must reproduce.
    double baseline_p = 0.5;
    double label_p = 0.5;
    double rating_p = 0.5;
    double sysprompt_p = 0.5;

    // Selection probabilities on the structured/legal/full spectrum.
    double e4_legal_p = 0.5;
    double e4_full_p = 0.5;
    bool has_e4 = false;

    double kappa(FramingLevel level) const {
        return level_multipliers[static_cast<int>(level)];
    }
    // Multiplicative weight penalty on the treated tool, back-solved so the
    // simulated treatment probability reproduces the calibrated one.
    double disclosure_penalty(Disclosure d) const;
};

// The six shipped calibrations. Throws std::invalid_argument listing the
// available ids on an unknown id.
AgentProfile calibrate_profile(const std::string& agent_id);
std::vector<std::string> available_profiles();

struct SimTool {
    FramingLevel level = FramingLevel::L0;
    bool optimized = false;  // the tracked tool for SBC accounting
};

// One forced-choice trial. Weights are κ(level) with the disclosure penalty
// applied to the optimized tool; exact weight ties are broken by the
// profile's position bias. Disclosure treatments are calibrated to selection
// probabilities, so treated cells always sample via the Luce rule.
TrialRecord simulate_trial(const std::vector<SimTool>& tools, const AgentProfile& agent,
                           Disclosure disclosure, std::mt19937_64& rng);

struct CellSpec {
    Condition condition = Condition::ON;
    Disclosure disclosure = Disclosure::None;
    std::string domain = "D01";
    FramingLevel optimized_level = FramingLevel::L3;
    int n_tools = 2;
    std::optional<AgentProfile::ChoiceRule> rule_override;
};

struct ExperimentDesign {
    std::vector<CellSpec> cells;
    int reps_per_cell = 40;
    // Wilson half-width target for adaptive stopping; <= 0 disables it.
    double stop_half_width = 0.10;
    int min_n = 10;
    std::uint64_t seed = 0;
};

// Deterministic given (design, profiles, seed). Cells are independent: each
// draws its generator from fnv1a(master seed, cell id), so they can be run in
// any order and merged canonically.
TrialLog run_experiment(const ExperimentDesign& design,
                        const std::vector<AgentProfile>& agents);

std::uint64_t derive_cell_seed(std::uint64_t master, const std::string& cell_id);

}  // namespace regkit
