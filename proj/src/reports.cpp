#include "regkit/reports.hpp"

#include <random>

namespace regkit {

namespace {

double odds(double p) { return p / (1.0 - p); }

double next_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

SbcEstimate simulate_bernoulli_sbc(double p, int n, std::uint64_t seed,
                                   const std::string& cell_id) {
    std::mt19937_64 rng(derive_cell_seed(seed, cell_id));
    long successes = 0;
    for (int i = 0; i < n; ++i)
        if (next_uniform(rng) < p) ++successes;
    return wilson(successes, n);
}

double recovered_kappa(const std::vector<TrialRecord>& records) {
    SbcEstimate est = sbc(records);
    return est.center / (1.0 - est.center);
}

}  // namespace

std::vector<KappaRow> reproduce_kappa_table(std::uint64_t seed, int n_per_cell) {
    static const std::map<std::string, std::pair<double, double>> refs = {
        {"deepseek", {4.4, 9.0}},   {"o4-mini", {15.7, 27.6}}, {"claude", {1.4, 2.2}},
        {"gpt54-nano", {7.0, 6.6}}, {"gpt-4o", {2.5, 2.4}},
    };

    std::vector<KappaRow> rows;
    for (const auto& id : available_profiles()) {
        AgentProfile profile = calibrate_profile(id);
        ExperimentDesign design;
        design.seed = seed;
        design.reps_per_cell = n_per_cell;
        design.stop_half_width = 0.0;
        design.cells = {
            {Condition::ON, Disclosure::None, "D01", FramingLevel::L1, 2,
             AgentProfile::ChoiceRule::Luce},
            {Condition::ON, Disclosure::None, "D01", FramingLevel::L3, 2,
             AgentProfile::ChoiceRule::Luce},
        };
        TrialLog log = run_experiment(design, {profile});

        std::vector<TrialRecord> l1, l3;
        for (const auto& r : log.records)
            (r.trial_id.find("/L1/") != std::string::npos ? l1 : l3).push_back(r);

        KappaRow row;
        row.agent = id;
        row.kappa_l1_sim = recovered_kappa(l1);
        row.kappa_l3_sim = recovered_kappa(l3);
        if (auto it = refs.find(id); it != refs.end()) {
            row.kappa_l1_ref = it->second.first;
            row.kappa_l3_ref = it->second.second;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<DisclosureRow> reproduce_disclosure_table() {
    static const std::map<std::string, double> refs = {
        {"deepseek", 13.9}, {"o4-mini", 1.8}, {"claude", 0.5}};

    std::vector<DisclosureRow> rows;
    for (const auto& id : available_profiles()) {
        AgentProfile profile = calibrate_profile(id);
        DisclosureRow row;
        row.agent = id;
        row.kappa_baseline = odds(profile.baseline_p);
        row.kappa_d_label = odds(profile.label_p);
        row.ne_persists = row.kappa_d_label > 1.0;
        if (auto it = refs.find(id); it != refs.end()) row.kappa_d_ref = it->second;
        rows.push_back(row);
    }
    return rows;
}

LegalReproduction reproduce_legal_table(std::uint64_t seed, int n_per_cell) {
    static const std::map<std::string, std::pair<std::optional<double>, double>> refs = {
        {"deepseek", {97.9, 0.01}},
        {"o4-mini", {106.7, -0.03}},
        {"gpt54-mini", {135.3, -0.12}},
        {"claude", {std::nullopt, 0.06}},
    };

    LegalReproduction rep;
    long legal_succ = 0, legal_n = 0, full_succ = 0, full_n = 0;
    for (const auto& id : available_profiles()) {
        AgentProfile profile = calibrate_profile(id);
        if (!profile.has_e4) continue;
        SbcEstimate legal = simulate_bernoulli_sbc(profile.e4_legal_p, n_per_cell, seed,
                                                   id + "/e4/legal");
        SbcEstimate full = simulate_bernoulli_sbc(profile.e4_full_p, n_per_cell, seed,
                                                  id + "/e4/full");
        legal_succ += legal.successes;
        legal_n += legal.n;
        full_succ += full.successes;
        full_n += full.n;

        LegalRow row;
        row.agent = id;
        row.report = legal_boundary(legal, full);
        if (auto it = refs.find(id); it != refs.end()) {
            row.capture_ref_pct = it->second.first;
            row.increment_ref = it->second.second;
        }
        rep.per_model.push_back(row);
    }
    rep.pooled = legal_boundary(wilson(legal_succ, legal_n), wilson(full_succ, full_n));
    return rep;
}

std::vector<MultitoolRow> reproduce_multitool_table(std::uint64_t seed, int reps_per_cell) {
    static const std::map<std::string, std::map<std::string, double>> refs = {
        {"deepseek", {{"D01", 5.00}, {"D03", 5.00}, {"D05", 5.00}}},
        {"o4-mini", {{"D01", 5.00}, {"D03", 5.00}, {"D05", 5.00}}},
        {"gpt54-mini", {{"D01", 5.00}, {"D03", 5.00}, {"D05", 5.00}}},
        {"claude", {{"D01", 1.17}, {"D03", 1.33}, {"D05", 4.50}}},
    };
    static const std::vector<std::string> domains = {"D01", "D03", "D05"};

    std::vector<MultitoolRow> rows;
    for (const auto& id : {"deepseek", "o4-mini", "gpt54-mini", "claude"}) {
        AgentProfile profile = calibrate_profile(id);
        MultitoolRow row;
        row.agent = id;
        for (const auto& domain : domains) {
            ExperimentDesign design;
            design.seed = seed;
            design.reps_per_cell = reps_per_cell;
            design.stop_half_width = 0.0;
            design.cells = {{Condition::ON, Disclosure::None, domain, FramingLevel::L3, 5,
                             std::nullopt}};
            TrialLog log = run_experiment(design, {profile});
            row.rsa_by_domain[domain] = rsa(log.records, 5);
        }
        row.rsa_ref_by_domain = refs.at(id);
        rows.push_back(row);
    }
    return rows;
}

std::vector<DoseRow> reproduce_dose_response(std::uint64_t seed, int n_per_cell) {
    static const double refs[5] = {-0.009, 0.316, 0.219, 0.352, 0.111};

    std::vector<DoseRow> rows;
    for (int lvl = 0; lvl < 5; ++lvl) {
        long successes = 0, n = 0;
        for (const auto& id : available_profiles()) {
            AgentProfile profile = calibrate_profile(id);
            ExperimentDesign design;
            design.seed = seed;
            design.reps_per_cell = n_per_cell;
            design.stop_half_width = 0.0;
            design.cells = {{Condition::ON, Disclosure::None, "pooled",
                             static_cast<FramingLevel>(lvl), 2,
                             AgentProfile::ChoiceRule::Luce}};
            TrialLog log = run_experiment(design, {profile});
            for (const auto& r : log.records) {
                ++n;
                if (r.selected_optimized) ++successes;
            }
        }
        DoseRow row;
        row.level = static_cast<FramingLevel>(lvl);
        row.pooled = wilson(successes, n);
        row.sbc_ref = refs[lvl];
        rows.push_back(row);
    }
    return rows;
}

}  // namespace regkit
