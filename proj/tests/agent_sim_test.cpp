#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "regkit/agent_sim.hpp"
#include "regkit/metrics.hpp"

using namespace regkit;

namespace {

TrialLog run_cell(const std::string& agent, const CellSpec& cell, int reps,
                  std::uint64_t seed) {
    ExperimentDesign design;
    design.cells = {cell};
    design.reps_per_cell = reps;
    design.stop_half_width = 0.0;
    design.seed = seed;
    return run_experiment(design, {calibrate_profile(agent)});
}

double selection_rate(const TrialLog& log) {
    long hits = 0;
    for (const auto& r : log.records) hits += r.selected_optimized;
    return static_cast<double>(hits) / static_cast<double>(log.records.size());
}

}  // namespace

TEST_CASE("unknown profile id names the available ones") {
    CHECK_THROWS_WITH_AS(calibrate_profile("gpt-5"), doctest::Contains("deepseek"),
                         std::invalid_argument);
    for (const auto& id : available_profiles()) {
        AgentProfile p = calibrate_profile(id);
        CHECK(p.agent_id == id);
        CHECK(p.kappa(FramingLevel::L0) == doctest::Approx(1.0));
    }
}

TEST_CASE("interpolated levels are flagged as such") {
    AgentProfile p = calibrate_profile("deepseek");
    CHECK_FALSE(p.interpolated[1]);
    CHECK(p.interpolated[2]);
    CHECK_FALSE(p.interpolated[3]);
    CHECK(p.interpolated[4]);
    AgentProfile backfilled = calibrate_profile("gpt54-mini");
    CHECK(backfilled.interpolated[1]);
    CHECK(backfilled.interpolated[3]);
}

TEST_CASE("same seed reproduces a byte-identical log, different seed diverges") {
    CellSpec cell{Condition::ON, Disclosure::None, "D01", FramingLevel::L3, 2,
                  AgentProfile::ChoiceRule::Luce};
    std::ostringstream a, b, c;
    write_ndjson(run_cell("claude", cell, 200, 17), a);
    write_ndjson(run_cell("claude", cell, 200, 17), b);
    write_ndjson(run_cell("claude", cell, 200, 18), c);
    CHECK(a.str() == b.str());
    CHECK(a.str() != c.str());
}

TEST_CASE("cell seeds are insensitive to cell order") {
    CellSpec l1{Condition::ON, Disclosure::None, "D01", FramingLevel::L1, 2,
                AgentProfile::ChoiceRule::Luce};
    CellSpec l3{Condition::ON, Disclosure::None, "D01", FramingLevel::L3, 2,
                AgentProfile::ChoiceRule::Luce};
    ExperimentDesign fwd{{l1, l3}, 100, 0.0, 10, 5};
    ExperimentDesign rev{{l3, l1}, 100, 0.0, 10, 5};
    TrialLog a = run_experiment(fwd, {calibrate_profile("gpt-4o")});
    TrialLog b = run_experiment(rev, {calibrate_profile("gpt-4o")});
    auto key = [](const TrialRecord& r) { return r.trial_id; };
    std::sort(a.records.begin(), a.records.end(),
              [&](auto& x, auto& y) { return key(x) < key(y); });
    std::sort(b.records.begin(), b.records.end(),
              [&](auto& x, auto& y) { return key(x) < key(y); });
    CHECK(a.records == b.records);
}

TEST_CASE("optimized slot placement is balanced across reps") {
    CellSpec cell{Condition::ON, Disclosure::None, "D01", FramingLevel::L3, 5, std::nullopt};
    TrialLog log = run_cell("deepseek", cell, 100, 3);
    std::map<int, int> counts;
    for (const auto& r : log.records) counts[*r.slot_of_optimized]++;
    REQUIRE(counts.size() == 5);
    for (const auto& [slot, n] : counts) CHECK(n == 20);
}

TEST_CASE("deterministic ceiling always selects the higher-level tool") {
    CellSpec cell{Condition::ON, Disclosure::None, "D01", FramingLevel::L3, 5, std::nullopt};
    for (const char* id : {"deepseek", "o4-mini", "gpt54-mini"}) {
        TrialLog log = run_cell(id, cell, 40, 11);
        CHECK(selection_rate(log) == doctest::Approx(1.0));
    }
}

TEST_CASE("luce selection rate recovers the profile multiplier") {
    CellSpec cell{Condition::ON, Disclosure::None, "D01", FramingLevel::L3, 2,
                  AgentProfile::ChoiceRule::Luce};
    AgentProfile p = calibrate_profile("claude");
    double expected = p.kappa(FramingLevel::L3) / (p.kappa(FramingLevel::L3) + 1.0);
    TrialLog log = run_cell("claude", cell, 4000, 23);
    CHECK(selection_rate(log) == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("NN cells track no optimized slot and ON baselines sit at chance") {
    CellSpec nn{Condition::NN, Disclosure::None, "D01", FramingLevel::L0, 2, std::nullopt};
    TrialLog log = run_cell("gpt-4o", nn, 50, 5);
    for (const auto& r : log.records) CHECK_FALSE(r.slot_of_optimized.has_value());

    CellSpec l0{Condition::ON, Disclosure::None, "D01", FramingLevel::L0, 2,
                AgentProfile::ChoiceRule::Luce};
    TrialLog chance = run_cell("gpt-4o", l0, 4000, 29);
    CHECK(selection_rate(chance) == doctest::Approx(0.5).epsilon(0.06));
}

TEST_CASE("disclosure penalties reproduce the calibrated probabilities") {
    for (const char* id : {"deepseek", "o4-mini", "claude"}) {
        AgentProfile p = calibrate_profile(id);
        for (auto [d, target] :
             std::initializer_list<std::pair<Disclosure, double>>{
                 {Disclosure::Label, p.label_p},
                 {Disclosure::Rating, p.rating_p},
                 {Disclosure::Sysprompt, p.sysprompt_p}}) {
            CellSpec cell{Condition::ON, d, "D01", FramingLevel::L4, 2, std::nullopt};
            TrialLog log = run_cell(id, cell, 4000, 31);
            CHECK(selection_rate(log) == doctest::Approx(target).epsilon(0.08));
        }
    }
}

TEST_CASE("claude prefers the last slot on exact ties") {
    CellSpec oo{Condition::OO, Disclosure::None, "D01", FramingLevel::L3, 2, std::nullopt};
    TrialLog log = run_cell("claude", oo, 4000, 37);
    long last = 0;
    for (const auto& r : log.records) last += r.selected_slot == 1;
    double share = static_cast<double>(last) / static_cast<double>(log.records.size());
    CHECK(share == doctest::Approx(0.78).epsilon(0.04));
}

TEST_CASE("adaptive stopping truncates cells once the CI is tight") {
    CellSpec cell{Condition::ON, Disclosure::None, "D01", FramingLevel::L3, 2, std::nullopt};
    ExperimentDesign design{{cell}, 4000, 0.10, 10, 41};
    TrialLog log = run_experiment(design, {calibrate_profile("o4-mini")});
    CHECK(log.records.size() < 4000);
    long hits = 0;
    for (const auto& r : log.records) hits += r.selected_optimized;
    CHECK(stop_condition_met(hits, static_cast<long>(log.records.size()), 0.10));
}

TEST_CASE("disclosure strings are exposed verbatim") {
    CHECK(std::string(disclosure_text(Disclosure::Label)) == kLabelDisclosure);
    CHECK(std::string(disclosure_text(Disclosure::Rating)) == kRatingDisclosure);
    CHECK(std::string(disclosure_text(Disclosure::Sysprompt)) == kSyspromptDisclosure);
    CHECK(std::string(disclosure_text(Disclosure::None)).empty());
}
