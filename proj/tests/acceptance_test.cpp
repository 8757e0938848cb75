// Acceptance suite: each criterion prints exactly one PASS/FAIL line.
// Exit status is the number of failed criteria.

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "regkit/agent_sim.hpp"
#include "regkit/fixtures.hpp"
#include "regkit/metrics.hpp"
#include "regkit/normalizer.hpp"
#include "regkit/registry_core.hpp"
#include "regkit/registry_http.hpp"
#include "regkit/reports.hpp"
#include "regkit/rhetoric.hpp"
#include "regkit/strategic.hpp"

using namespace regkit;

namespace {

int failures = 0;

void report(int criterion, const std::string& title, bool ok, const std::string& detail) {
    std::printf("%s: criterion %2d (%s): %s\n", ok ? "PASS" : "FAIL", criterion,
                title.c_str(), detail.c_str());
    if (!ok) ++failures;
}

bool near(double x, double target, double tol) { return std::abs(x - target) <= tol; }

constexpr std::uint64_t kSeed = 20240817;

TrialLog run_cell(const std::string& agent, const CellSpec& cell, int reps,
                  std::uint64_t seed = kSeed) {
    ExperimentDesign design{{cell}, reps, 0.0, 10, seed};
    return run_experiment(design, {calibrate_profile(agent)});
}

double selection_rate(const TrialLog& log) {
    long hits = 0;
    for (const auto& r : log.records) hits += r.selected_optimized;
    return static_cast<double>(hits) / static_cast<double>(log.records.size());
}

void criterion_1() {
    SbcEstimate ceiling = wilson(40, 40, 1.96);
    SbcEstimate chance = wilson(20, 40, 1.96);
    bool ok = near(ceiling.sbc, 0.456, 0.001) && chance.sbc == 0.0;
    std::ostringstream d;
    d << "wilson(40,40) SBC=" << ceiling.sbc << ", wilson(20,40) SBC=" << chance.sbc;
    report(1, "Wilson/SBC exactness", ok, d.str());
}

void criterion_2() {
    GameConfig pinned{5, 1.0, 0.0, 5.8, 1.0, false};
    double threshold = ne_threshold(pinned);

    std::mt19937_64 rng(kSeed);
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
        double bound = ne_threshold(cfg);
        if (std::abs(cfg.cost_of_optimizing - bound) < 1e-9 * cfg.revenue) continue;
        bool closed_form = cfg.cost_of_optimizing < bound;
        if (closed_form != verify_nash(all_optimize(cfg.n_providers), cfg).is_nash)
            ++disagreements;
    }
    bool ok = near(threshold, 0.1587, 0.001) && disagreements == 0;
    std::ostringstream d;
    d << "threshold(5.8,5)=" << threshold << "r, closed-form disagreements=" << disagreements
      << "/1000";
    report(2, "all-optimize NE threshold", ok, d.str());
}

void criterion_3() {
    int bad = 0, checked = 0;
    for (double kappa : {1.4, 2.2, 4.4, 5.8, 15.7, 27.6})
        for (int n : {2, 3, 5, 8})
            for (double c : {0.01, 0.05, 0.1}) {
                GameConfig cfg{n, 1.0, c, kappa, 1.0, true};
                auto eqs = enumerate_equilibria(cfg);
                ++checked;
                if (eqs.size() != 1 || eqs[0].profile != all_zero(n) ||
                    std::abs(welfare(eqs[0].profile, cfg).welfare - cfg.value_per_use) > 1e-12)
                    ++bad;
            }
    std::ostringstream d;
    d << checked << " normalized configs, " << bad << " with an equilibrium other than all-zero";
    report(3, "normalization dominance", bad == 0, d.str());
}

void criterion_4() {
    auto rows = reproduce_disclosure_table();
    double ds = 0, o4 = 0, cl = 0;
    int below_one = 0;
    for (const auto& r : rows) {
        if (r.agent == "deepseek") ds = r.kappa_d_label;
        if (r.agent == "o4-mini") o4 = r.kappa_d_label;
        if (r.agent == "claude") cl = r.kappa_d_label;
        if (r.kappa_d_label <= 1.0) ++below_one;
    }
    bool ok = near(ds, 13.9, 0.2) && near(o4, 1.8, 0.1) && near(cl, 0.5, 0.1) &&
              below_one == 1 && cl <= 1.0;
    std::ostringstream d;
    d << "kappa_d label: deepseek=" << ds << " o4-mini=" << o4 << " claude=" << cl
      << "; profiles at or below 1: " << below_one;
    report(4, "disclosure calibration", ok, d.str());
}

void criterion_5() {
    bool ceilings_ok = true;
    std::ostringstream d;
    for (const char* id : {"o4-mini", "deepseek", "gpt54-mini"}) {
        CellSpec cell{Condition::ON, Disclosure::None, "D01", FramingLevel::L3, 5,
                      std::nullopt};
        TrialLog log = run_cell(id, cell, 40);
        double s = sbc(log.records).sbc;
        double advantage = rsa(log.records, 5);
        if (!near(s, 0.456, 0.001) || !near(advantage, 5.0, 1e-9)) ceilings_ok = false;
    }

    CellSpec claude_oo{Condition::OO, Disclosure::None, "D01", FramingLevel::L3, 2,
                       std::nullopt};
    TrialLog claude_log = run_cell("claude", claude_oo, 4000);
    long last = 0;
    for (const auto& r : claude_log.records) last += r.selected_slot == 1;
    double claude_share = static_cast<double>(last) / 4000.0;

    CellSpec gpt_oo{Condition::OO, Disclosure::None, "D01", FramingLevel::L3, 2, std::nullopt};
    TrialLog gpt_log = run_cell("gpt54-mini", gpt_oo, 8000);
    long first = 0;
    for (const auto& r : gpt_log.records) first += r.selected_slot == 0;
    double gpt_share = static_cast<double>(first) / 8000.0;

    bool ok = ceilings_ok && near(claude_share, 0.78, 0.03) && near(gpt_share, 0.995, 0.005);
    d << "ceiling SBC/RSA " << (ceilings_ok ? "exact" : "off") << "; claude OO slot-1 share "
      << claude_share << "; gpt OO slot-0 share " << gpt_share;
    report(5, "ceiling reproduction", ok, d.str());
}

void criterion_6() {
    auto rows = reproduce_dose_response(kSeed, 400);
    double l0 = rows[0].pooled.sbc;
    double step = rows[1].pooled.sbc - rows[0].pooled.sbc;

    CellSpec l3{Condition::ON, Disclosure::None, "D01", FramingLevel::L3, 2,
                AgentProfile::ChoiceRule::Luce};
    CellSpec l4{Condition::ON, Disclosure::None, "D01", FramingLevel::L4, 2,
                AgentProfile::ChoiceRule::Luce};
    double p3 = selection_rate(run_cell("claude", l3, 400));
    double p4 = selection_rate(run_cell("claude", l4, 400));

    bool ok = std::abs(l0) <= 0.03 && step >= 0.25 && p4 < p3;
    std::ostringstream d;
    d << "SBC(L0)=" << l0 << ", L1 step=+" << step << ", claude P(L3)=" << p3 << " > P(L4)="
      << p4;
    report(6, "dose-response shape", ok, d.str());
}

void criterion_7() {
    FeatureLexicon lex = FeatureLexicon::builtin();
    FeatureReport neutral = detect_features(fixtures::d01_neutral(), lex);
    FeatureReport optimized = detect_features(fixtures::d01_optimized(), lex);

    bool fixtures_ok = classify_level(neutral) == FramingLevel::L0 &&
                       classify_level(optimized) == FramingLevel::L4 &&
                       optimized.superlative >= 4;

    bool normalized_ok = true;
    for (const ToolDescription& desc :
         {fixtures::d01_neutral(), fixtures::d01_optimized()}) {
        NormalizeResult r = normalize(desc, lex);
        if (!r.ok()) {
            normalized_ok = false;
            continue;
        }
        ToolDescription card{desc.id, desc.name,
                             render_selection_text(r.entry->selection), {}, desc.domain_tag};
        FeatureReport rep = detect_features(card, lex);
        if (classify_level(rep) != FramingLevel::L0 || !rep.matched_spans.empty())
            normalized_ok = false;
    }

    int idempotent = 0, normalizable = 0;
    for (const auto& desc : fixtures::corpus(50)) {
        NormalizeResult first = normalize(desc, lex);
        if (!first.ok()) continue;
        ++normalizable;
        ToolDescription again{desc.id, desc.name,
                              render_selection_text(first.entry->selection),
                              desc.param_schema, desc.domain_tag};
        NormalizeResult second = normalize(again, lex);
        if (second.ok() && second.entry->selection == first.entry->selection) ++idempotent;
    }

    bool ok = fixtures_ok && normalized_ok && normalizable > 0 && idempotent == normalizable;
    std::ostringstream d;
    d << "neutral L0 / optimized L4 with " << optimized.superlative
      << " superlatives; idempotent " << idempotent << "/" << normalizable;
    report(7, "classifier and normalizer fixtures", ok, d.str());
}

void criterion_8() {
    SbcEstimate legal, full;
    legal.sbc = 0.33;
    legal.center = 0.83;
    legal.ci_low = 0.80;
    legal.ci_high = 0.86;
    legal.n = 1000;
    full.sbc = 0.31;
    full.center = 0.81;
    full.ci_low = 0.78;
    full.ci_high = 0.84;
    full.n = 1000;
    LegalBoundaryReport rep = legal_boundary(legal, full);
    bool ok = rep.capture_ratio_pct && near(*rep.capture_ratio_pct, 106.5, 0.5) &&
              near(rep.illegal_increment, -0.02, 1e-12);
    std::ostringstream d;
    d << "capture=" << (rep.capture_ratio_pct ? *rep.capture_ratio_pct : 0.0)
      << "%, increment=" << rep.illegal_increment;
    report(8, "legal-boundary arithmetic", ok, d.str());
}

void criterion_9() {
    TrafficProjection p = traffic_projection(0.332, 1e6, 0.001);
    bool ok = std::abs(p.annual_redirect - 121000.0) / 121000.0 <= 0.01;
    std::ostringstream d;
    d << "annual redirect $" << p.annual_redirect;
    report(9, "traffic projection economics", ok, d.str());
}

void criterion_10() {
    RegistryCore core;
    bool script_ok = core.register_tool(fixtures::d01_neutral(), "p1", 1).ok() &&
                     core.register_tool(fixtures::d01_optimized(), "p2", 2).ok() &&
                     core.register_tool(fixtures::d01_structured(), "p3", 3).ok();
    ToolDescription junk{"junk", "junk",
                         "Best! Trusted by enterprise AI teams worldwide. Guaranteed.",
                         {}, "D01"};
    script_ok = script_ok && core.register_tool(junk, "p4", 4).error ==
                                 RegistryError::NormalizationRejected;

    std::vector<std::string> ids = {fixtures::d01_neutral().id, fixtures::d01_optimized().id,
                                    fixtures::d01_structured().id};
    for (int i = 0; i < 200; ++i) {
        CallEvent e;
        e.event_id = i == 150 ? "call-42" : "call-" + std::to_string(i);
        e.tool_id = ids[i % 3];
        e.session = "s" + std::to_string(i % 5);
        e.selected = i % 2 == 0;
        e.timestamp = 1000 + i;
        if (core.log_call(e) != RegistryError::None) script_ok = false;
    }

    RegistryCore replayed = RegistryCore::replay(core.event_log());
    bool replay_ok = replayed.state_snapshot() == core.state_snapshot();

    RegistryHttpServer server(std::move(core), "secret");
    bool isolation_ok = server.bind_to_port("127.0.0.1", 18972);
    std::thread t([&] { server.listen_after_bind(); });
    {
        httplib::Client client("127.0.0.1", 18972);
        client.set_connection_timeout(5);
        httplib::Result res;
        for (int i = 0; i < 50 && !(res = client.Get("/tools", {{"X-Role", "agent"}})); ++i)
            std::this_thread::sleep_for(std::chrono::milliseconds(20));
        if (!res || res->status != 200) {
            isolation_ok = false;
        } else {
            for (const auto& id : ids) {
                const auto* entry = server.core().find(id);
                for (const auto& span : entry->normalized.marketing.stripped_spans)
                    if (res->body.find(span.text) != std::string::npos) isolation_ok = false;
            }
        }
    }
    server.stop();
    t.join();

    bool ok = script_ok && replay_ok && isolation_ok;
    std::ostringstream d;
    d << "scripted session " << (script_ok ? "ok" : "failed") << ", replay state "
      << (replay_ok ? "identical" : "diverged") << ", agent responses "
      << (isolation_ok ? "clean" : "leaked marketing bytes");
    report(10, "service replay and tier isolation", ok, d.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures;
}
