#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "regkit/agent_sim.hpp"
#include "regkit/fixtures.hpp"
#include "regkit/metrics.hpp"
#include "regkit/normalizer.hpp"
#include "regkit/registry_core.hpp"
#include "regkit/registry_http.hpp"
#include "regkit/reports.hpp"
#include "regkit/rhetoric.hpp"
#include "regkit/strategic.hpp"
#include "regkit/trial.hpp"

namespace {

constexpr const char* kToolkitVersion = "1.0.0";

using nlohmann::json;
using namespace regkit;

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open input: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output: " + path);
    return file;
}

FeatureLexicon load_lexicon(const std::string& path) {
    return path.empty() ? FeatureLexicon::builtin() : FeatureLexicon::load_file(path);
}

FramingLevel level_from_string(const std::string& s) {
    for (int i = 0; i < 5; ++i)
        if (s == to_string(static_cast<FramingLevel>(i))) return static_cast<FramingLevel>(i);
    throw CLI::ValidationError("--level", "expected one of L0..L4");
}

int cmd_analyze(const std::string& input, const std::string& lexicon_path,
                const std::string& domain, const std::string& name,
                const std::string& format) {
    FeatureLexicon lex = load_lexicon(lexicon_path);
    ToolDescription desc{"cli-input", name, read_input(input), {}, domain};
    FeatureReport report = detect_features(desc, lex);
    FramingLevel level = classify_level(report);

    if (format == "records") {
        json spans = json::array();
        for (const auto& s : report.matched_spans)
            spans.push_back({{"category", to_string(s.category)},
                             {"begin", s.begin},
                             {"end", s.end},
                             {"text", s.text}});
        std::cout << json{{"level", to_string(level)},
                          {"superlative", report.superlative},
                          {"social_proof", report.social_proof},
                          {"authority", report.authority},
                          {"outcome_framing", report.outcome_framing},
                          {"keyword_density", report.keyword_density},
                          {"urgency_markers", report.urgency_marker_count},
                          {"spans", spans}}
                         .dump(2)
                  << "\n";
        return 0;
    }

    std::cout << "level            " << to_string(level) << "\n"
              << "superlative      " << report.superlative << "\n"
              << "social_proof     " << report.social_proof << "\n"
              << "authority        " << report.authority << "\n"
              << "outcome_framing  " << report.outcome_framing << "\n"
              << "keyword_density  " << report.keyword_density << "\n"
              << "urgency_markers  " << report.urgency_marker_count << "\n";
    for (const auto& s : report.matched_spans)
        std::cout << "  [" << to_string(s.category) << "] \"" << s.text << "\" @" << s.begin
                  << "\n";
    return 0;
}

int cmd_normalize(const std::string& input, const std::string& lexicon_path,
                  const std::string& domain, const std::string& name,
                  const std::string& format) {
    FeatureLexicon lex = load_lexicon(lexicon_path);
    ToolDescription desc{"cli-input", name, read_input(input),
                         {{"input", "string", true}}, domain};
    NormalizeResult result = normalize(desc, lex);
    if (!result.ok()) {
        std::cerr << "normalization failed: " << result.failure->diagnosis << "\n";
        return 2;
    }
    if (format == "records") {
        std::cout << to_json(*result.entry).dump(2) << "\n";
        return 0;
    }
    std::cout << render_selection_text(result.entry->selection);
    if (!result.entry->normalization_log.empty()) {
        std::cout << "--- stripped ---\n";
        for (const auto& a : result.entry->normalization_log)
            std::cout << "  [" << to_string(a.span.category) << "] \"" << a.span.text << "\" ("
                      << a.action << ")\n";
    }
    return 0;
}

int cmd_metrics(const std::string& input, const std::string& in_format, double z) {
    std::string text = read_input(input);
    std::istringstream in(text);
    TrialLog log = (in_format == "tsv" || (in_format == "auto" && !text.empty() && text[0] != '{'))
                       ? read_tsv(in)
                       : read_ndjson(in);
    if (log.records.empty()) {
        std::cerr << "no records\n";
        return 2;
    }

    SbcEstimate est = sbc(log.records, z);
    std::cout << std::fixed << std::setprecision(3);
    std::cout << "n                " << est.n << "\n"
              << "P(select opt)    " << est.center << " [" << est.ci_low << ", " << est.ci_high
              << "]\n"
              << "SBC              " << std::showpos << est.sbc << std::noshowpos << "\n";
    for (const auto& [slot, slot_est] : sbc_by_slot(log.records, z))
        std::cout << "SBC (slot " << slot << ")      " << std::showpos << slot_est.sbc
                  << std::noshowpos << " (n=" << slot_est.n << ")\n";
    int n_tools = log.records.front().n_tools;
    bool uniform = std::all_of(log.records.begin(), log.records.end(),
                               [&](const TrialRecord& r) { return r.n_tools == n_tools; });
    if (uniform) std::cout << "RSA              " << rsa(log.records, n_tools) << "x\n";
    std::cout << "kappa (Wilson)   "
              << kappa_from_probability(est.center, FramingLevel::L3, CapPolicy::WilsonCentre,
                                        est.n, z)
                     .kappa
              << "\n";
    return 0;
}

int cmd_simulate(const std::vector<std::string>& agent_ids, const std::string& condition,
                 const std::string& disclosure, const std::string& level, int n_tools, int reps,
                 double stop_hw, std::uint64_t seed, const std::vector<std::string>& domains,
                 const std::string& out, const std::string& format) {
    std::vector<AgentProfile> profiles;
    for (const auto& id : agent_ids.empty() ? available_profiles() : agent_ids)
        profiles.push_back(calibrate_profile(id));

    ExperimentDesign design;
    design.seed = seed;
    design.reps_per_cell = reps;
    design.stop_half_width = stop_hw;
    for (const auto& domain : domains.empty() ? std::vector<std::string>{"D01"} : domains)
        design.cells.push_back({condition_from_string(condition),
                                disclosure_from_string(disclosure), domain,
                                level_from_string(level), n_tools, std::nullopt});

    TrialLog log = run_experiment(design, profiles);
    std::ofstream file;
    std::ostream& os = open_output(file, out);
    if (format == "tsv")
        write_tsv(log, os);
    else
        write_ndjson(log, os);
    return 0;
}

void print_equilibria(const GameConfig& cfg) {
    std::cout << std::fixed << std::setprecision(4);
    std::cout << "N=" << cfg.n_providers << " kappa=" << cfg.kappa
              << " c=" << cfg.cost_of_optimizing << " r=" << cfg.revenue
              << (cfg.normalized ? " [normalized]" : "") << "\n";
    std::cout << "  all-optimize NE cost threshold: " << ne_threshold(cfg) << "\n";
    auto equilibria = enumerate_equilibria(cfg);
    if (equilibria.empty()) {
        std::cout << "  no pure-strategy Nash equilibrium\n";
        return;
    }
    for (const auto& rep : equilibria) {
        std::cout << "  NE: (";
        for (std::size_t i = 0; i < rep.profile.size(); ++i)
            std::cout << (i ? "," : "") << (rep.profile[i] ? "q" : "0");
        WelfareReport w = welfare(rep.profile, cfg);
        std::cout << ")  W=" << w.welfare;
        if (rep.pareto_dominated_by) std::cout << "  [Pareto-dominated by all-zero]";
        std::cout << "\n";
    }
}

int cmd_equilibrium(double kappa, int n, double cost, double revenue, double value,
                    bool normalized, const std::vector<double>& kappa_grid,
                    const std::vector<double>& cost_grid, const std::vector<int>& n_grid) {
    std::vector<double> kappas = kappa_grid.empty() ? std::vector<double>{kappa} : kappa_grid;
    std::vector<double> costs = cost_grid.empty() ? std::vector<double>{cost} : cost_grid;
    std::vector<int> ns = n_grid.empty() ? std::vector<int>{n} : n_grid;
    for (double k : kappas)
        for (int nn : ns)
            for (double c : costs)
                print_equilibria({nn, revenue, c, k, value, normalized});
    return 0;
}

int cmd_serve(int port, const std::string& store_path, const std::string& lexicon_path,
              const std::string& token) {
    RegistryCore core = store_path.empty()
                            ? RegistryCore(load_lexicon(lexicon_path))
                            : RegistryCore::load(store_path, load_lexicon(lexicon_path));
    RegistryHttpServer server(std::move(core), token);
    std::cerr << "listening on 127.0.0.1:" << port
              << (store_path.empty() ? "" : " (store: " + store_path + ")") << "\n";
    if (!server.listen("127.0.0.1", port)) {
        std::cerr << "failed to bind port " << port << "\n";
        return 2;
    }
    return 0;
}

void print_dev(double sim, std::optional<double> ref) {
    std::cout << std::setw(9) << sim;
    if (ref) {
        std::cout << std::setw(9) << *ref << std::setw(9)
                  << (*ref != 0 ? 100.0 * (sim - *ref) / *ref : 0.0) << "%";
    } else {
        std::cout << std::setw(9) << "-" << std::setw(10) << "-";
    }
}

int cmd_reproduce(const std::string& table, std::uint64_t seed) {
    std::cout << std::fixed << std::setprecision(2);
    if (table == "kappa-table") {
        std::cout << "agent        level      sim      ref    dev\n";
        for (const auto& row : reproduce_kappa_table(seed)) {
            std::cout << std::left << std::setw(13) << row.agent << std::right << "k(L1) ";
            print_dev(row.kappa_l1_sim, row.kappa_l1_ref);
            std::cout << "\n" << std::left << std::setw(13) << "" << std::right << "k(L3) ";
            print_dev(row.kappa_l3_sim, row.kappa_l3_ref);
            std::cout << "\n";
        }
    } else if (table == "disclosure-table") {
        std::cout << "agent        k_base  k_d(label)    ref   NE-persists\n";
        for (const auto& row : reproduce_disclosure_table()) {
            std::cout << std::left << std::setw(13) << row.agent << std::right << std::setw(7)
                      << row.kappa_baseline << std::setw(11) << row.kappa_d_label;
            if (row.kappa_d_ref)
                std::cout << std::setw(8) << *row.kappa_d_ref;
            else
                std::cout << std::setw(8) << "-";
            std::cout << std::setw(9) << (row.ne_persists ? "yes" : "no") << "\n";
        }
    } else if (table == "legal-table") {
        LegalReproduction rep = reproduce_legal_table(seed);
        std::cout << "agent        legal   norm   capture    increment\n";
        auto print_row = [](const std::string& name, const LegalBoundaryReport& r) {
            std::cout << std::left << std::setw(13) << name << std::right << std::showpos
                      << std::setw(6) << r.legal_uplift.sbc << std::setw(7)
                      << r.normalization_effect.sbc << std::noshowpos;
            if (r.capture_ratio_pct)
                std::cout << std::setw(8) << *r.capture_ratio_pct << "%";
            else
                std::cout << std::setw(9) << "n/a";
            std::cout << std::showpos << std::setw(10) << r.illegal_increment << std::noshowpos
                      << "\n";
        };
        for (const auto& row : rep.per_model) print_row(row.agent, row.report);
        print_row("pooled", rep.pooled);
    } else if (table == "multitool-table") {
        std::cout << "agent        domain   RSA(sim)   RSA(ref)\n";
        for (const auto& row : reproduce_multitool_table(seed))
            for (const auto& [domain, value] : row.rsa_by_domain)
                std::cout << std::left << std::setw(13) << row.agent << std::setw(7) << domain
                          << std::right << std::setw(8) << value << "x" << std::setw(9)
                          << row.rsa_ref_by_domain.at(domain) << "x\n";
    } else if (table == "dose-response") {
        std::cout << "level   SBC(sim)   SBC(ref)   n\n";
        for (const auto& row : reproduce_dose_response(seed))
            std::cout << to_string(row.level) << std::showpos << std::setw(11)
                      << std::setprecision(3) << row.pooled.sbc << std::setw(10) << row.sbc_ref
                      << std::noshowpos << std::setw(8) << row.pooled.n << "\n";
    } else {
        std::cerr << "unknown table id: " << table << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"regkit: tool-registry information design toolkit"};
    app.require_subcommand(0, 1);

    bool version = false;
    app.add_flag("--version", version, "print toolkit and lexicon versions");

    std::string input, out, lexicon_path, domain = "D01", name = "tool", format = "table";
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--lexicon", lexicon_path, "lexicon file overriding the builtin")
            ->envname("REGKIT_LEXICON");
        cmd->add_option("--format", format, "table or records")->envname("REGKIT_FORMAT");
    };

    auto* analyze = app.add_subcommand("analyze", "detect persuasion features, classify L0-L4");
    analyze->add_option("--input", input, "file or - for stdin");
    analyze->add_option("--domain", domain, "domain tag for keyword targets");
    analyze->add_option("--name", name, "tool display name");
    add_common(analyze);

    auto* normalize_cmd = app.add_subcommand("normalize", "rewrite a description to L0 schema");
    normalize_cmd->add_option("--input", input, "file or - for stdin");
    normalize_cmd->add_option("--domain", domain, "domain tag");
    normalize_cmd->add_option("--name", name, "tool display name");
    add_common(normalize_cmd);

    std::string in_format = "auto";
    double z = 1.96;
    auto* metrics_cmd = app.add_subcommand("metrics", "SBC/RSA/kappa from a trial log");
    metrics_cmd->add_option("--input", input, "file or - for stdin");
    metrics_cmd->add_option("--in-format", in_format, "ndjson, tsv, or auto");
    metrics_cmd->add_option("--z", z, "critical value (default 1.96)");

    std::vector<std::string> agent_ids, domains;
    std::string condition = "ON", disclosure = "none", level = "L3";
    int n_tools = 2, reps = 40;
    double stop_hw = 0.0;
    auto* simulate = app.add_subcommand("simulate", "run the calibrated agent simulator");
    simulate->add_option("--agent", agent_ids, "agent profile ids (default: all)");
    simulate->add_option("--condition", condition, "ON, NN, or OO");
    simulate->add_option("--disclosure", disclosure, "none, label, rating, sysprompt");
    simulate->add_option("--level", level, "optimized tool's framing level L0-L4");
    simulate->add_option("--n-tools", n_tools, "tools per trial");
    simulate->add_option("--reps", reps, "max reps per cell");
    simulate->add_option("--stop-half-width", stop_hw, "adaptive stopping target, 0 = off");
    simulate->add_option("--seed", seed, "master seed")->envname("REGKIT_SEED");
    simulate->add_option("--domain", domains, "domain tags");
    simulate->add_option("--out", out, "output path, - for stdout");
    simulate->add_option("--format", format, "ndjson or tsv");

    double g_kappa = 5.8, g_cost = 0.1, g_revenue = 1.0, g_value = 1.0;
    int g_n = 5;
    bool g_normalized = false;
    std::vector<double> kappa_grid, cost_grid;
    std::vector<int> n_grid;
    auto* equilibrium = app.add_subcommand("equilibrium", "Nash analysis of the provider game");
    equilibrium->add_option("--kappa", g_kappa, "framing multiplier");
    equilibrium->add_option("--n", g_n, "providers");
    equilibrium->add_option("--cost", g_cost, "c(q) in revenue units");
    equilibrium->add_option("--revenue", g_revenue, "r per selection");
    equilibrium->add_option("--value", g_value, "v per use, for welfare");
    equilibrium->add_flag("--normalized", g_normalized, "registry applies the L0 rewrite");
    equilibrium->add_option("--kappa-grid", kappa_grid, "sweep kappas");
    equilibrium->add_option("--cost-grid", cost_grid, "sweep costs");
    equilibrium->add_option("--n-grid", n_grid, "sweep provider counts");

    int port = 8787;
    std::string store_path, token = "operator";
    auto* serve = app.add_subcommand("serve", "run the registry service");
    serve->add_option("--port", port, "listen port")->envname("REGKIT_PORT");
    serve->add_option("--store-path", store_path, "append-only event log path")
        ->envname("REGKIT_STORE_PATH");
    serve->add_option("--lexicon", lexicon_path, "lexicon file")->envname("REGKIT_LEXICON");
    serve->add_option("--token", token, "operator credential for /admin/attest");

    std::string table;
    auto* reproduce = app.add_subcommand("reproduce", "simulated-vs-published table reproduction");
    reproduce
        ->add_option("table", table,
                     "kappa-table, disclosure-table, legal-table, multitool-table, dose-response")
        ->required();
    reproduce->add_option("--seed", seed, "master seed")->envname("REGKIT_SEED");

    CLI11_PARSE(app, argc, argv);

    try {
        if (version) {
            std::cout << "regkit " << kToolkitVersion << " (lexicon "
                      << regkit::FeatureLexicon::builtin().version() << ")\n";
            return 0;
        }
        if (*analyze) return cmd_analyze(input, lexicon_path, domain, name, format);
        if (*normalize_cmd) return cmd_normalize(input, lexicon_path, domain, name, format);
        if (*metrics_cmd) return cmd_metrics(input, in_format, z);
        if (*simulate)
            return cmd_simulate(agent_ids, condition, disclosure, level, n_tools, reps, stop_hw,
                                seed, domains, out, format);
        if (*equilibrium)
            return cmd_equilibrium(g_kappa, g_n, g_cost, g_revenue, g_value, g_normalized,
                                   kappa_grid, cost_grid, n_grid);
        if (*serve) return cmd_serve(port, store_path, lexicon_path, token);
        if (*reproduce) return cmd_reproduce(table, seed);
        std::cout << app.help();
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
