#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regkit/agent_sim.hpp"
#include "regkit/metrics.hpp"

namespace regkit {

// Simulated-vs-reference reproductions of the published calibration tables.
// Reference values live here so report output can carry deviation columns.

struct KappaRow {
    std::string agent;
    double kappa_l1_sim = 0.0;
    double kappa_l3_sim = 0.0;
    std::optional<double> kappa_l1_ref;
    std::optional<double> kappa_l3_ref;
};
std::vector<KappaRow> reproduce_kappa_table(std::uint64_t seed, int n_per_cell = 400);

struct DisclosureRow {
    std::string agent;
    double kappa_baseline = 1.0;  // odds at the no-disclosure ceiling
    double kappa_d_label = 1.0;   // odds after [SPONSORED TOOL]
    std::optional<double> kappa_d_ref;
    bool ne_persists = false;  // κ_d > 1
};
std::vector<DisclosureRow> reproduce_disclosure_table();

struct LegalRow {
    std::string agent;
    LegalBoundaryReport report;
    std::optional<double> capture_ref_pct;
    std::optional<double> increment_ref;
};
struct LegalReproduction {
    std::vector<LegalRow> per_model;
    LegalBoundaryReport pooled;
    double pooled_capture_ref_pct = 106.5;
    double pooled_increment_ref = -0.02;
};
LegalReproduction reproduce_legal_table(std::uint64_t seed, int n_per_cell = 200);

struct MultitoolRow {
    std::string agent;
    std::map<std::string, double> rsa_by_domain;      // simulated
    std::map<std::string, double> rsa_ref_by_domain;  // published
};
std::vector<MultitoolRow> reproduce_multitool_table(std::uint64_t seed, int reps_per_cell = 40);

struct DoseRow {
    FramingLevel level = FramingLevel::L0;
    SbcEstimate pooled;
    double sbc_ref = 0.0;
};
// Pooled dose-response across all shipped profiles under the Luce rule.
std::vector<DoseRow> reproduce_dose_response(std::uint64_t seed, int n_per_cell = 400);

}  // namespace regkit
