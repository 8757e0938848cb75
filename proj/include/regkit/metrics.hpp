#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regkit/normalizer.hpp"
#include "regkit/rhetoric.hpp"
#include "regkit/trial.hpp"

namespace regkit {

struct SbcEstimate {
    long n = 0;
    long successes = 0;
    double center = 0.0;  // Wilson-centred probability
    double sbc = 0.0;     // center - 0.5
    double ci_low = 0.0;
    double ci_high = 0.0;
    double z = 1.96;

    double half_width() const { return (ci_high - ci_low) / 2.0; }
};

// Wilson score interval. center = (p̂ + z²/2n) / (1 + z²/n). Throws
// std::domain_error for n = 0.
SbcEstimate wilson(long successes, long n, double z = 1.96);

// SBC over an ON-condition log. Throws std::invalid_argument on mixed
// conditions or an empty log.
SbcEstimate sbc(const std::vector<TrialRecord>& on_records, double z = 1.96);

// Position-stratified variant: per-slot estimates keyed by slot_of_optimized.
std::map<int, SbcEstimate> sbc_by_slot(const std::vector<TrialRecord>& on_records,
                                       double z = 1.96);

// RSA = P(select optimized) / (1/n_tools). Throws on an empty log.
double rsa(const std::vector<TrialRecord>& records, int n_tools);

enum class CapPolicy { None, WilsonCentre };

struct FramingMultiplier {
    double kappa = 1.0;
    FramingLevel level = FramingLevel::L0;
    double source_probability = 0.5;
    bool capped = false;
};

// Odds ratio p/(1-p). At p in {0,1}, CapPolicy::WilsonCentre substitutes the
// Wilson centre at cell_n before taking odds.
FramingMultiplier kappa_from_probability(double p, FramingLevel level = FramingLevel::L3,
                                         CapPolicy policy = CapPolicy::WilsonCentre,
                                         long cell_n = 40, double z = 1.96);

double probability_from_kappa(double kappa);

inline constexpr double kCoastingFraction = 0.5;

struct AaqsRecord {
    std::string tool_id;
    double selection_rate = 0.0;
    double capability_match = 0.0;
    double aaqs = 0.0;
    bool coasting = false;
};

AaqsRecord aaqs(double selection_rate, double capability_match, std::string tool_id = "");

enum class ReqOp { Equals, AtLeast, AtMost };

struct TaskRequirement {
    std::string name;
    ConstraintKind kind = ConstraintKind::Categorical;
    ReqOp op = ReqOp::Equals;
    std::string value;  // categorical value, or numeric literal for quantitative
};

// 1.0 iff every requirement is satisfied by the schema's declared constraints.
// A requirement naming an undeclared dimension yields 0.0 with a diagnostic.
double capability_match_binary(const SelectionFacingSchema& schema,
                               const std::vector<TaskRequirement>& requirements,
                               std::vector<std::string>* diagnostics = nullptr);

struct LegalBoundaryReport {
    SbcEstimate legal_uplift;          // SBC(structured vs legal)
    SbcEstimate normalization_effect;  // SBC(structured vs full)
    std::optional<double> capture_ratio_pct;  // nullopt when the effect CI spans 0
    double illegal_increment = 0.0;
};

LegalBoundaryReport legal_boundary(const SbcEstimate& structured_vs_legal,
                                   const SbcEstimate& structured_vs_full);

struct TrafficProjection {
    double share = 0.5;          // sbc + 0.5
    double redirect_pp = 0.0;    // percentage points over fair share
    double annual_redirect = 0.0;
};

TrafficProjection traffic_projection(double sbc_value, double daily_calls,
                                     double revenue_per_call);

// Adaptive-stopping helper: true when the Wilson CI half-width at
// (successes, n) has dropped below target.
bool stop_condition_met(long successes, long n, double target_half_width, double z = 1.96);

// Smallest n at which a run of all-successes satisfies the stopping rule.
long all_success_crossing_n(double target_half_width, double z = 1.96, long max_n = 1'000'000);

}  // namespace regkit
