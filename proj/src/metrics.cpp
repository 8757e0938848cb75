#include "regkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace regkit {

SbcEstimate wilson(long successes, long n, double z) {
    if (n < 1) throw std::domain_error("wilson: n must be >= 1");
    if (successes < 0 || successes > n)
        throw std::domain_error("wilson: successes outside [0, n]");
    if (z <= 0) throw std::domain_error("wilson: z must be > 0");

    const double nn = static_cast<double>(n);
    const double p_hat = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p_hat + z2 / (2.0 * nn)) / denom;
    const double spread =
        (z / denom) * std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn));

    SbcEstimate est;
    est.n = n;
    est.successes = successes;
    est.z = z;
    est.center = center;
    est.sbc = center - 0.5;
    est.ci_low = center - spread;
    est.ci_high = center + spread;
    return est;
}

SbcEstimate sbc(const std::vector<TrialRecord>& on_records, double z) {
    if (on_records.empty()) throw std::invalid_argument("sbc: empty log");
    long successes = 0;
    for (const auto& r : on_records) {
        if (r.condition != on_records.front().condition)
            throw std::invalid_argument("sbc: mixed conditions in log");
        if (r.selected_optimized) ++successes;
    }
    return wilson(successes, static_cast<long>(on_records.size()), z);
}

std::map<int, SbcEstimate> sbc_by_slot(const std::vector<TrialRecord>& on_records, double z) {
    std::map<int, std::vector<TrialRecord>> by_slot;
    for (const auto& r : on_records)
        if (r.slot_of_optimized) by_slot[*r.slot_of_optimized].push_back(r);
    std::map<int, SbcEstimate> out;
    for (const auto& [slot, records] : by_slot) out.emplace(slot, sbc(records, z));
    return out;
}

double rsa(const std::vector<TrialRecord>& records, int n_tools) {
    if (records.empty()) throw std::domain_error("rsa: empty log");
    if (n_tools < 2) throw std::domain_error("rsa: n_tools must be >= 2");
    long selected = 0;
    for (const auto& r : records) {
        if (r.n_tools != n_tools)
            throw std::invalid_argument("rsa: record n_tools mismatch");
        if (r.selected_optimized) ++selected;
    }
    double p = static_cast<double>(selected) / static_cast<double>(records.size());
    return p * n_tools;
}

FramingMultiplier kappa_from_probability(double p, FramingLevel level, CapPolicy policy,
                                         long cell_n, double z) {
    if (p < 0.0 || p > 1.0) throw std::domain_error("kappa: p outside [0,1]");
    FramingMultiplier fm;
    fm.level = level;
    fm.source_probability = p;
    if (p == 0.0 || p == 1.0) {
        if (policy == CapPolicy::WilsonCentre) {
            fm.source_probability =
                wilson(p == 1.0 ? cell_n : 0, cell_n, z).center;
            fm.capped = true;
        } else {
            fm.kappa = p == 1.0 ? std::numeric_limits<double>::infinity() : 0.0;
            fm.capped = true;
            return fm;
        }
    }
    fm.kappa = fm.source_probability / (1.0 - fm.source_probability);
    return fm;
}

double probability_from_kappa(double kappa) {
    if (kappa <= 0) throw std::domain_error("probability_from_kappa: kappa must be > 0");
    return kappa / (1.0 + kappa);
}

AaqsRecord aaqs(double selection_rate, double capability_match, std::string tool_id) {
    if (selection_rate < 0 || selection_rate > 1 || capability_match < 0 || capability_match > 1)
        throw std::domain_error("aaqs: inputs must lie in [0,1]");
    AaqsRecord rec;
    rec.tool_id = std::move(tool_id);
    rec.selection_rate = selection_rate;
    rec.capability_match = capability_match;
    rec.aaqs = selection_rate * capability_match;
    rec.coasting = rec.aaqs < kCoastingFraction * selection_rate;
    return rec;
}

double capability_match_binary(const SelectionFacingSchema& schema,
                               const std::vector<TaskRequirement>& requirements,
                               std::vector<std::string>* diagnostics) {
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return s;
    };
    for (const auto& req : requirements) {
        auto it = std::find_if(schema.constraints.begin(), schema.constraints.end(),
                               [&](const SchemaConstraint& c) { return c.name == req.name; });
        if (it == schema.constraints.end()) {
            if (diagnostics)
                diagnostics->push_back("requirement '" + req.name +
                                       "' references an undeclared constraint dimension");
            return 0.0;
        }
        if (req.kind == ConstraintKind::Categorical) {
            if (lower(it->value) != lower(req.value)) {
                if (diagnostics)
                    diagnostics->push_back("categorical mismatch on '" + req.name + "': need " +
                                           req.value + ", declared " + it->value);
                return 0.0;
            }
        } else {
            double declared = 0, needed = 0;
            try {
                declared = std::stod(it->value);
                needed = std::stod(req.value);
            } catch (const std::exception&) {
                if (diagnostics)
                    diagnostics->push_back("non-numeric quantitative constraint '" + req.name + "'");
                return 0.0;
            }
            bool ok = req.op == ReqOp::AtLeast   ? declared >= needed
                      : req.op == ReqOp::AtMost  ? declared <= needed
                                                 : declared == needed;
            if (!ok) {
                if (diagnostics)
                    diagnostics->push_back("quantitative bound unmet on '" + req.name +
                                           "': need " + req.value + ", declared " + it->value);
                return 0.0;
            }
        }
    }
    return 1.0;
}

LegalBoundaryReport legal_boundary(const SbcEstimate& structured_vs_legal,
                                   const SbcEstimate& structured_vs_full) {
    LegalBoundaryReport rep;
    rep.legal_uplift = structured_vs_legal;
    rep.normalization_effect = structured_vs_full;
    rep.illegal_increment = structured_vs_full.sbc - structured_vs_legal.sbc;
    // Capture ratio is undefined when the normalization effect is
    // statistically indistinguishable from zero.
    bool ci_spans_zero =
        structured_vs_full.ci_low - 0.5 <= 0.0 && structured_vs_full.ci_high - 0.5 >= 0.0;
    if (!ci_spans_zero && structured_vs_full.sbc != 0.0)
        rep.capture_ratio_pct = 100.0 * structured_vs_legal.sbc / structured_vs_full.sbc;
    return rep;
}

TrafficProjection traffic_projection(double sbc_value, double daily_calls,
                                     double revenue_per_call) {
    if (daily_calls <= 0 || revenue_per_call <= 0)
        throw std::domain_error("traffic_projection: inputs must be positive");
    TrafficProjection p;
    p.share = sbc_value + 0.5;
    p.redirect_pp = sbc_value * 100.0;
    p.annual_redirect = sbc_value * daily_calls * revenue_per_call * 365.0;
    return p;
}

bool stop_condition_met(long successes, long n, double target_half_width, double z) {
    if (n < 1) return false;
    return wilson(successes, n, z).half_width() < target_half_width;
}

long all_success_crossing_n(double target_half_width, double z, long max_n) {
    for (long n = 1; n <= max_n; ++n)
        if (stop_condition_met(n, n, target_half_width, z)) return n;
    throw std::runtime_error("all_success_crossing_n: no crossing below max_n");
}

}  // namespace regkit
