#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace regkit {

// Persuasion-feature categories, in attribution priority order.
enum class FeatureCategory {
    Superlative,
    SocialProof,
    Authority,
    OutcomeFraming,
    Urgency,
    Keyword,
};

const char* to_string(FeatureCategory cat);

// Framing register of a description, ordered L0 (functional) .. L4 (maximal rhetoric).
enum class FramingLevel { L0 = 0, L1, L2, L3, L4 };

const char* to_string(FramingLevel level);

struct ParamSpec {
    std::string name;
    std::string type;
    bool required = false;

    bool operator==(const ParamSpec&) const = default;
};

struct ToolDescription {
    std::string id;
    std::string name;
    std::string body;
    std::vector<ParamSpec> param_schema;
    std::string domain_tag;  // e.g. "D01"; empty when unknown
};

// Pattern lists per category plus per-domain keyword targets.
// Patterns are stored lowercase; a pattern belongs to exactly one category.
class FeatureLexicon {
public:
    FeatureLexicon() = default;

    // Throws std::runtime_error naming both patterns if the same pattern
    // appears in two persuasion categories.
    static FeatureLexicon builtin();
    static FeatureLexicon load_file(const std::string& path);
    static FeatureLexicon parse(const std::string& text);

    void add_pattern(FeatureCategory cat, std::string pattern);
    void add_keyword_target(const std::string& domain, std::string term);
    void set_version(std::string v) { version_ = std::move(v); }

    const std::string& version() const { return version_; }
    const std::vector<std::string>& patterns(FeatureCategory cat) const;
    const std::vector<std::string>& keyword_targets(const std::string& domain) const;

    // Cross-category disjointness check; throws on violation.
    void validate() const;

private:
    std::map<FeatureCategory, std::vector<std::string>> patterns_;
    std::map<std::string, std::vector<std::string>> keyword_targets_;
    std::string version_ = "0";
};

struct MatchedSpan {
    FeatureCategory category;
    std::size_t begin = 0;  // byte offset into body
    std::size_t end = 0;    // exclusive
    std::string text;       // body substring, original case

    bool operator==(const MatchedSpan&) const = default;
};

struct FeatureReport {
    int social_proof = 0;
    int superlative = 0;
    int authority = 0;
    int outcome_framing = 0;
    int keyword_density = 0;
    int urgency_marker_count = 0;
    std::vector<MatchedSpan> matched_spans;

    int count(FeatureCategory cat) const;
    int total_persuasion_claims() const {
        return social_proof + superlative + authority + outcome_framing;
    }

    bool operator==(const FeatureReport&) const = default;
};

// Number of superlatives at which a description counts as "stacked" (L4).
inline constexpr int kStackThreshold = 3;

// Case-insensitive longest-match scan of body against the lexicon.
// Overlapping candidates are resolved longest-first, then by category priority
// (superlative > social_proof > authority > outcome_framing).
FeatureReport detect_features(const ToolDescription& desc, const FeatureLexicon& lex);

FramingLevel classify_level(const FeatureReport& report);

}  // namespace regkit
