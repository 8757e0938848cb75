#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regkit/rhetoric.hpp"

namespace regkit {

enum class ConstraintKind { Categorical, Quantitative };

const char* to_string(ConstraintKind kind);

struct SchemaConstraint {
    std::string name;            // e.g. "coverage", "latency"
    ConstraintKind kind = ConstraintKind::Categorical;
    std::string value;           // categorical value or numeric literal
    std::string unit;            // required for quantitative constraints
    std::vector<std::string> allowed;  // enumerable value set for categorical

    bool operator==(const SchemaConstraint&) const = default;
};

struct SelectionFacingSchema {
    std::string function_name;
    std::vector<ParamSpec> input_spec;
    std::string output_spec;
    std::vector<SchemaConstraint> constraints;
    std::vector<std::string> verified_fields;  // constraint names carrying a registry mark

    bool operator==(const SelectionFacingSchema&) const = default;
};

struct MarketingCopy {
    std::string original_body;  // verbatim provider text
    std::vector<MatchedSpan> stripped_spans;
};

struct NormalizationAction {
    MatchedSpan span;
    std::string action;  // "stripped" or "sentence_dropped"
};

struct NormalizedEntry {
    std::string tool_id;
    SelectionFacingSchema selection;
    MarketingCopy marketing;
    std::vector<NormalizationAction> normalization_log;
};

struct NormalizationFailure {
    std::string diagnosis;
};

struct NormalizeResult {
    std::optional<NormalizedEntry> entry;
    std::optional<NormalizationFailure> failure;

    bool ok() const { return entry.has_value(); }
};

// Rewrites a provider description into the selection-facing schema, keeping
// the verbatim copy in the marketing tier. The selection tier always renders
// to L0 text; a description with no functional sentence left after stripping
// fails with an empty-schema diagnosis.
NormalizeResult normalize(const ToolDescription& desc, const FeatureLexicon& lex);

// Canonical card rendering: function, input, output, constraints (sorted by
// name), verified marks. Byte-deterministic for equal schemas.
std::string render_selection_text(const SelectionFacingSchema& schema);

// Inverse of render_selection_text, used to make normalization idempotent on
// already-normalized cards. Returns nullopt when text is not a rendered card.
std::optional<SelectionFacingSchema> parse_selection_text(const std::string& text);

}  // namespace regkit
