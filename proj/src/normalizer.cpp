#include "regkit/normalizer.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <sstream>

namespace regkit {

const char* to_string(ConstraintKind kind) {
    return kind == ConstraintKind::Categorical ? "categorical" : "quantitative";
}

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string slugify(const std::string& name) {
    std::string out;
    char prev = '\0';
    for (std::size_t i = 0; i < name.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(name[i]);
        if (std::isalnum(c)) {
            if (std::isupper(c) && std::islower(static_cast<unsigned char>(prev)) &&
                !out.empty() && out.back() != '_')
                out.push_back('_');
            out.push_back(static_cast<char>(std::tolower(c)));
        } else if (!out.empty() && out.back() != '_') {
            out.push_back('_');
        }
        prev = name[i];
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out;
}

struct Sentence {
    std::size_t begin;
    std::size_t end;  // exclusive
};

std::vector<Sentence> split_sentences(const std::string& body) {
    std::vector<Sentence> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '.' || c == '!' || c == '?') {
            std::size_t j = i + 1;
            while (j < body.size() && (body[j] == '.' || body[j] == '!' || body[j] == '?')) ++j;
            if (j >= body.size() || std::isspace(static_cast<unsigned char>(body[j])) ||
                body[j] == '\n') {
                out.push_back({start, j});
                while (j < body.size() && std::isspace(static_cast<unsigned char>(body[j]))) ++j;
                start = j;
                i = j - 1;
            }
        }
    }
    if (start < body.size()) out.push_back({start, body.size()});
    return out;
}

std::string tidy(std::string s) {
    static const std::regex dangling(R"(\s*(---|—|–)\s*(,|\.|and\b|or\b)?)");
    static const std::regex dup_comma(R"(\s*,(\s*,)+)");
    static const std::regex comma_space(R"(\s+,)");
    static const std::regex spaces(R"(\s{2,})");
    static const std::regex orphan(R"(\b(and|or|with|the|a|an)\s*([.,;:]|$))");
    s = std::regex_replace(s, dup_comma, ",");
    s = std::regex_replace(s, comma_space, ",");
    for (int i = 0; i < 3; ++i) s = std::regex_replace(s, orphan, "$2");
    s = std::regex_replace(s, spaces, " ");
    // strip leading/trailing connectors and punctuation fragments
    static const std::regex lead(R"(^\s*(,|\.|;|:|—|–|---|and\b|or\b)\s*)");
    for (int i = 0; i < 4; ++i) s = std::regex_replace(s, lead, "");
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool has_content(const std::string& cleaned) {
    static const std::set<std::string> stop = {"a",  "an", "the", "and", "or", "for", "with",
                                              "of", "to", "by",  "from", "on", "in",  "is",
                                              "are", "---", "—"};
    std::istringstream in(cleaned);
    std::string tok;
    while (in >> tok) {
        std::string w;
        for (char c : tok)
            if (std::isalnum(static_cast<unsigned char>(c))) w.push_back(
                static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (!w.empty() && !stop.count(w)) return true;
    }
    return false;
}

void extract_constraints(const std::string& sentence, std::vector<SchemaConstraint>& out) {
    auto have = [&](const std::string& name) {
        return std::any_of(out.begin(), out.end(),
                           [&](const SchemaConstraint& c) { return c.name == name; });
    };
    std::string low = to_lower(sentence);
    std::smatch m;

    static const std::regex latency_re(R"((\d+)\s*ms\b)");
    if (!have("latency") && std::regex_search(low, m, latency_re))
        out.push_back({"latency", ConstraintKind::Quantitative, m[1], "ms", {}});

    static const std::regex rate_re(R"((\d+)\s+requests?\s+per\s+(second|minute|hour|day))");
    if (!have("rate_limit") && std::regex_search(low, m, rate_re))
        out.push_back({"rate_limit", ConstraintKind::Quantitative, m[1],
                       "requests/" + m[2].str(), {}});

    if (!have("coverage")) {
        if (low.find("us-only") != std::string::npos)
            out.push_back({"coverage", ConstraintKind::Categorical, "US-only", "", {"US-only"}});
        else if (low.find("global coverage") != std::string::npos ||
                 low.find("worldwide coverage") != std::string::npos)
            out.push_back({"coverage", ConstraintKind::Categorical, "global", "", {"global"}});
    }

    static const std::regex cap_re(R"(up to (\d+) results)");
    if (!have("result_cap") && std::regex_search(low, m, cap_re))
        out.push_back({"result_cap", ConstraintKind::Quantitative, m[1], "results", {}});
}

// Removes rendered-card bytes that still match a persuasion pattern. The
// selection tier must never contain a lexicon match, whatever the lexicon.
bool scrub_schema(SelectionFacingSchema& schema, const FeatureLexicon& lex) {
    for (int round = 0; round < 4; ++round) {
        ToolDescription probe{"", schema.function_name, render_selection_text(schema), {}, ""};
        FeatureReport rep = detect_features(probe, lex);
        std::vector<std::string> offenders;
        for (const auto& span : rep.matched_spans)
            if (span.category != FeatureCategory::Keyword) offenders.push_back(to_lower(span.text));
        if (offenders.empty()) return true;
        auto erase_all = [&](std::string& field) {
            std::string low = to_lower(field);
            for (const auto& o : offenders) {
                std::size_t pos;
                while ((pos = low.find(o)) != std::string::npos) {
                    field.erase(pos, o.size());
                    low.erase(pos, o.size());
                }
            }
            field = tidy(field);
        };
        erase_all(schema.output_spec);
        for (auto& c : schema.constraints) erase_all(c.value);
    }
    ToolDescription probe{"", schema.function_name, render_selection_text(schema), {}, ""};
    return classify_level(detect_features(probe, lex)) == FramingLevel::L0;
}

}  // namespace

std::string render_selection_text(const SelectionFacingSchema& schema) {
    std::ostringstream out;
    out << "function: " << schema.function_name << "\n";
    if (!schema.input_spec.empty()) {
        out << "input: ";
        for (std::size_t i = 0; i < schema.input_spec.size(); ++i) {
            const auto& p = schema.input_spec[i];
            if (i) out << "; ";
            out << p.name << ": " << p.type << (p.required ? " (required)" : " (optional)");
        }
        out << "\n";
    }
    if (!schema.output_spec.empty()) out << "output: " << schema.output_spec << "\n";

    auto sorted = schema.constraints;
    std::sort(sorted.begin(), sorted.end(),
              [](const SchemaConstraint& a, const SchemaConstraint& b) { return a.name < b.name; });
    for (const auto& c : sorted) {
        out << c.name << ": " << c.value;
        if (c.kind == ConstraintKind::Quantitative && !c.unit.empty()) out << " " << c.unit;
        bool verified = std::find(schema.verified_fields.begin(), schema.verified_fields.end(),
                                  c.name) != schema.verified_fields.end();
        if (verified) out << " (verified)";
        out << "\n";
    }
    return out.str();
}

std::optional<SelectionFacingSchema> parse_selection_text(const std::string& text) {
    if (text.rfind("function: ", 0) != 0) return std::nullopt;
    SelectionFacingSchema schema;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto colon = line.find(": ");
        if (colon == std::string::npos) return std::nullopt;
        std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 2);
        if (key == "function") {
            schema.function_name = value;
        } else if (key == "input") {
            std::istringstream params(value);
            std::string part;
            while (std::getline(params, part, ';')) {
                auto b = part.find_first_not_of(' ');
                if (b == std::string::npos) continue;
                part = part.substr(b);
                auto pc = part.find(": ");
                if (pc == std::string::npos) return std::nullopt;
                ParamSpec p;
                p.name = part.substr(0, pc);
                std::string rest = part.substr(pc + 2);
                p.required = rest.find("(required)") != std::string::npos;
                auto paren = rest.find(" (");
                p.type = paren == std::string::npos ? rest : rest.substr(0, paren);
                schema.input_spec.push_back(p);
            }
        } else if (key == "output") {
            schema.output_spec = value;
        } else {
            SchemaConstraint c;
            c.name = key;
            bool verified = false;
            if (auto v = value.find(" (verified)"); v != std::string::npos) {
                verified = true;
                value = value.substr(0, v);
            }
            static const std::regex quant_re(R"(^(\d+(?:\.\d+)?)\s+(\S.*)$)");
            std::smatch m;
            if (std::regex_match(value, m, quant_re)) {
                c.kind = ConstraintKind::Quantitative;
                c.value = m[1];
                c.unit = m[2];
            } else {
                c.kind = ConstraintKind::Categorical;
                c.value = value;
                c.allowed = {value};
            }
            schema.constraints.push_back(c);
            if (verified) schema.verified_fields.push_back(key);
        }
    }
    return schema;
}

NormalizeResult normalize(const ToolDescription& desc, const FeatureLexicon& lex) {
    NormalizeResult result;

    if (desc.body.empty()) {
        result.failure = NormalizationFailure{"empty description body"};
        return result;
    }

    NormalizedEntry entry;
    entry.tool_id = desc.id;
    entry.marketing.original_body = desc.body;

    // Already-normalized cards pass through untouched, which makes the
    // normalization map idempotent.
    if (auto card = parse_selection_text(desc.body)) {
        entry.selection = std::move(*card);
        if (entry.selection.input_spec.empty()) entry.selection.input_spec = desc.param_schema;
        if (!scrub_schema(entry.selection, lex)) {
            result.failure = NormalizationFailure{
                "selection tier could not be reduced to L0 under the active lexicon"};
            return result;
        }
        result.entry = std::move(entry);
        return result;
    }

    FeatureReport report = detect_features(desc, lex);

    SelectionFacingSchema& schema = entry.selection;
    schema.function_name = slugify(desc.name.empty() ? desc.id : desc.name);
    schema.input_spec = desc.param_schema;

    auto sentences = split_sentences(desc.body);
    bool any_kept = false;
    for (const auto& sent : sentences) {
        std::vector<const MatchedSpan*> spans;
        for (const auto& span : report.matched_spans) {
            if (span.category == FeatureCategory::Keyword) continue;
            if (span.begin >= sent.begin && span.end <= sent.end) spans.push_back(&span);
        }
        // remove spans back-to-front so offsets stay valid
        std::string cleaned = desc.body.substr(sent.begin, sent.end - sent.begin);
        std::sort(spans.begin(), spans.end(),
                  [](const MatchedSpan* a, const MatchedSpan* b) { return a->begin > b->begin; });
        for (const auto* span : spans)
            cleaned.erase(span->begin - sent.begin, span->end - span->begin);
        cleaned = tidy(cleaned);

        bool kept = has_content(cleaned);
        for (const auto* span : spans) {
            entry.normalization_log.push_back({*span, kept ? "stripped" : "sentence_dropped"});
            entry.marketing.stripped_spans.push_back(*span);
        }
        if (!kept) continue;
        any_kept = true;

        std::string low = to_lower(cleaned);
        if (low.rfind("returns ", 0) == 0 && schema.output_spec.empty()) {
            std::string spec = cleaned.substr(8);
            if (!spec.empty() && spec.back() == '.') spec.pop_back();
            schema.output_spec = spec;
        }
        extract_constraints(cleaned, schema.constraints);
    }

    if (!any_kept) {
        result.failure = NormalizationFailure{
            "empty schema: every sentence consisted only of persuasion content"};
        return result;
    }

    if (!scrub_schema(schema, lex)) {
        result.failure = NormalizationFailure{
            "selection tier could not be reduced to L0 under the active lexicon"};
        return result;
    }

    result.entry = std::move(entry);
    return result;
}

}  // namespace regkit
