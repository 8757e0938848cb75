#include "regkit/rhetoric.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace regkit {

const char* to_string(FeatureCategory cat) {
    switch (cat) {
        case FeatureCategory::Superlative: return "superlative";
        case FeatureCategory::SocialProof: return "social_proof";
        case FeatureCategory::Authority: return "authority";
        case FeatureCategory::OutcomeFraming: return "outcome_framing";
        case FeatureCategory::Urgency: return "urgency";
        case FeatureCategory::Keyword: return "keyword";
    }
    return "?";
}

const char* to_string(FramingLevel level) {
    switch (level) {
        case FramingLevel::L0: return "L0";
        case FramingLevel::L1: return "L1";
        case FramingLevel::L2: return "L2";
        case FramingLevel::L3: return "L3";
        case FramingLevel::L4: return "L4";
    }
    return "?";
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool word_char(unsigned char c) { return std::isalnum(c) != 0; }

std::optional<FeatureCategory> category_from_header(const std::string& h) {
    if (h == "superlative") return FeatureCategory::Superlative;
    if (h == "social_proof") return FeatureCategory::SocialProof;
    if (h == "authority") return FeatureCategory::Authority;
    if (h == "outcome_framing") return FeatureCategory::OutcomeFraming;
    if (h == "urgency") return FeatureCategory::Urgency;
    return std::nullopt;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

void FeatureLexicon::add_pattern(FeatureCategory cat, std::string pattern) {
    patterns_[cat].push_back(lower(trim(pattern)));
}

void FeatureLexicon::add_keyword_target(const std::string& domain, std::string term) {
    keyword_targets_[domain].push_back(lower(trim(term)));
}

const std::vector<std::string>& FeatureLexicon::patterns(FeatureCategory cat) const {
    static const std::vector<std::string> empty;
    auto it = patterns_.find(cat);
    return it == patterns_.end() ? empty : it->second;
}

const std::vector<std::string>& FeatureLexicon::keyword_targets(const std::string& domain) const {
    static const std::vector<std::string> empty;
    auto it = keyword_targets_.find(domain);
    return it == keyword_targets_.end() ? empty : it->second;
}

void FeatureLexicon::validate() const {
    std::map<std::string, FeatureCategory> seen;
    for (const auto& [cat, pats] : patterns_) {
        for (const auto& p : pats) {
            auto [it, inserted] = seen.emplace(p, cat);
            if (!inserted && it->second != cat) {
                throw std::runtime_error(
                    "lexicon pattern '" + p + "' appears in both " +
                    to_string(it->second) + " and " + to_string(cat));
            }
        }
    }
}

FeatureLexicon FeatureLexicon::builtin() {
    FeatureLexicon lex;
    lex.set_version("builtin-1");

    for (const char* p : {"the leading", "leading", "most accurate", "most comprehensive",
                          "most powerful", "fastest", "best", "most", "highest recall",
                          "highest", "#1", "top-rated", "unmatched", "unrivaled"})
        lex.add_pattern(FeatureCategory::Superlative, p);

    for (const char* p : {"12m+ developers", "enterprise ai teams worldwide",
                          "millions of users", "industry standard", "used by",
                          "developers worldwide", "teams worldwide"})
        lex.add_pattern(FeatureCategory::SocialProof, p);

    for (const char* p : {"trusted by", "recommended by", "endorsed by", "certified",
                          "award-winning", "officially supported"})
        lex.add_pattern(FeatureCategory::Authority, p);

    for (const char* p : {"curated high-quality", "high-quality", "authoritative", "premium",
                          "enriched", "guaranteed", "effortless", "seamless", "superior results"})
        lex.add_pattern(FeatureCategory::OutcomeFraming, p);

    // Minimal urgency set; no experiment stimulus pins these, so treat as unvalidated.
    for (const char* p : {"limited time", "act now", "don't miss", "while supplies last",
                          "today only", "hurry"})
        lex.add_pattern(FeatureCategory::Urgency, p);

    for (const char* t : {"web search", "search results", "factual queries", "search query"})
        lex.add_keyword_target("D01", t);
    for (const char* t : {"e-commerce", "product", "checkout", "inventory"})
        lex.add_keyword_target("D03", t);
    for (const char* t : {"weather", "forecast", "temperature"})
        lex.add_keyword_target("D05", t);
    for (const char* t : {"code execution", "sandbox", "runtime"})
        lex.add_keyword_target("D07", t);
    for (const char* t : {"restaurant", "reservation", "cuisine"})
        lex.add_keyword_target("D10", t);

    lex.validate();
    return lex;
}

FeatureLexicon FeatureLexicon::parse(const std::string& text) {
    FeatureLexicon lex;
    std::istringstream in(text);
    std::string line;
    std::optional<FeatureCategory> section;
    std::string keyword_domain;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            std::string header = line.substr(1, line.size() - 2);
            keyword_domain.clear();
            section.reset();
            if (header.rfind("keywords.", 0) == 0) {
                keyword_domain = header.substr(9);
            } else if (auto cat = category_from_header(header)) {
                section = cat;
            } else {
                throw std::runtime_error("unknown lexicon section: " + header);
            }
            continue;
        }
        if (auto eq = line.find('='); eq != std::string::npos && !section && keyword_domain.empty()) {
            std::string key = trim(line.substr(0, eq));
            if (key == "version") {
                lex.set_version(trim(line.substr(eq + 1)));
                continue;
            }
        }
        if (section) {
            lex.add_pattern(*section, line);
        } else if (!keyword_domain.empty()) {
            lex.add_keyword_target(keyword_domain, line);
        } else {
            throw std::runtime_error("lexicon entry outside any section: " + line);
        }
    }
    lex.validate();
    return lex;
}

FeatureLexicon FeatureLexicon::load_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open lexicon file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

int FeatureReport::count(FeatureCategory cat) const {
    switch (cat) {
        case FeatureCategory::Superlative: return superlative;
        case FeatureCategory::SocialProof: return social_proof;
        case FeatureCategory::Authority: return authority;
        case FeatureCategory::OutcomeFraming: return outcome_framing;
        case FeatureCategory::Urgency: return urgency_marker_count;
        case FeatureCategory::Keyword: return keyword_density;
    }
    return 0;
}

namespace {

struct Candidate {
    FeatureCategory category;
    std::size_t begin;
    std::size_t end;
};

void find_occurrences(const std::string& haystack, const std::string& pattern,
                      FeatureCategory cat, std::vector<Candidate>& out) {
    if (pattern.empty()) return;
    std::size_t pos = 0;
    while ((pos = haystack.find(pattern, pos)) != std::string::npos) {
        std::size_t end = pos + pattern.size();
        bool left_ok = pos == 0 || !word_char(haystack[pos - 1]);
        bool right_ok = end == haystack.size() || !word_char(haystack[end]);
        if (left_ok && right_ok) out.push_back({cat, pos, end});
        pos += 1;
    }
}

bool overlaps(const Candidate& a, const Candidate& b) {
    return a.begin < b.end && b.begin < a.end;
}

}  // namespace

FeatureReport detect_features(const ToolDescription& desc, const FeatureLexicon& lex) {
    lex.validate();
    const std::string body = lower(desc.body);

    std::vector<Candidate> candidates;
    for (FeatureCategory cat : {FeatureCategory::Superlative, FeatureCategory::SocialProof,
                                FeatureCategory::Authority, FeatureCategory::OutcomeFraming,
                                FeatureCategory::Urgency}) {
        for (const auto& p : lex.patterns(cat)) find_occurrences(body, p, cat, candidates);
    }

    // Longest match wins; ties resolved by category priority, then position.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) {
                         auto la = a.end - a.begin, lb = b.end - b.begin;
                         if (la != lb) return la > lb;
                         if (a.category != b.category) return a.category < b.category;
                         return a.begin < b.begin;
                     });
    std::vector<Candidate> accepted;
    for (const auto& c : candidates) {
        bool clash = std::any_of(accepted.begin(), accepted.end(),
                                 [&](const Candidate& a) { return overlaps(a, c); });
        if (!clash) accepted.push_back(c);
    }

    // Keyword targets are counted independently of the persuasion spans.
    std::vector<Candidate> keyword_hits;
    for (const auto& t : lex.keyword_targets(desc.domain_tag))
        find_occurrences(body, t, FeatureCategory::Keyword, keyword_hits);
    std::stable_sort(keyword_hits.begin(), keyword_hits.end(),
                     [](const Candidate& a, const Candidate& b) {
                         auto la = a.end - a.begin, lb = b.end - b.begin;
                         if (la != lb) return la > lb;
                         return a.begin < b.begin;
                     });
    for (const auto& c : keyword_hits) {
        bool clash = std::any_of(accepted.begin(), accepted.end(),
                                 [&](const Candidate& a) {
                                     return a.category == FeatureCategory::Keyword && overlaps(a, c);
                                 });
        if (!clash) accepted.push_back(c);
    }

    std::sort(accepted.begin(), accepted.end(),
              [](const Candidate& a, const Candidate& b) { return a.begin < b.begin; });

    FeatureReport report;
    for (const auto& c : accepted) {
        report.matched_spans.push_back(
            {c.category, c.begin, c.end, desc.body.substr(c.begin, c.end - c.begin)});
        switch (c.category) {
            case FeatureCategory::Superlative: ++report.superlative; break;
            case FeatureCategory::SocialProof: ++report.social_proof; break;
            case FeatureCategory::Authority: ++report.authority; break;
            case FeatureCategory::OutcomeFraming: ++report.outcome_framing; break;
            case FeatureCategory::Urgency: ++report.urgency_marker_count; break;
            case FeatureCategory::Keyword: ++report.keyword_density; break;
        }
    }
    return report;
}

FramingLevel classify_level(const FeatureReport& r) {
    if (r.superlative == 0) {
        if (r.total_persuasion_claims() == 0) return FramingLevel::L0;
        if (r.total_persuasion_claims() == 1 && (r.social_proof == 1 || r.authority == 1))
            return FramingLevel::L1;
        return FramingLevel::L2;
    }
    if (r.superlative >= kStackThreshold || r.urgency_marker_count >= 1) return FramingLevel::L4;
    return FramingLevel::L3;
}

}  // namespace regkit
