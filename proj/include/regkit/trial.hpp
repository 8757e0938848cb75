#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace regkit {

enum class Condition { ON, NN, OO };
enum class Disclosure { None, Label, Rating, Sysprompt };

const char* to_string(Condition c);
const char* to_string(Disclosure d);
Condition condition_from_string(const std::string& s);
Disclosure disclosure_from_string(const std::string& s);

struct TrialRecord {
    std::string trial_id;
    std::string domain_tag;
    std::string agent_id;
    Condition condition = Condition::ON;
    Disclosure disclosure = Disclosure::None;
    std::optional<int> slot_of_optimized;  // 0-based; nullopt for NN
    int selected_slot = 0;
    bool selected_optimized = false;
    int n_tools = 2;

    bool operator==(const TrialRecord&) const = default;
};

struct TrialLog {
    std::vector<std::string> diagnostics;  // header notes (balance warnings etc.)
    std::vector<TrialRecord> records;

    bool operator==(const TrialLog&) const = default;
};

// Newline-delimited JSON, one record per line. Diagnostics travel in a
// leading {"diagnostics": [...]} line when present.
void write_ndjson(const TrialLog& log, std::ostream& out);
TrialLog read_ndjson(std::istream& in);

// Columnar text, tab-separated. Field order:
// trial_id domain agent condition disclosure slot_of_optimized selected_slot
// selected_optimized n_tools   ("-" marks an absent slot_of_optimized)
void write_tsv(const TrialLog& log, std::ostream& out);
TrialLog read_tsv(std::istream& in);

}  // namespace regkit
