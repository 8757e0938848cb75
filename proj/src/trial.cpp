#include "regkit/trial.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace regkit {

using nlohmann::json;

const char* to_string(Condition c) {
    switch (c) {
        case Condition::ON: return "ON";
        case Condition::NN: return "NN";
        case Condition::OO: return "OO";
    }
    return "?";
}

const char* to_string(Disclosure d) {
    switch (d) {
        case Disclosure::None: return "none";
        case Disclosure::Label: return "label";
        case Disclosure::Rating: return "rating";
        case Disclosure::Sysprompt: return "sysprompt";
    }
    return "?";
}

Condition condition_from_string(const std::string& s) {
    if (s == "ON") return Condition::ON;
    if (s == "NN") return Condition::NN;
    if (s == "OO") return Condition::OO;
    throw std::invalid_argument("unknown condition: " + s);
}

Disclosure disclosure_from_string(const std::string& s) {
    if (s == "none") return Disclosure::None;
    if (s == "label") return Disclosure::Label;
    if (s == "rating") return Disclosure::Rating;
    if (s == "sysprompt") return Disclosure::Sysprompt;
    throw std::invalid_argument("unknown disclosure: " + s);
}

namespace {

json record_to_json(const TrialRecord& r) {
    json j{{"trial_id", r.trial_id},
           {"domain", r.domain_tag},
           {"agent", r.agent_id},
           {"condition", to_string(r.condition)},
           {"disclosure", to_string(r.disclosure)},
           {"selected_slot", r.selected_slot},
           {"selected_optimized", r.selected_optimized},
           {"n_tools", r.n_tools}};
    if (r.slot_of_optimized)
        j["slot_of_optimized"] = *r.slot_of_optimized;
    else
        j["slot_of_optimized"] = nullptr;
    return j;
}

TrialRecord record_from_json(const json& j) {
    TrialRecord r;
    r.trial_id = j.at("trial_id").get<std::string>();
    r.domain_tag = j.at("domain").get<std::string>();
    r.agent_id = j.at("agent").get<std::string>();
    r.condition = condition_from_string(j.at("condition").get<std::string>());
    r.disclosure = disclosure_from_string(j.at("disclosure").get<std::string>());
    if (!j.at("slot_of_optimized").is_null())
        r.slot_of_optimized = j.at("slot_of_optimized").get<int>();
    r.selected_slot = j.at("selected_slot").get<int>();
    r.selected_optimized = j.at("selected_optimized").get<bool>();
    r.n_tools = j.at("n_tools").get<int>();
    return r;
}

}  // namespace

void write_ndjson(const TrialLog& log, std::ostream& out) {
    if (!log.diagnostics.empty()) out << json{{"diagnostics", log.diagnostics}}.dump() << "\n";
    for (const auto& r : log.records) out << record_to_json(r).dump() << "\n";
}

TrialLog read_ndjson(std::istream& in) {
    TrialLog log;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        if (j.contains("diagnostics")) {
            for (const auto& d : j["diagnostics"]) log.diagnostics.push_back(d.get<std::string>());
            continue;
        }
        log.records.push_back(record_from_json(j));
    }
    return log;
}

void write_tsv(const TrialLog& log, std::ostream& out) {
    for (const auto& d : log.diagnostics) out << "# " << d << "\n";
    for (const auto& r : log.records) {
        out << r.trial_id << '\t' << r.domain_tag << '\t' << r.agent_id << '\t'
            << to_string(r.condition) << '\t' << to_string(r.disclosure) << '\t';
        if (r.slot_of_optimized)
            out << *r.slot_of_optimized;
        else
            out << '-';
        out << '\t' << r.selected_slot << '\t' << (r.selected_optimized ? 1 : 0) << '\t'
            << r.n_tools << '\n';
    }
}

TrialLog read_tsv(std::istream& in) {
    TrialLog log;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto start = line.find_first_not_of("# ");
            log.diagnostics.push_back(start == std::string::npos ? "" : line.substr(start));
            continue;
        }
        std::istringstream fields(line);
        TrialRecord r;
        std::string cond, disc, slot, sel_opt;
        if (!(std::getline(fields, r.trial_id, '\t') && std::getline(fields, r.domain_tag, '\t') &&
              std::getline(fields, r.agent_id, '\t') && std::getline(fields, cond, '\t') &&
              std::getline(fields, disc, '\t') && std::getline(fields, slot, '\t')))
            throw std::runtime_error("malformed trial line: " + line);
        r.condition = condition_from_string(cond);
        r.disclosure = disclosure_from_string(disc);
        if (slot != "-") r.slot_of_optimized = std::stoi(slot);
        std::string field;
        std::getline(fields, field, '\t');
        r.selected_slot = std::stoi(field);
        std::getline(fields, field, '\t');
        r.selected_optimized = field == "1";
        std::getline(fields, field, '\t');
        r.n_tools = std::stoi(field);
        log.records.push_back(r);
    }
    return log;
}

}  // namespace regkit
