#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "regkit/metrics.hpp"
#include "regkit/normalizer.hpp"
#include "regkit/rhetoric.hpp"

namespace regkit {

inline constexpr const char* kSchemaVersion = "1";

struct Attestation {
    std::string constraint;
    ConstraintKind kind = ConstraintKind::Quantitative;
    std::string value;
    std::string unit;
    std::string attester;
    std::int64_t time = 0;
};

struct RegistryEntry {
    std::string tool_id;
    std::string provider_id;
    NormalizedEntry normalized;
    std::int64_t registration_time = 0;
    std::vector<Attestation> attestations;
};

struct CallEvent {
    std::string event_id;
    std::string tool_id;
    std::string session;
    std::vector<TaskRequirement> task_requirements;
    bool selected = false;
    std::int64_t timestamp = 0;
};

enum class RegistryError {
    None,
    DuplicateToolId,
    NormalizationRejected,
    UnknownTool,
    PermissionDenied,
    NotSelectedYet,
    EmptyWindow,
};

const char* to_string(RegistryError e);

// Append-only event-sourced registry: registrations, attestations and call
// events land in a log; derived state is a pure function of the log, so
// replaying any prefix reproduces the state at that point.
class RegistryCore {
public:
    explicit RegistryCore(FeatureLexicon lex = FeatureLexicon::builtin(),
                          std::string store_path = "");

    struct RegisterResult {
        RegistryError error = RegistryError::None;
        std::string diagnosis;
        const RegistryEntry* entry = nullptr;  // owned by the core
        bool ok() const { return error == RegistryError::None; }
    };
    RegisterResult register_tool(const ToolDescription& desc, const std::string& provider_id,
                                 std::int64_t time = 0);

    // Selection view: rendered L0 cards in registration order. Safe for the
    // agent role; contains no marketing-tier bytes.
    std::vector<std::pair<std::string, std::string>> selection_view() const;

    // Marketing view is gated: the session must have a logged selection of
    // the tool first.
    struct MarketingResult {
        RegistryError error = RegistryError::None;
        std::string body;
        bool ok() const { return error == RegistryError::None; }
    };
    MarketingResult marketing_view(const std::string& session, const std::string& tool_id) const;

    RegistryError attest(const Attestation& att, const std::string& tool_id);

    // Appends durably before acknowledging; idempotent on event_id.
    RegistryError log_call(const CallEvent& event);

    struct AaqsResult {
        RegistryError error = RegistryError::None;
        AaqsRecord record;
        long events = 0;
        bool ok() const { return error == RegistryError::None; }
    };
    AaqsResult aaqs_report(const std::string& tool_id,
                           std::int64_t window_begin = INT64_MIN,
                           std::int64_t window_end = INT64_MAX) const;

    const RegistryEntry* find(const std::string& tool_id) const;
    std::size_t size() const { return order_.size(); }

    // Re-checks every stored selection card; returns ids whose card no longer
    // classifies L0 under the active lexicon.
    std::vector<std::string> audit() const;

    // Canonical serialization of derived state, for replay comparison.
    nlohmann::json state_snapshot() const;

    const std::vector<nlohmann::json>& event_log() const { return events_; }

    // Rebuilds a core by replaying events (e.g. the persisted store file).
    static RegistryCore replay(const std::vector<nlohmann::json>& events,
                               FeatureLexicon lex = FeatureLexicon::builtin());
    static RegistryCore load(const std::string& store_path,
                             FeatureLexicon lex = FeatureLexicon::builtin());

private:
    void append_event(nlohmann::json event);
    void apply_event(const nlohmann::json& event, bool record);
    void apply_attest(const Attestation& att, RegistryEntry& entry);

    FeatureLexicon lexicon_;
    std::string store_path_;
    std::vector<nlohmann::json> events_;
    std::map<std::string, RegistryEntry> entries_;
    std::vector<std::string> order_;
    std::map<std::string, CallEvent> calls_;       // by event_id
    std::vector<std::string> call_order_;
};

// JSON codecs shared with the wire protocol.
nlohmann::json to_json(const ToolDescription& desc);
ToolDescription tool_description_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TaskRequirement& req);
TaskRequirement task_requirement_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CallEvent& event);
CallEvent call_event_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SelectionFacingSchema& schema);
nlohmann::json to_json(const NormalizedEntry& entry);

}  // namespace regkit
