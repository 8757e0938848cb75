#include "regkit/registry_core.hpp"

#include <fstream>
#include <stdexcept>

namespace regkit {

using nlohmann::json;

const char* to_string(RegistryError e) {
    switch (e) {
        case RegistryError::None: return "ok";
        case RegistryError::DuplicateToolId: return "duplicate tool_id";
        case RegistryError::NormalizationRejected: return "normalization rejected";
        case RegistryError::UnknownTool: return "unknown tool";
        case RegistryError::PermissionDenied: return "permission denied";
        case RegistryError::NotSelectedYet: return "no prior selection for this session";
        case RegistryError::EmptyWindow: return "no call events in window";
    }
    return "?";
}

json to_json(const ToolDescription& desc) {
    json params = json::array();
    for (const auto& p : desc.param_schema)
        params.push_back({{"name", p.name}, {"type", p.type}, {"required", p.required}});
    return {{"id", desc.id},       {"name", desc.name},
            {"body", desc.body},   {"param_schema", params},
            {"domain", desc.domain_tag}};
}

ToolDescription tool_description_from_json(const json& j) {
    ToolDescription desc;
    desc.id = j.at("id").get<std::string>();
    desc.name = j.value("name", desc.id);
    desc.body = j.at("body").get<std::string>();
    desc.domain_tag = j.value("domain", "");
    for (const auto& p : j.value("param_schema", json::array()))
        desc.param_schema.push_back({p.at("name").get<std::string>(),
                                     p.value("type", "string"), p.value("required", false)});
    return desc;
}

json to_json(const TaskRequirement& req) {
    return {{"name", req.name},
            {"kind", to_string(req.kind)},
            {"op", req.op == ReqOp::AtLeast ? "at_least"
                   : req.op == ReqOp::AtMost ? "at_most"
                                             : "equals"},
            {"value", req.value}};
}

TaskRequirement task_requirement_from_json(const json& j) {
    TaskRequirement req;
    req.name = j.at("name").get<std::string>();
    req.kind = j.value("kind", "categorical") == std::string("quantitative")
                   ? ConstraintKind::Quantitative
                   : ConstraintKind::Categorical;
    std::string op = j.value("op", "equals");
    req.op = op == "at_least" ? ReqOp::AtLeast : op == "at_most" ? ReqOp::AtMost : ReqOp::Equals;
    req.value = j.at("value").is_string() ? j.at("value").get<std::string>()
                                          : j.at("value").dump();
    return req;
}

json to_json(const CallEvent& event) {
    json reqs = json::array();
    for (const auto& r : event.task_requirements) reqs.push_back(to_json(r));
    return {{"event_id", event.event_id},   {"tool_id", event.tool_id},
            {"session", event.session},     {"task_requirements", reqs},
            {"selected", event.selected},   {"timestamp", event.timestamp}};
}

CallEvent call_event_from_json(const json& j) {
    CallEvent event;
    event.event_id = j.at("event_id").get<std::string>();
    event.tool_id = j.at("tool_id").get<std::string>();
    event.session = j.value("session", "");
    event.selected = j.value("selected", false);
    event.timestamp = j.value("timestamp", std::int64_t{0});
    for (const auto& r : j.value("task_requirements", json::array()))
        event.task_requirements.push_back(task_requirement_from_json(r));
    return event;
}

json to_json(const SelectionFacingSchema& schema) {
    json params = json::array();
    for (const auto& p : schema.input_spec)
        params.push_back({{"name", p.name}, {"type", p.type}, {"required", p.required}});
    json constraints = json::array();
    for (const auto& c : schema.constraints)
        constraints.push_back({{"name", c.name},
                               {"kind", to_string(c.kind)},
                               {"value", c.value},
                               {"unit", c.unit},
                               {"allowed", c.allowed}});
    return {{"function", schema.function_name},
            {"input", params},
            {"output", schema.output_spec},
            {"constraints", constraints},
            {"verified_fields", schema.verified_fields}};
}

json to_json(const NormalizedEntry& entry) {
    json stripped = json::array();
    for (const auto& s : entry.marketing.stripped_spans)
        stripped.push_back({{"category", to_string(s.category)},
                            {"begin", s.begin},
                            {"end", s.end},
                            {"text", s.text}});
    json log = json::array();
    for (const auto& a : entry.normalization_log)
        log.push_back({{"text", a.span.text},
                       {"category", to_string(a.span.category)},
                       {"action", a.action}});
    return {{"schema_version", kSchemaVersion},
            {"tool_id", entry.tool_id},
            {"selection", to_json(entry.selection)},
            {"selection_text", render_selection_text(entry.selection)},
            {"marketing", {{"original_body", entry.marketing.original_body},
                           {"stripped_spans", stripped}}},
            {"normalization_log", log}};
}

RegistryCore::RegistryCore(FeatureLexicon lex, std::string store_path)
    : lexicon_(std::move(lex)), store_path_(std::move(store_path)) {}

void RegistryCore::append_event(json event) {
    if (!store_path_.empty()) {
        std::ofstream out(store_path_, std::ios::app);
        if (!out) throw std::runtime_error("cannot append to store: " + store_path_);
        out << event.dump() << "\n";
        out.flush();
    }
    events_.push_back(std::move(event));
}

RegistryCore::RegisterResult RegistryCore::register_tool(const ToolDescription& desc,
                                                         const std::string& provider_id,
                                                         std::int64_t time) {
    RegisterResult result;
    if (entries_.count(desc.id)) {
        result.error = RegistryError::DuplicateToolId;
        result.diagnosis = "tool_id already registered: " + desc.id;
        return result;
    }
    NormalizeResult norm = normalize(desc, lexicon_);
    if (!norm.ok()) {
        result.error = RegistryError::NormalizationRejected;
        result.diagnosis = norm.failure->diagnosis;
        return result;
    }

    append_event({{"type", "register"},
                  {"tool", to_json(desc)},
                  {"provider", provider_id},
                  {"time", time}});

    RegistryEntry entry;
    entry.tool_id = desc.id;
    entry.provider_id = provider_id;
    entry.normalized = std::move(*norm.entry);
    entry.registration_time = time;
    auto [it, _] = entries_.emplace(desc.id, std::move(entry));
    order_.push_back(desc.id);
    result.entry = &it->second;
    return result;
}

std::vector<std::pair<std::string, std::string>> RegistryCore::selection_view() const {
    std::vector<std::pair<std::string, std::string>> cards;
    cards.reserve(order_.size());
    for (const auto& id : order_)
        cards.emplace_back(id, render_selection_text(entries_.at(id).normalized.selection));
    return cards;
}

RegistryCore::MarketingResult RegistryCore::marketing_view(const std::string& session,
                                                           const std::string& tool_id) const {
    MarketingResult result;
    auto it = entries_.find(tool_id);
    if (it == entries_.end()) {
        result.error = RegistryError::UnknownTool;
        return result;
    }
    bool selected_before = false;
    for (const auto& [_, event] : calls_)
        if (event.session == session && event.tool_id == tool_id && event.selected)
            selected_before = true;
    if (!selected_before) {
        result.error = RegistryError::NotSelectedYet;
        return result;
    }
    result.body = it->second.normalized.marketing.original_body;
    return result;
}

RegistryError RegistryCore::attest(const Attestation& att, const std::string& tool_id) {
    auto it = entries_.find(tool_id);
    if (it == entries_.end()) return RegistryError::UnknownTool;

    append_event({{"type", "attest"},
                  {"tool_id", tool_id},
                  {"constraint", att.constraint},
                  {"kind", to_string(att.kind)},
                  {"value", att.value},
                  {"unit", att.unit},
                  {"attester", att.attester},
                  {"time", att.time}});
    apply_attest(att, it->second);
    return RegistryError::None;
}

void RegistryCore::apply_attest(const Attestation& att, RegistryEntry& entry) {
    auto& schema = entry.normalized.selection;
    auto cit = std::find_if(schema.constraints.begin(), schema.constraints.end(),
                            [&](const SchemaConstraint& c) { return c.name == att.constraint; });
    if (cit == schema.constraints.end()) {
        SchemaConstraint c{att.constraint, att.kind, att.value, att.unit, {}};
        if (att.kind == ConstraintKind::Categorical) c.allowed = {att.value};
        schema.constraints.push_back(c);
    } else {
        cit->value = att.value;
        if (!att.unit.empty()) cit->unit = att.unit;
    }
    if (std::find(schema.verified_fields.begin(), schema.verified_fields.end(), att.constraint) ==
        schema.verified_fields.end())
        schema.verified_fields.push_back(att.constraint);
    entry.attestations.push_back(att);
}

RegistryError RegistryCore::log_call(const CallEvent& event) {
    if (!entries_.count(event.tool_id)) return RegistryError::UnknownTool;
    if (calls_.count(event.event_id)) return RegistryError::None;  // idempotent ack

    append_event({{"type", "call"}, {"event", to_json(event)}});
    calls_.emplace(event.event_id, event);
    call_order_.push_back(event.event_id);
    return RegistryError::None;
}

RegistryCore::AaqsResult RegistryCore::aaqs_report(const std::string& tool_id,
                                                   std::int64_t window_begin,
                                                   std::int64_t window_end) const {
    AaqsResult result;
    auto it = entries_.find(tool_id);
    if (it == entries_.end()) {
        result.error = RegistryError::UnknownTool;
        return result;
    }
    long total = 0, selected = 0;
    double match_sum = 0.0;
    for (const auto& id : call_order_) {
        const CallEvent& event = calls_.at(id);
        if (event.tool_id != tool_id) continue;
        if (event.timestamp < window_begin || event.timestamp > window_end) continue;
        ++total;
        if (event.selected) ++selected;
        match_sum += capability_match_binary(it->second.normalized.selection,
                                             event.task_requirements);
    }
    if (total == 0) {
        result.error = RegistryError::EmptyWindow;
        return result;
    }
    double rate = static_cast<double>(selected) / static_cast<double>(total);
    double match = match_sum / static_cast<double>(total);
    result.record = aaqs(rate, match, tool_id);
    result.events = total;
    return result;
}

const RegistryEntry* RegistryCore::find(const std::string& tool_id) const {
    auto it = entries_.find(tool_id);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> RegistryCore::audit() const {
    std::vector<std::string> violations;
    for (const auto& id : order_) {
        std::string card = render_selection_text(entries_.at(id).normalized.selection);
        ToolDescription probe{id, id, card, {}, ""};
        if (classify_level(detect_features(probe, lexicon_)) != FramingLevel::L0)
            violations.push_back(id);
    }
    return violations;
}

json RegistryCore::state_snapshot() const {
    json entries = json::array();
    for (const auto& id : order_) {
        const RegistryEntry& e = entries_.at(id);
        json atts = json::array();
        for (const auto& a : e.attestations)
            atts.push_back({{"constraint", a.constraint},
                            {"value", a.value},
                            {"attester", a.attester},
                            {"time", a.time}});
        entries.push_back({{"tool_id", e.tool_id},
                           {"provider", e.provider_id},
                           {"time", e.registration_time},
                           {"normalized", to_json(e.normalized)},
                           {"attestations", atts}});
    }
    json calls = json::array();
    for (const auto& id : call_order_) calls.push_back(to_json(calls_.at(id)));
    return {{"schema_version", kSchemaVersion}, {"entries", entries}, {"calls", calls}};
}

void RegistryCore::apply_event(const json& event, bool record) {
    const std::string type = event.at("type").get<std::string>();
    if (type == "register") {
        ToolDescription desc = tool_description_from_json(event.at("tool"));
        NormalizeResult norm = normalize(desc, lexicon_);
        if (!norm.ok())
            throw std::runtime_error("replay: logged registration no longer normalizes: " +
                                     desc.id);
        RegistryEntry entry;
        entry.tool_id = desc.id;
        entry.provider_id = event.value("provider", "");
        entry.normalized = std::move(*norm.entry);
        entry.registration_time = event.value("time", std::int64_t{0});
        entries_.emplace(desc.id, std::move(entry));
        order_.push_back(desc.id);
    } else if (type == "attest") {
        Attestation att;
        att.constraint = event.at("constraint").get<std::string>();
        att.kind = event.value("kind", "quantitative") == std::string("categorical")
                       ? ConstraintKind::Categorical
                       : ConstraintKind::Quantitative;
        att.value = event.at("value").get<std::string>();
        att.unit = event.value("unit", "");
        att.attester = event.value("attester", "");
        att.time = event.value("time", std::int64_t{0});
        std::string tool_id = event.at("tool_id").get<std::string>();
        auto it = entries_.find(tool_id);
        if (it != entries_.end()) apply_attest(att, it->second);
    } else if (type == "call") {
        CallEvent ev = call_event_from_json(event.at("event"));
        if (!calls_.count(ev.event_id) && entries_.count(ev.tool_id)) {
            calls_.emplace(ev.event_id, ev);
            call_order_.push_back(ev.event_id);
        }
    } else {
        throw std::runtime_error("replay: unknown event type: " + type);
    }
    if (record) events_.push_back(event);
}

RegistryCore RegistryCore::replay(const std::vector<json>& events, FeatureLexicon lex) {
    RegistryCore core(std::move(lex));
    for (const auto& event : events) core.apply_event(event, /*record=*/true);
    return core;
}

RegistryCore RegistryCore::load(const std::string& store_path, FeatureLexicon lex) {
    std::vector<json> events;
    std::ifstream in(store_path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        events.push_back(json::parse(line));
    }
    RegistryCore core = replay(events, std::move(lex));
    core.store_path_ = store_path;
    return core;
}

}  // namespace regkit
