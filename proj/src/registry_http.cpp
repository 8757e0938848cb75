#include "regkit/registry_http.hpp"

#include <mutex>

#include <httplib.h>

namespace regkit {

using nlohmann::json;

namespace {

int status_for(RegistryError e) {
    switch (e) {
        case RegistryError::None: return 200;
        case RegistryError::DuplicateToolId: return 409;
        case RegistryError::NormalizationRejected: return 422;
        case RegistryError::UnknownTool: return 404;
        case RegistryError::PermissionDenied: return 403;
        case RegistryError::NotSelectedYet: return 403;
        case RegistryError::EmptyWindow: return 404;
    }
    return 500;
}

void reply(httplib::Response& res, const json& body, int status = 200) {
    json out = body;
    out["schema_version"] = kSchemaVersion;
    res.status = status;
    res.set_content(out.dump(), "application/json");
}

void reply_error(httplib::Response& res, RegistryError e, const std::string& detail = "") {
    reply(res, {{"error", to_string(e)}, {"detail", detail}}, status_for(e));
}

}  // namespace

RegistryHttpServer::RegistryHttpServer(RegistryCore core, std::string operator_token)
    : core_(std::move(core)),
      operator_token_(std::move(operator_token)),
      server_(std::make_unique<httplib::Server>()) {
    install_routes();
}

RegistryHttpServer::~RegistryHttpServer() { stop(); }

void RegistryHttpServer::install_routes() {
    // Writes are serialized through one appender; reads take the same lock so
    // every response reflects the last acknowledged write.

    server_->Post("/register", [this](const httplib::Request& req, httplib::Response& res) {
        std::scoped_lock lock(mu_);
        json body = json::parse(req.body, nullptr, false);
        if (body.is_discarded() || !body.contains("tool")) {
            reply(res, {{"error", "malformed request"}}, 400);
            return;
        }
        ToolDescription desc = tool_description_from_json(body.at("tool"));
        auto result = core_.register_tool(desc, body.value("provider", ""),
                                          body.value("time", std::int64_t{0}));
        if (!result.ok()) {
            reply_error(res, result.error, result.diagnosis);
            return;
        }
        reply(res, {{"tool_id", desc.id},
                    {"normalized", to_json(result.entry->normalized)}},
              201);
    });

    server_->Get("/tools", [this](const httplib::Request& req, httplib::Response& res) {
        std::scoped_lock lock(mu_);
        std::string view = req.get_param_value("view");
        std::string role = req.get_header_value("X-Role");
        if (view.empty()) view = "selection";

        if (view == "selection") {
            json cards = json::array();
            for (const auto& [id, card] : core_.selection_view())
                cards.push_back({{"tool_id", id}, {"card", card}});
            reply(res, {{"view", "selection"}, {"tools", cards}});
            return;
        }
        if (view == "marketing") {
            if (role == "agent") {
                reply_error(res, RegistryError::PermissionDenied,
                            "agents may request the selection view only");
                return;
            }
            std::string tool_id = req.get_param_value("tool_id");
            std::string session = req.get_header_value("X-Session");
            auto result = core_.marketing_view(session, tool_id);
            if (!result.ok()) {
                reply_error(res, result.error);
                return;
            }
            reply(res, {{"view", "marketing"}, {"tool_id", tool_id}, {"body", result.body}});
            return;
        }
        reply(res, {{"error", "unknown view: " + view}}, 400);
    });

    server_->Post("/calls", [this](const httplib::Request& req, httplib::Response& res) {
        std::scoped_lock lock(mu_);
        json body = json::parse(req.body, nullptr, false);
        if (body.is_discarded()) {
            reply(res, {{"error", "malformed request"}}, 400);
            return;
        }
        CallEvent event = call_event_from_json(body);
        RegistryError err = core_.log_call(event);
        if (err != RegistryError::None) {
            reply_error(res, err);
            return;
        }
        reply(res, {{"ack", event.event_id}});
    });

    server_->Get(R"(/tools/([^/]+)/aaqs)",
                 [this](const httplib::Request& req, httplib::Response& res) {
                     std::scoped_lock lock(mu_);
                     auto result = core_.aaqs_report(req.matches[1]);
                     if (!result.ok()) {
                         reply_error(res, result.error);
                         return;
                     }
                     reply(res, {{"tool_id", result.record.tool_id},
                                 {"selection_rate", result.record.selection_rate},
                                 {"capability_match", result.record.capability_match},
                                 {"aaqs", result.record.aaqs},
                                 {"coasting", result.record.coasting},
                                 {"events", result.events}});
                 });

    server_->Post("/admin/attest", [this](const httplib::Request& req, httplib::Response& res) {
        std::scoped_lock lock(mu_);
        if (req.get_header_value("X-Operator-Token") != operator_token_) {
            reply_error(res, RegistryError::PermissionDenied, "bad operator token");
            return;
        }
        json body = json::parse(req.body, nullptr, false);
        if (body.is_discarded()) {
            reply(res, {{"error", "malformed request"}}, 400);
            return;
        }
        Attestation att;
        att.constraint = body.at("constraint").get<std::string>();
        att.kind = body.value("kind", "quantitative") == std::string("categorical")
                       ? ConstraintKind::Categorical
                       : ConstraintKind::Quantitative;
        att.value = body.at("value").get<std::string>();
        att.unit = body.value("unit", "");
        att.attester = body.value("attester", "operator");
        att.time = body.value("time", std::int64_t{0});
        RegistryError err = core_.attest(att, body.at("tool_id").get<std::string>());
        if (err != RegistryError::None) {
            reply_error(res, err);
            return;
        }
        reply(res, {{"attested", att.constraint}});
    });
}

bool RegistryHttpServer::listen(const std::string& host, int port) {
    return server_->listen(host, port);
}

bool RegistryHttpServer::bind_to_port(const std::string& host, int port) {
    return server_->bind_to_port(host, port);
}

bool RegistryHttpServer::listen_after_bind() { return server_->listen_after_bind(); }

void RegistryHttpServer::stop() {
    if (server_) server_->stop();
}

}  // namespace regkit
