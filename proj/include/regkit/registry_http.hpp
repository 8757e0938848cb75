#pragma once

#include <memory>
#include <mutex>
#include <string>

#include "regkit/registry_core.hpp"

namespace httplib {
class Server;
}

namespace regkit {

// HTTP facade over RegistryCore. Endpoints (JSON bodies, schema_version in
// every document):
//   POST /register                {provider, tool}
//   GET  /tools?view=selection    role via X-Role header (agent|user),
//        /tools?view=marketing&tool_id=..  session via X-Session
//   POST /calls                   call event
//   GET  /tools/<id>/aaqs
//   POST /admin/attest            requires X-Operator-Token
class RegistryHttpServer {
public:
    explicit RegistryHttpServer(RegistryCore core, std::string operator_token = "operator");
    ~RegistryHttpServer();

    RegistryHttpServer(RegistryHttpServer&&) = delete;

    // Blocks until stop(). Returns false if the port cannot be bound.
    bool listen(const std::string& host, int port);
    bool bind_to_port(const std::string& host, int port);
    bool listen_after_bind();
    void stop();

    RegistryCore& core() { return core_; }

private:
    void install_routes();

    RegistryCore core_;
    std::mutex mu_;
    std::string operator_token_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace regkit
