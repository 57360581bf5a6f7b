#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "chainform/session.hpp"

namespace chainform {

/// HTTP transport for SessionService.
///
///   POST /v1/{create_session,step,undo,get_state,score,export}  JSON in, JSON out
///   POST /v1/drag                      NDJSON stream of every frame, then the quiescent message
///   GET  /v1/sessions/{id}/frames      NDJSON broadcast of the latest session message,
///                                      at most one per `broadcast_interval`;
///                                      `?until_quiescent=1` ends after a quiescent message
///
/// Errors are `{v, error, message, field?}` with status 400 (404 for an
/// unknown session).
class HttpServer {
public:
    explicit HttpServer(SessionService& service,
                        std::chrono::microseconds broadcast_interval = std::chrono::microseconds(1000000 / 60));
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Port 0 picks a free port. Returns false when binding fails.
    bool bind(const std::string& host, int port);
    int port() const;

    /// Serves until stop(); blocks.
    void run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace chainform
