#include "chainform/server.hpp"

#include <atomic>
#include <thread>

#include <httplib.h>
#include <spdlog/spdlog.h>

namespace chainform {

namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kNdjson = "application/x-ndjson";

int status_for(const ProtocolError& e) { return e.code() == "unknown_session" ? 404 : 400; }

Json parse_body(const httplib::Request& req) {
    try {
        return Json::parse(req.body);
    } catch (const Json::parse_error& e) {
        throw ProtocolError("bad_request", std::string("request body is not JSON: ") + e.what());
    }
}

void send_error(httplib::Response& res, const ProtocolError& e) {
    res.status = status_for(e);
    res.set_content(e.to_json().dump(), kJson);
}

}  // namespace

struct HttpServer::Impl {
    SessionService& service;
    std::chrono::microseconds interval;
    httplib::Server server;
    int port = -1;
    std::atomic<bool> stopping{false};

    Impl(SessionService& s, std::chrono::microseconds i) : service(s), interval(i) { routes(); }

    void routes() {
        for (const std::string op : {"create_session", "step", "undo", "get_state", "score", "export"}) {
            server.Post("/v1/" + op, [this, op](const httplib::Request& req, httplib::Response& res) {
                try {
                    service.handle(op, parse_body(req), [&](const Json& msg) { res.set_content(msg.dump(), kJson); });
                } catch (const ProtocolError& e) {
                    send_error(res, e);
                } catch (const Error& e) {
                    send_error(res, ProtocolError("internal", e.what()));
                }
            });
        }

        server.Post("/v1/drag", [this](const httplib::Request& req, httplib::Response& res) {
            DragCommand cmd;
            try {
                cmd = service.parse_drag(parse_body(req));
            } catch (const ProtocolError& e) {
                return send_error(res, e);
            }
            res.set_chunked_content_provider(kNdjson, [this, cmd](std::size_t, httplib::DataSink& sink) {
                const auto write = [&](const Json& msg) {
                    const std::string line = msg.dump() + "\n";
                    sink.write(line.data(), line.size());
                };
                try {
                    service.drag(cmd, write);
                } catch (const ProtocolError& e) {
                    write(e.to_json());
                } catch (const Error& e) {
                    write(ProtocolError("internal", e.what()).to_json());
                }
                sink.done();
                return true;
            });
        });

        server.Get(R"(/v1/sessions/([0-9a-f]+)/frames)", [this](const httplib::Request& req, httplib::Response& res) {
            auto hub = service.hub(req.matches[1]);
            if (!hub) {
                return send_error(res, ProtocolError("unknown_session", "no such session", "session_id"));
            }
            const bool until_quiescent = req.get_param_value("until_quiescent") == "1";
            res.set_chunked_content_provider(kNdjson, [this, hub, until_quiescent](std::size_t,
                                                                                   httplib::DataSink& sink) {
                using clock = std::chrono::steady_clock;
                auto [seen, msg] = hub->latest();
                auto last_sent = clock::now();
                const auto send = [&](const Json& m) {
                    const std::string line = m.dump() + "\n";
                    last_sent = clock::now();
                    return sink.write(line.data(), line.size());
                };
                bool ok = send(msg);
                bool finished = until_quiescent && msg.value("quiescent", false);
                while (ok && !finished && !stopping && !hub->closed()) {
                    if (!hub->wait_newer(seen, std::chrono::milliseconds(100))) {
                        continue;
                    }
                    const auto due = last_sent + interval;
                    if (clock::now() < due) {
                        std::this_thread::sleep_until(due);
                    }
                    // Coalesce: whatever is newest once the interval has passed.
                    std::tie(seen, msg) = hub->latest();
                    ok = send(msg);
                    finished = until_quiescent && msg.value("quiescent", false);
                }
                sink.done();
                return true;
            });
        });
    }
};

HttpServer::HttpServer(SessionService& service, std::chrono::microseconds broadcast_interval)
    : impl_(std::make_unique<Impl>(service, broadcast_interval)) {}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::bind(const std::string& host, int port) {
    if (port == 0) {
        impl_->port = impl_->server.bind_to_any_port(host);
    } else {
        impl_->port = impl_->server.bind_to_port(host, port) ? port : -1;
    }
    return impl_->port > 0;
}

int HttpServer::port() const { return impl_->port; }

void HttpServer::run() {
    spdlog::info("serving session protocol on port {}", impl_->port);
    impl_->server.listen_after_bind();
}

void HttpServer::stop() {
    impl_->stopping = true;
    impl_->service.close_all();
    impl_->server.stop();
}

}  // namespace chainform
