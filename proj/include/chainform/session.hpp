#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "chainform/error.hpp"
#include "chainform/scenario.hpp"
#include "chainform/simulation.hpp"

namespace chainform {

using Json = nlohmann::ordered_json;

inline constexpr int kProtocolVersion = 1;

/// Request the service refuses; becomes an error message `{v, error, message, field?}`.
class ProtocolError : public Error {
public:
    ProtocolError(std::string code, const std::string& message, std::string field = {})
        : Error(message), code_(std::move(code)), field_(std::move(field)) {}

    const std::string& code() const noexcept { return code_; }
    const std::string& field() const noexcept { return field_; }
    Json to_json() const;

private:
    std::string code_;
    std::string field_;
};

Json frame_json(const FrameRecord& f);

/// Latest published frame of a session with a monotone revision; readers block
/// until something newer than what they saw arrives.
class FrameHub {
public:
    void publish(std::uint64_t revision, Json message);

    /// Waits up to `timeout` for a revision above `seen`. Returns the newest
    /// message, coalescing everything published in between.
    std::optional<std::pair<std::uint64_t, Json>> wait_newer(std::uint64_t seen, std::chrono::milliseconds timeout);

    std::pair<std::uint64_t, Json> latest() const;

    void close();
    bool closed() const;

private:
    mutable std::mutex mutex_;
    std::condition_variable cv_;
    std::uint64_t revision_ = 0;
    Json latest_;
    bool closed_ = false;
};

struct DragCommand {
    std::string session_id;
    PointRef point;
    Point2 target;
    double step_um = 1.0;
};

/// Sessions over the shared Simulation path. Commands on one session run in
/// arrival order; distinct sessions run independently.
class SessionService {
public:
    using Emit = std::function<void(const Json&)>;

    explicit SessionService(std::filesystem::path scenario_dir = {}, std::size_t undo_depth = 64);
    ~SessionService();

    Json create_session(const Json& request);
    DragCommand parse_drag(const Json& request) const;
    /// Streams `{v, revision, frame}` per driven frame, then
    /// `{v, revision, quiescent: true, frame, metrics}`.
    void drag(const DragCommand& command, const Emit& emit);
    Json step(const Json& request);
    Json undo(const Json& request);
    Json get_state(const Json& request);
    Json score(const Json& request);
    Json export_csv(const Json& request);

    /// Dispatches `op` (create_session, drag, step, undo, get_state, score,
    /// export). Non-streaming commands emit exactly one message.
    void handle(const std::string& op, const Json& request, const Emit& emit);

    std::shared_ptr<FrameHub> hub(const std::string& session_id) const;

    /// Wakes every frame reader so servers can shut down.
    void close_all();

private:
    struct Session;

    std::shared_ptr<Session> find(const Json& request) const;
    std::string new_id();

    std::filesystem::path scenario_dir_;
    std::size_t undo_depth_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t id_counter_ = 0;
    std::uint64_t id_salt_;
};

}  // namespace chainform
