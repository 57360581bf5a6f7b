#include "chainform/session.hpp"

#include <random>
#include <sstream>
#include <iomanip>

#include <spdlog/spdlog.h>

#include "chainform/error.hpp"
#include "chainform/metrics.hpp"
#include "chainform/run.hpp"
#include "chainform/trajectory.hpp"

namespace chainform {

struct SessionService::Session {
    std::mutex mutex;
    Scenario scenario;
    Simulation sim;
    std::vector<FrameRecord> frames;
    struct Snapshot {
        Simulation::State state;
        std::size_t frame_count;
    };
    std::deque<Snapshot> history;
    std::uint64_t revision = 0;
    std::shared_ptr<FrameHub> hub = std::make_shared<FrameHub>();

    Session(Scenario s, Simulation simulation) : scenario(std::move(s)), sim(std::move(simulation)) {}
};

namespace {

Json envelope(std::uint64_t revision) {
    Json j;
    j["v"] = kProtocolVersion;
    j["revision"] = revision;
    return j;
}

const Json& field(const Json& request, const std::string& name) {
    const auto it = request.find(name);
    if (it == request.end()) {
        throw ProtocolError("bad_request", "missing field '" + name + "'", name);
    }
    return *it;
}

double number(const Json& request, const std::string& name) {
    const auto& v = field(request, name);
    if (!v.is_number()) {
        throw ProtocolError("bad_request", "field '" + name + "' must be a number", name);
    }
    return v.get<double>();
}

std::size_t index_field(const Json& request, const std::string& name, std::size_t fallback) {
    const auto it = request.find(name);
    if (it == request.end()) {
        return fallback;
    }
    if (!it->is_number_unsigned()) {
        throw ProtocolError("bad_request", "field '" + name + "' must be a non-negative integer", name);
    }
    return it->get<std::size_t>();
}

void check_version(const Json& request) {
    if (!request.is_object()) {
        throw ProtocolError("bad_request", "request must be a JSON object");
    }
    const auto it = request.find("v");
    if (it != request.end() && !(it->is_number_integer() && it->get<int>() == kProtocolVersion)) {
        throw ProtocolError("unsupported_version", "protocol version must be 1", "v");
    }
}

Point2 point_json_value(const Json& j, const std::string& name) {
    if (j.is_object() && j.contains("x") && j.contains("y") && j["x"].is_number() && j["y"].is_number()) {
        return {j["x"].get<double>(), j["y"].get<double>()};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ProtocolError("bad_request", "field '" + name + "' must be {x, y} or [x, y]", name);
}

Json episode_metrics(const Scenario& sc, const std::vector<FrameRecord>& frames, std::size_t before, PointRef driver) {
    const double l = sc.solver.rest_length_um;
    const double theta = sc.solver.threshold;
    std::vector<ChainSnapshot> snaps;
    for (std::size_t i = before; i < frames.size(); ++i) {
        snaps.push_back(frames[i].chains.at(driver.chain));
    }
    const auto seg = segment_active_passive(snaps, driver.point, theta, l);
    const auto audit = length_audit(frames.back().chains.at(driver.chain).points, l);
    Json m;
    m["active_count"] = seg.active_point_ids.size();
    m["threshold_point_id"] = seg.threshold_point_id ? Json(*seg.threshold_point_id) : Json();
    m["max_elongation_um"] = audit.max_elongation;
    m["min_separation_um"] = audit.min_separation;
    m["total_length_um"] = audit.total_length;
    auto shapes = Json::array();
    for (const auto& t : sc.outputs.targets) {
        const auto e = shape_error(frames.back().chains.at(t.chain).points, t.polyline, l);
        shapes.push_back({{"chain", t.chain}, {"rms_um", e.rms}, {"hausdorff_um", e.hausdorff}});
    }
    m["shape_errors"] = std::move(shapes);
    return m;
}

}  // namespace

Json ProtocolError::to_json() const {
    Json j;
    j["v"] = kProtocolVersion;
    j["error"] = code_;
    j["message"] = what();
    if (!field_.empty()) j["field"] = field_;
    return j;
}

Json frame_json(const FrameRecord& f) {
    Json j;
    j["frame_index"] = f.frame_index;
    j["quiescent"] = f.quiescent;
    j["driven"] = f.driven ? Json{{"chain", f.driven->chain}, {"point_id", f.driven->point}} : Json();
    auto chains = Json::array();
    for (const auto& c : f.chains) {
        auto pts = Json::array();
        for (const auto& p : c.points) pts.push_back(Json::array({p.x, p.y}));
        chains.push_back({{"points", std::move(pts)}, {"elongation", c.elongation}});
    }
    j["chains"] = std::move(chains);
    return j;
}

void FrameHub::publish(std::uint64_t revision, Json message) {
    {
        std::lock_guard lock(mutex_);
        revision_ = revision;
        latest_ = std::move(message);
    }
    cv_.notify_all();
}

std::optional<std::pair<std::uint64_t, Json>> FrameHub::wait_newer(std::uint64_t seen,
                                                                   std::chrono::milliseconds timeout) {
    std::unique_lock lock(mutex_);
    if (!cv_.wait_for(lock, timeout, [&] { return closed_ || revision_ > seen; }) || revision_ <= seen) {
        return std::nullopt;
    }
    return std::make_pair(revision_, latest_);
}

std::pair<std::uint64_t, Json> FrameHub::latest() const {
    std::lock_guard lock(mutex_);
    return {revision_, latest_};
}

void FrameHub::close() {
    {
        std::lock_guard lock(mutex_);
        closed_ = true;
    }
    cv_.notify_all();
}

bool FrameHub::closed() const {
    std::lock_guard lock(mutex_);
    return closed_;
}

SessionService::SessionService(std::filesystem::path scenario_dir, std::size_t undo_depth)
    : scenario_dir_(std::move(scenario_dir)), undo_depth_(undo_depth), id_salt_(std::random_device{}()) {}

SessionService::~SessionService() { close_all(); }

std::string SessionService::new_id() {
    std::mt19937_64 rng(id_salt_ ^ (++id_counter_ * 0x9E3779B97F4A7C15ULL));
    std::ostringstream out;
    out << std::hex << std::setfill('0') << std::setw(16) << rng() << std::setw(16) << rng();
    return out.str();
}

std::shared_ptr<SessionService::Session> SessionService::find(const Json& request) const {
    check_version(request);
    const auto& id = field(request, "session_id");
    if (!id.is_string()) {
        throw ProtocolError("bad_request", "field 'session_id' must be a string", "session_id");
    }
    std::lock_guard lock(mutex_);
    const auto it = sessions_.find(id.get<std::string>());
    if (it == sessions_.end()) {
        throw ProtocolError("unknown_session", "no session " + id.get<std::string>(), "session_id");
    }
    return it->second;
}

std::shared_ptr<FrameHub> SessionService::hub(const std::string& session_id) const {
    std::lock_guard lock(mutex_);
    const auto it = sessions_.find(session_id);
    return it == sessions_.end() ? nullptr : it->second->hub;
}

void SessionService::close_all() {
    std::lock_guard lock(mutex_);
    for (auto& [id, s] : sessions_) s->hub->close();
}

Json SessionService::create_session(const Json& request) {
    check_version(request);
    const auto& spec = field(request, "scenario");
    Scenario sc;
    try {
        if (spec.is_string()) {
            const std::filesystem::path name = spec.get<std::string>();
            if (scenario_dir_.empty() || name.has_parent_path() || name.is_absolute() || name.empty()) {
                throw ProtocolError("invalid_scenario", "scenario names must be bare file names in the scenario directory",
                                    "scenario");
            }
            sc = load_scenario(scenario_dir_ / name);
        } else if (spec.is_object()) {
            sc = parse_scenario(spec.dump());
        } else {
            throw ProtocolError("bad_request", "field 'scenario' must be a file name or a scenario object", "scenario");
        }
    } catch (const ScenarioError& e) {
        const std::string f = e.field().empty() ? std::string("scenario") : "scenario." + e.field();
        throw ProtocolError("invalid_scenario", e.what(), f);
    }

    auto session = std::make_shared<Session>(sc, Simulation(build_chains(sc), sc.material, sc.solver));
    session->frames.push_back(session->sim.emit_current(true));
    const std::string id = new_id();

    Json out = envelope(session->revision);
    out["session_id"] = id;
    out["state"] = frame_json(session->frames.back());
    session->hub->publish(session->revision, out);
    {
        std::lock_guard lock(mutex_);
        sessions_.emplace(id, session);
    }
    spdlog::info("session {} created from scenario {}", id, sc.name);
    return out;
}

DragCommand SessionService::parse_drag(const Json& request) const {
    check_version(request);
    DragCommand c;
    const auto session = find(request);
    c.session_id = request["session_id"].get<std::string>();
    c.point.chain = index_field(request, "chain", 0);
    c.point.point = index_field(request, "point_id", std::numeric_limits<std::size_t>::max());
    if (c.point.point == std::numeric_limits<std::size_t>::max()) {
        throw ProtocolError("bad_request", "missing field 'point_id'", "point_id");
    }
    c.target = point_json_value(field(request, "target"), "target");
    c.step_um = number(request, "step_um");
    if (!is_finite(c.target)) {
        throw ProtocolError("bad_request", "target must be finite", "target");
    }
    if (!(c.step_um > 0.0) || !std::isfinite(c.step_um)) {
        throw ProtocolError("bad_request", "step_um must be a positive number", "step_um");
    }
    std::lock_guard lock(session->mutex);
    const auto& chains = session->sim.chains();
    if (c.point.chain >= chains.size()) {
        throw ProtocolError("bad_request", "chain does not exist", "chain");
    }
    if (c.point.point >= chains[c.point.chain].point_count()) {
        throw ProtocolError("bad_request", "point does not exist", "point_id");
    }
    return c;
}

void SessionService::drag(const DragCommand& command, const Emit& emit) {
    Json req;
    req["session_id"] = command.session_id;
    const auto session = find(req);
    std::lock_guard lock(session->mutex);

    const Session::Snapshot before{session->sim.state(), session->frames.size()};
    const std::size_t before_frame = session->frames.size() - 1;
    const WaypointMove move{command.point, {command.target}, command.step_um};
    try {
        session->sim.execute(move, true, [&](const FrameRecord& f) {
            session->frames.push_back(f);
            ++session->revision;
            Json msg = envelope(session->revision);
            if (f.quiescent) {
                msg["quiescent"] = true;
                msg["frame"] = frame_json(f);
                msg["metrics"] = episode_metrics(session->scenario, session->frames, before_frame, command.point);
            } else {
                msg["frame"] = frame_json(f);
            }
            session->hub->publish(session->revision, msg);
            emit(msg);
        });
    } catch (const NonConvergenceError& e) {
        session->sim.restore(before.state);
        session->frames.resize(before.frame_count);
        ++session->revision;
        Json state = envelope(session->revision);
        state["frame"] = frame_json(session->frames.back());
        session->hub->publish(session->revision, state);
        throw ProtocolError("non_convergence", e.what());
    }
    session->history.push_back(before);
    while (session->history.size() > undo_depth_) session->history.pop_front();
}

Json SessionService::step(const Json& request) {
    const auto session = find(request);
    std::lock_guard lock(session->mutex);
    const Session::Snapshot before{session->sim.state(), session->frames.size()};
    session->frames.push_back(session->sim.idle());
    session->history.push_back(before);
    while (session->history.size() > undo_depth_) session->history.pop_front();
    ++session->revision;
    Json out = envelope(session->revision);
    out["frame"] = frame_json(session->frames.back());
    session->hub->publish(session->revision, out);
    return out;
}

Json SessionService::undo(const Json& request) {
    const auto session = find(request);
    std::lock_guard lock(session->mutex);
    if (session->history.empty()) {
        throw ProtocolError("nothing_to_undo", "history is empty");
    }
    const auto snap = std::move(session->history.back());
    session->history.pop_back();
    session->sim.restore(snap.state);
    session->frames.resize(snap.frame_count);
    ++session->revision;
    Json out = envelope(session->revision);
    out["state"] = frame_json(session->frames.back());
    out["undo_depth"] = session->history.size();
    session->hub->publish(session->revision, out);
    return out;
}

Json SessionService::get_state(const Json& request) {
    const auto session = find(request);
    std::lock_guard lock(session->mutex);
    Json out = envelope(session->revision);
    out["state"] = frame_json(session->frames.back());
    return out;
}

Json SessionService::score(const Json& request) {
    const auto session = find(request);
    const auto& target_json = field(request, "target_polyline");
    if (!target_json.is_array() || target_json.empty()) {
        throw ProtocolError("bad_request", "target_polyline must be a non-empty array of points", "target_polyline");
    }
    Polyline target;
    for (const auto& p : target_json) target.push_back(point_json_value(p, "target_polyline"));
    std::lock_guard lock(session->mutex);
    const std::size_t chain = index_field(request, "chain", 0);
    if (chain >= session->sim.chains().size()) {
        throw ProtocolError("bad_request", "chain does not exist", "chain");
    }
    const auto e = shape_error(session->sim.chains()[chain].points, target, session->scenario.solver.rest_length_um);
    Json out = envelope(session->revision);
    out["rms"] = e.rms;
    out["hausdorff"] = e.hausdorff;
    return out;
}

Json SessionService::export_csv(const Json& request) {
    const auto session = find(request);
    std::lock_guard lock(session->mutex);
    Json out = envelope(session->revision);
    out["csv"] = trajectory_csv(session->frames);
    return out;
}

void SessionService::handle(const std::string& op, const Json& request, const Emit& emit) {
    if (op == "create_session") return emit(create_session(request));
    if (op == "drag") return drag(parse_drag(request), emit);
    if (op == "step") return emit(step(request));
    if (op == "undo") return emit(undo(request));
    if (op == "get_state") return emit(get_state(request));
    if (op == "score") return emit(score(request));
    if (op == "export") return emit(export_csv(request));
    throw ProtocolError("unknown_command", "unknown command '" + op + "'");
}

}  // namespace chainform
