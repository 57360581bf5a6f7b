#include "chainform/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "chainform/error.hpp"

namespace chainform {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

int line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Best-effort source line for a dotted path such as "schedule.moves[1].step_um":
// follows the key names through the text in order.
int locate(std::string_view text, const std::string& path) {
    if (text.empty() || path.empty()) {
        return 0;
    }
    std::size_t pos = 0;
    std::size_t found = std::string_view::npos;
    std::size_t i = 0;
    while (i < path.size()) {
        if (path[i] == '.') {
            ++i;
            continue;
        }
        if (path[i] == '[') {
            i = path.find(']', i);
            i = i == std::string::npos ? path.size() : i + 1;
            continue;
        }
        const std::size_t end = path.find_first_of(".[", i);
        const std::string key = "\"" + path.substr(i, end - i) + "\"";
        const std::size_t at = text.find(key, pos);
        if (at == std::string_view::npos) {
            break;
        }
        found = at;
        pos = at + key.size();
        i = end == std::string::npos ? path.size() : end;
    }
    return found == std::string_view::npos ? 0 : line_of_offset(text, found);
}

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    [[noreturn]] void fail(const std::string& path, const std::string& message) const {
        throw ScenarioError(path + ": " + message, path, locate(text_, path));
    }

    void object(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) const {
        if (!j.is_object()) {
            fail(path.empty() ? std::string("<root>") : path, "expected an object");
        }
        for (const auto& item : j.items()) {
            if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
                fail(join(path, item.key()), "unknown field");
            }
        }
    }

    const json* find(const json& j, const std::string& key) const {
        const auto it = j.find(key);
        return it == j.end() ? nullptr : &*it;
    }

    const json& required(const json& j, const std::string& path, const std::string& key) const {
        const json* v = find(j, key);
        if (v == nullptr) {
            fail(join(path, key), "missing required field");
        }
        return *v;
    }

    double number(const json& j, const std::string& path) const {
        if (!j.is_number()) {
            fail(path, "expected a number");
        }
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            fail(path, "expected a finite number");
        }
        return v;
    }

    std::int64_t integer(const json& j, const std::string& path) const {
        if (!j.is_number_integer()) {
            fail(path, "expected an integer");
        }
        return j.get<std::int64_t>();
    }

    std::size_t index(const json& j, const std::string& path) const {
        if (!j.is_number_unsigned()) {
            fail(path, "expected a non-negative integer");
        }
        return j.get<std::size_t>();
    }

    bool boolean(const json& j, const std::string& path) const {
        if (!j.is_boolean()) {
            fail(path, "expected true or false");
        }
        return j.get<bool>();
    }

    std::string string(const json& j, const std::string& path) const {
        if (!j.is_string()) {
            fail(path, "expected a string");
        }
        return j.get<std::string>();
    }

    const json& array(const json& j, const std::string& path) const {
        if (!j.is_array()) {
            fail(path, "expected an array");
        }
        return j;
    }

    Point2 point(const json& j, const std::string& path) const {
        if (!j.is_array() || j.size() != 2) {
            fail(path, "expected a point [x, y]");
        }
        return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
    }

    Polyline polyline(const json& j, const std::string& path) const {
        Polyline out;
        for (std::size_t i = 0; i < array(j, path).size(); ++i) {
            out.push_back(point(j[i], at(path, i)));
        }
        return out;
    }

    static std::string join(const std::string& path, std::string_view key) {
        return path.empty() ? std::string(key) : path + "." + std::string(key);
    }

    static std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

private:
    std::string_view text_;
};

MaterialParams read_material(const Reader& r, const json& j) {
    const std::string p = "material";
    r.object(j, p,
             {"youngs_modulus_pa", "poisson_ratio", "explicit_k_pa", "cross_section_area_um2", "density_kg_m3"});
    MaterialParams m;
    if (const auto* v = r.find(j, "youngs_modulus_pa")) m.youngs_modulus_pa = r.number(*v, p + ".youngs_modulus_pa");
    if (const auto* v = r.find(j, "poisson_ratio")) m.poisson_ratio = r.number(*v, p + ".poisson_ratio");
    if (const auto* v = r.find(j, "explicit_k_pa")) m.explicit_k_pa = r.number(*v, p + ".explicit_k_pa");
    if (const auto* v = r.find(j, "cross_section_area_um2"))
        m.cross_section_area_um2 = r.number(*v, p + ".cross_section_area_um2");
    if (const auto* v = r.find(j, "density_kg_m3")) m.density_kg_m3 = r.number(*v, p + ".density_kg_m3");
    return m;
}

SolverParams read_solver(const Reader& r, const json& j) {
    const std::string p = "solver";
    r.object(j, p, {"dt", "substeps", "rest_length_um", "threshold", "max_sweeps", "clamp_fraction"});
    SolverParams s;
    if (const auto* v = r.find(j, "dt")) s.dt = r.number(*v, p + ".dt");
    if (const auto* v = r.find(j, "substeps")) {
        const auto n = r.integer(*v, p + ".substeps");
        if (n < 1 || n > 1000000) r.fail(p + ".substeps", "must lie in [1, 1000000]");
        s.substeps = static_cast<int>(n);
    }
    if (const auto* v = r.find(j, "rest_length_um")) s.rest_length_um = r.number(*v, p + ".rest_length_um");
    if (const auto* v = r.find(j, "threshold")) s.threshold = r.number(*v, p + ".threshold");
    if (const auto* v = r.find(j, "max_sweeps")) s.max_sweeps = r.integer(*v, p + ".max_sweeps");
    if (const auto* v = r.find(j, "clamp_fraction")) s.clamp_fraction = r.number(*v, p + ".clamp_fraction");
    return s;
}

void read_schedule(const Reader& r, const json& j, Scenario& s) {
    const std::string p = "schedule";
    r.object(j, p, {"settle_between", "moves"});
    if (const auto* v = r.find(j, "settle_between")) s.settle_between = r.boolean(*v, p + ".settle_between");
    const auto& moves = r.array(r.required(j, p, "moves"), p + ".moves");
    for (std::size_t i = 0; i < moves.size(); ++i) {
        const std::string mp = Reader::at(p + ".moves", i);
        r.object(moves[i], mp, {"chain", "point_id", "pick", "waypoints", "step_um"});
        MoveSpec m;
        if (const auto* v = r.find(moves[i], "chain")) m.chain = r.index(*v, mp + ".chain");
        if (const auto* v = r.find(moves[i], "point_id")) m.point_id = r.index(*v, mp + ".point_id");
        if (const auto* v = r.find(moves[i], "pick")) m.pick = r.point(*v, mp + ".pick");
        m.waypoints = r.polyline(r.required(moves[i], mp, "waypoints"), mp + ".waypoints");
        if (const auto* v = r.find(moves[i], "step_um")) m.step_um = r.number(*v, mp + ".step_um");
        s.moves.push_back(std::move(m));
    }
}

void read_outputs(const Reader& r, const json& j, Scenario& s) {
    const std::string p = "outputs";
    r.object(j, p, {"csv", "svg", "metrics", "targets", "wave_points"});
    auto& o = s.outputs;
    if (const auto* v = r.find(j, "csv")) o.csv = r.boolean(*v, p + ".csv");
    if (const auto* v = r.find(j, "svg")) o.svg = r.boolean(*v, p + ".svg");
    if (const auto* v = r.find(j, "metrics")) o.metrics = r.boolean(*v, p + ".metrics");
    if (const auto* v = r.find(j, "targets")) {
        r.array(*v, p + ".targets");
        for (std::size_t i = 0; i < v->size(); ++i) {
            const std::string tp = Reader::at(p + ".targets", i);
            const auto& t = (*v)[i];
            r.object(t, tp, {"chain", "polyline"});
            TargetSpec spec;
            if (const auto* c = r.find(t, "chain")) spec.chain = r.index(*c, tp + ".chain");
            spec.polyline = r.polyline(r.required(t, tp, "polyline"), tp + ".polyline");
            o.targets.push_back(std::move(spec));
        }
    }
    if (const auto* v = r.find(j, "wave_points")) {
        r.array(*v, p + ".wave_points");
        for (std::size_t i = 0; i < v->size(); ++i) {
            const std::string wp = Reader::at(p + ".wave_points", i);
            const auto& w = (*v)[i];
            r.object(w, wp, {"label", "chain", "point_id"});
            WavePointSpec spec;
            spec.label = r.string(r.required(w, wp, "label"), wp + ".label");
            if (const auto* c = r.find(w, "chain")) spec.chain = r.index(*c, wp + ".chain");
            spec.point_id = r.index(r.required(w, wp, "point_id"), wp + ".point_id");
            o.wave_points.push_back(std::move(spec));
        }
    }
}

SweepSpec read_sweep(const Reader& r, const json& j) {
    const std::string p = "sweep";
    r.object(j, p, {"param", "values"});
    SweepSpec s;
    s.param = r.string(r.required(j, p, "param"), p + ".param");
    const auto& values = r.array(r.required(j, p, "values"), p + ".values");
    for (std::size_t i = 0; i < values.size(); ++i) {
        s.values.push_back(r.number(values[i], Reader::at(p + ".values", i)));
    }
    return s;
}

// Range and cross-reference checks shared by parsing and parameter overrides.
void check(const Reader& r, const Scenario& s) {
    if (s.name.empty()) r.fail("name", "must not be empty");

    const auto& m = s.material;
    if (!(m.youngs_modulus_pa > 0.0)) r.fail("material.youngs_modulus_pa", "must be > 0");
    if (!(m.poisson_ratio > -1.0 && m.poisson_ratio <= 0.5)) r.fail("material.poisson_ratio", "must lie in (-1, 0.5]");
    if (m.explicit_k_pa && !(*m.explicit_k_pa > 0.0)) r.fail("material.explicit_k_pa", "must be > 0");
    if (!(m.cross_section_area_um2 > 0.0)) r.fail("material.cross_section_area_um2", "must be > 0");
    if (!(m.density_kg_m3 > 0.0)) r.fail("material.density_kg_m3", "must be > 0");

    const auto& sv = s.solver;
    if (!(sv.dt > 0.0)) r.fail("solver.dt", "must be > 0");
    if (!(sv.rest_length_um > 0.0)) r.fail("solver.rest_length_um", "must be > 0");
    if (!(sv.threshold > 0.0 && sv.threshold < 1.0)) r.fail("solver.threshold", "must lie in (0, 1)");
    if (sv.max_sweeps < 1) r.fail("solver.max_sweeps", "must be >= 1");
    if (!(sv.clamp_fraction > 0.0 && sv.clamp_fraction <= 1.0)) r.fail("solver.clamp_fraction", "must lie in (0, 1]");
    try {
        compliance_rate(m, sv.rest_length_um, sv);
    } catch (const Error& e) {
        r.fail("material", e.what());
    }

    if (s.geometry.empty()) r.fail("geometry", "at least one polyline is required");
    std::vector<std::size_t> counts;
    for (std::size_t i = 0; i < s.geometry.size(); ++i) {
        try {
            counts.push_back(discretize_polyline(s.geometry[i], sv.rest_length_um).point_count());
        } catch (const Error& e) {
            r.fail(Reader::at("geometry", i) + ".polyline", e.what());
        }
    }
    const auto chain_ok = [&](std::size_t c, const std::string& path) {
        if (c >= counts.size()) r.fail(path, "chain " + std::to_string(c) + " does not exist");
    };

    for (std::size_t i = 0; i < s.moves.size(); ++i) {
        const std::string mp = Reader::at("schedule.moves", i);
        const auto& mv = s.moves[i];
        chain_ok(mv.chain, mp + ".chain");
        if (mv.point_id.has_value() == mv.pick.has_value()) r.fail(mp, "exactly one of point_id and pick is required");
        if (mv.point_id && *mv.point_id >= counts[mv.chain]) {
            r.fail(mp + ".point_id", "chain " + std::to_string(mv.chain) + " has " + std::to_string(counts[mv.chain]) +
                                         " points");
        }
        if (mv.waypoints.empty()) r.fail(mp + ".waypoints", "at least one waypoint is required");
        if (!(mv.step_um > 0.0)) r.fail(mp + ".step_um", "must be > 0");
    }
    for (std::size_t i = 0; i < s.outputs.targets.size(); ++i) {
        const std::string tp = Reader::at("outputs.targets", i);
        chain_ok(s.outputs.targets[i].chain, tp + ".chain");
        if (s.outputs.targets[i].polyline.size() < 2) r.fail(tp + ".polyline", "at least two vertices are required");
    }
    for (std::size_t i = 0; i < s.outputs.wave_points.size(); ++i) {
        const std::string wp = Reader::at("outputs.wave_points", i);
        const auto& w = s.outputs.wave_points[i];
        chain_ok(w.chain, wp + ".chain");
        if (w.point_id >= counts[w.chain]) r.fail(wp + ".point_id", "point does not exist");
    }
    if (s.sweep) {
        const auto& p = s.sweep->param;
        if (p != "k" && p != "l" && p != "theta") r.fail("sweep.param", "must be one of k, l, theta");
        if (s.sweep->values.empty()) r.fail("sweep.values", "at least one value is required");
    }
}

Scenario parse_with(const Reader& r, const json& root) {
    r.object(root, "",
             {"schema_version", "name", "comment", "geometry", "material", "solver", "schedule", "outputs", "sweep"});
    const auto version = r.integer(r.required(root, "", "schema_version"), "schema_version");
    if (version != kScenarioSchemaVersion) {
        r.fail("schema_version", "unsupported version " + std::to_string(version));
    }
    Scenario s;
    s.name = r.string(r.required(root, "", "name"), "name");
    if (const auto* v = r.find(root, "comment")) s.comment = r.string(*v, "comment");
    const auto& geometry = r.array(r.required(root, "", "geometry"), "geometry");
    for (std::size_t i = 0; i < geometry.size(); ++i) {
        const std::string gp = Reader::at("geometry", i);
        r.object(geometry[i], gp, {"polyline"});
        s.geometry.push_back(r.polyline(r.required(geometry[i], gp, "polyline"), gp + ".polyline"));
    }
    if (const auto* v = r.find(root, "material")) s.material = read_material(r, *v);
    if (const auto* v = r.find(root, "solver")) s.solver = read_solver(r, *v);
    read_schedule(r, r.required(root, "", "schedule"), s);
    if (const auto* v = r.find(root, "outputs")) read_outputs(r, *v, s);
    if (const auto* v = r.find(root, "sweep")) s.sweep = read_sweep(r, *v);
    check(r, s);
    if (s.sweep) {
        for (std::size_t i = 0; i < s.sweep->values.size(); ++i) {
            try {
                with_parameter(s, s.sweep->param, s.sweep->values[i]);
            } catch (const ScenarioError& e) {
                r.fail(Reader::at("sweep.values", i), e.what());
            }
        }
    }
    return s;
}

ordered_json point_json(const Point2& p) { return ordered_json::array({p.x, p.y}); }

ordered_json polyline_json(const Polyline& pl) {
    auto a = ordered_json::array();
    for (const auto& p : pl) a.push_back(point_json(p));
    return a;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const int line = line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ScenarioError("JSON syntax error at line " + std::to_string(line) + ": " + e.what(), {}, line);
    }
    return parse_with(Reader(text), root);
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ScenarioError("cannot open scenario file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str());
    } catch (const ScenarioError& e) {
        throw ScenarioError(path.string() + ": " + e.what(), e.field(), e.line());
    }
}

std::string dump_scenario(const Scenario& s) {
    ordered_json root;
    root["schema_version"] = kScenarioSchemaVersion;
    root["name"] = s.name;
    if (!s.comment.empty()) root["comment"] = s.comment;
    auto geometry = ordered_json::array();
    for (const auto& g : s.geometry) {
        ordered_json item;
        item["polyline"] = polyline_json(g);
        geometry.push_back(std::move(item));
    }
    root["geometry"] = std::move(geometry);

    ordered_json m;
    m["youngs_modulus_pa"] = s.material.youngs_modulus_pa;
    m["poisson_ratio"] = s.material.poisson_ratio;
    if (s.material.explicit_k_pa) m["explicit_k_pa"] = *s.material.explicit_k_pa;
    m["cross_section_area_um2"] = s.material.cross_section_area_um2;
    m["density_kg_m3"] = s.material.density_kg_m3;
    root["material"] = std::move(m);

    ordered_json sv;
    sv["dt"] = s.solver.dt;
    sv["substeps"] = s.solver.substeps;
    sv["rest_length_um"] = s.solver.rest_length_um;
    sv["threshold"] = s.solver.threshold;
    sv["max_sweeps"] = s.solver.max_sweeps;
    sv["clamp_fraction"] = s.solver.clamp_fraction;
    root["solver"] = std::move(sv);

    ordered_json schedule;
    schedule["settle_between"] = s.settle_between;
    auto moves = ordered_json::array();
    for (const auto& mv : s.moves) {
        ordered_json item;
        item["chain"] = mv.chain;
        if (mv.point_id) item["point_id"] = *mv.point_id;
        if (mv.pick) item["pick"] = point_json(*mv.pick);
        item["waypoints"] = polyline_json(mv.waypoints);
        item["step_um"] = mv.step_um;
        moves.push_back(std::move(item));
    }
    schedule["moves"] = std::move(moves);
    root["schedule"] = std::move(schedule);

    ordered_json outputs;
    outputs["csv"] = s.outputs.csv;
    outputs["svg"] = s.outputs.svg;
    outputs["metrics"] = s.outputs.metrics;
    auto targets = ordered_json::array();
    for (const auto& t : s.outputs.targets) {
        ordered_json item;
        item["chain"] = t.chain;
        item["polyline"] = polyline_json(t.polyline);
        targets.push_back(std::move(item));
    }
    outputs["targets"] = std::move(targets);
    auto waves = ordered_json::array();
    for (const auto& w : s.outputs.wave_points) {
        ordered_json item;
        item["label"] = w.label;
        item["chain"] = w.chain;
        item["point_id"] = w.point_id;
        waves.push_back(std::move(item));
    }
    outputs["wave_points"] = std::move(waves);
    root["outputs"] = std::move(outputs);

    if (s.sweep) {
        ordered_json sw;
        sw["param"] = s.sweep->param;
        sw["values"] = s.sweep->values;
        root["sweep"] = std::move(sw);
    }
    return root.dump(2) + "\n";
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write scenario file " + path.string());
    }
    out << dump_scenario(s);
    if (!out) {
        throw Error("failed writing scenario file " + path.string());
    }
}

std::vector<ChainState> build_chains(const Scenario& s) {
    std::vector<ChainState> chains;
    chains.reserve(s.geometry.size());
    for (const auto& g : s.geometry) {
        chains.push_back(discretize_polyline(g, s.solver.rest_length_um));
    }
    return chains;
}

Scenario with_parameter(const Scenario& s, std::string_view param, double value) {
    Scenario out = s;
    if (param == "k") {
        out.material.explicit_k_pa = value;
    } else if (param == "l") {
        out.solver.rest_length_um = value;
    } else if (param == "theta") {
        out.solver.threshold = value;
    } else {
        throw ScenarioError("unknown sweep parameter '" + std::string(param) + "' (expected k, l or theta)", "sweep.param");
    }
    if (!std::isfinite(value)) {
        throw ScenarioError("sweep value must be finite", "sweep.values");
    }
    out.sweep.reset();
    check(Reader({}), out);
    return out;
}

}  // namespace chainform
