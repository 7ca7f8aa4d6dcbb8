#include "repseg/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace repseg {
namespace io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
}

double require_number(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number())
        throw std::invalid_argument(std::string("missing or non-numeric field '") + field + "'");
    return j[field].get<double>();
}

Point2 parse_point(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument("field '" + where + "' must be a [x, y] pair");
    Point2 p{j[0].get<double>(), j[1].get<double>()};
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw std::invalid_argument("field '" + where + "' has non-finite coordinates");
    return p;
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
    json j = parse_json(text);
    InstanceFile out;
    out.r = require_number(j, "r");
    if (out.r <= 0.0) throw std::invalid_argument("field 'r' must be positive");
    if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
        throw std::invalid_argument("field 'points' must be a nonempty array");
    for (size_t i = 0; i < j["points"].size(); ++i)
        out.points.push_back(parse_point(j["points"][i], "points[" + std::to_string(i) + "]"));
    return out;
}

std::string instance_to_json(const InstanceFile& inst) {
    json j;
    j["r"] = inst.r;
    json pts = json::array();
    for (const Point2& p : inst.points) pts.push_back({p.x, p.y});
    j["points"] = std::move(pts);
    return j.dump(2) + "\n";
}

TrajectoryFile parse_trajectory(const std::string& text) {
    json j = parse_json(text);
    TrajectoryFile out;
    out.r = require_number(j, "r");
    if (out.r < 1.0) throw std::invalid_argument("field 'r' must be >= 1");
    double t_raw = require_number(j, "timestamps");
    int t = static_cast<int>(t_raw);
    if (t < 2 || t != t_raw) throw std::invalid_argument("field 'timestamps' must be an integer >= 2");
    if (!j.contains("trajectories") || !j["trajectories"].is_array() || j["trajectories"].empty())
        throw std::invalid_argument("field 'trajectories' must be a nonempty array");
    for (size_t p = 0; p < j["trajectories"].size(); ++p) {
        const json& tr = j["trajectories"][p];
        std::string where = "trajectories[" + std::to_string(p) + "]";
        if (!tr.is_array() || static_cast<int>(tr.size()) != t)
            throw std::invalid_argument("field '" + where + "' must list exactly " +
                                        std::to_string(t) + " positions");
        std::vector<Point2> pos;
        for (size_t i = 0; i < tr.size(); ++i)
            pos.push_back(parse_point(tr[i], where + "[" + std::to_string(i) + "]"));
        out.trajectories.positions.push_back(std::move(pos));
    }
    kinetic::validate_trajectory(out.trajectories);  // unit speed is a hard error
    return out;
}

std::string trajectory_to_json(const TrajectoryFile& file) {
    json j;
    j["r"] = file.r;
    j["timestamps"] = file.trajectories.timestamps();
    json trs = json::array();
    for (const auto& tr : file.trajectories.positions) {
        json one = json::array();
        for (const Point2& p : tr) one.push_back({p.x, p.y});
        trs.push_back(std::move(one));
    }
    j["trajectories"] = std::move(trs);
    return j.dump(2) + "\n";
}

std::string static_result_to_json(const SweepResult& result, const std::vector<Point2>& points,
                                  double r, bool include_trace) {
    json j;
    switch (result.status) {
        case SweepResult::Status::Segment: j["status"] = "segment"; break;
        case SweepResult::Status::Point: j["status"] = "point"; break;
        case SweepResult::Status::None: j["status"] = "none"; break;
    }
    j["r"] = r;
    if (result.segment) {
        j["endpoints"] = {{result.segment->a.x, result.segment->a.y},
                          {result.segment->b.x, result.segment->b.y}};
        j["length"] = result.length;
        j["orientation"] = result.best_orientation.alpha;
        double far = 0.0;
        for (const Point2& p : points)
            far = std::max(far, point_segment_distance(p, *result.segment));
        j["max_point_distance"] = far;
    }
    json counts;
    const char* names[] = {"", "type1", "type2", "type3", "type4", "type5"};
    for (int k = 1; k <= 5; ++k) counts[names[k]] = result.trace.counts[k];
    counts["type5_internal"] = result.trace.internal_count;
    counts["total"] = result.trace.total;
    j["event_counts"] = std::move(counts);
    if (include_trace) {
        json evs = json::array();
        for (const EventRecord& e : result.trace.events) {
            evs.push_back({{"kind", e.kind},
                           {"orientation", e.orientation},
                           {"internal", e.internal}});
        }
        j["events"] = std::move(evs);
    }
    return j.dump(2) + "\n";
}

std::string kinetic_result_to_json(const std::vector<KineticSample>& samples, double r,
                                   const kinetic::StabilityReport* report) {
    json j;
    j["r"] = r;
    json arr = json::array();
    for (const KineticSample& s : samples) {
        json one;
        one["t"] = s.t;
        one["status"] = s.has_value ? "segment" : "none";
        if (s.has_value) {
            one["endpoints"] = {{s.value.a.x, s.value.a.y}, {s.value.b.x, s.value.b.y}};
            one["length"] = s.value.length();
        }
        arr.push_back(std::move(one));
    }
    j["samples"] = std::move(arr);
    if (report) {
        json rep;
        rep["samples"] = report->samples;
        rep["max_endpoint_speed"] = report->max_endpoint_speed;
        rep["speed_bound"] = report->speed_bound;
        rep["max_length_gap"] = report->max_length_gap;
        rep["length_allowance"] = report->length_allowance;
        rep["max_point_distance"] = report->max_point_distance;
        rep["hausdorff_bound"] = report->hausdorff_bound;
        rep["gate_violations"] = report->gate_violations;
        rep["flicker_violations"] = report->flicker_violations;
        rep["gate_ok"] = report->gate_ok;
        rep["speed_ok"] = report->speed_ok;
        rep["length_ok"] = report->length_ok;
        rep["hausdorff_ok"] = report->hausdorff_ok;
        rep["flicker_ok"] = report->flicker_ok;
        rep["all_ok"] = report->all_ok();
        j["stability"] = std::move(rep);
    }
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << contents;
}

InstanceFile load_instance(const std::string& path) { return parse_instance(read_file(path)); }
void save_instance(const InstanceFile& inst, const std::string& path) {
    write_file(path, instance_to_json(inst));
}
TrajectoryFile load_trajectory(const std::string& path) {
    return parse_trajectory(read_file(path));
}
void save_trajectory(const TrajectoryFile& file, const std::string& path) {
    write_file(path, trajectory_to_json(file));
}

}  // namespace io
}  // namespace repseg
