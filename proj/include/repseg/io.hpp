#pragma once

#include "repseg/kinetic.hpp"
#include "repseg/sweep.hpp"

#include <string>

namespace repseg {
namespace io {

// {"r": <real>, "points": [[x, y], ...]}
struct InstanceFile {
    double r = 0.0;
    std::vector<Point2> points;
};

// {"r": <real>, "timestamps": T, "trajectories": [[[x, y], ...], ...]}
// with T positions (integer timestamps 0..T-1) per point. Unit speed is
// validated on load.
struct TrajectoryFile {
    double r = 0.0;
    kinetic::Trajectory trajectories;
};

InstanceFile parse_instance(const std::string& json_text);
InstanceFile load_instance(const std::string& path);
std::string instance_to_json(const InstanceFile& inst);
void save_instance(const InstanceFile& inst, const std::string& path);

TrajectoryFile parse_trajectory(const std::string& json_text);
TrajectoryFile load_trajectory(const std::string& path);
std::string trajectory_to_json(const TrajectoryFile& file);
void save_trajectory(const TrajectoryFile& file, const std::string& path);

// Result serialization. status is "segment", "point" or "none"; segment
// results carry endpoints, length and the worst point distance.
std::string static_result_to_json(const SweepResult& result, const std::vector<Point2>& points,
                                  double r, bool include_trace);

struct KineticSample {
    double t = 0.0;
    bool has_value = false;
    Segment value;
};

std::string kinetic_result_to_json(const std::vector<KineticSample>& samples, double r,
                                   const kinetic::StabilityReport* report);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace io
}  // namespace repseg
