#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "repseg/cli.hpp"
#include "repseg/io.hpp"
#include "repseg/oracle.hpp"
#include "repseg/svg.hpp"
#include "test_support.hpp"

#include <filesystem>

#include "json.hpp"

using namespace repseg;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("repseg_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int count_occurrences(const std::string& text, const std::string& needle) {
    int n = 0;
    size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++n;
        pos += needle.size();
    }
    return n;
}

}  // namespace

TEST_CASE("instance files round-trip") {
    io::InstanceFile inst;
    inst.r = 1.25;
    inst.points = gen_uniform_disk(9, 2.0, 5);
    io::InstanceFile back = io::parse_instance(io::instance_to_json(inst));
    CHECK(back.r == inst.r);
    REQUIRE(back.points.size() == inst.points.size());
    for (size_t i = 0; i < inst.points.size(); ++i)
        CHECK(almost_equal(back.points[i], inst.points[i], 0.0));  // lossless
}

TEST_CASE("instance parsing diagnostics name the offending field") {
    CHECK_THROWS_WITH_AS(io::parse_instance("{\"points\": [[0,0]]}"),
                         doctest::Contains("'r'"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(io::parse_instance("{\"r\": 1}"), doctest::Contains("'points'"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(io::parse_instance("{\"r\": 1, \"points\": [[0]]}"),
                         doctest::Contains("points[0]"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(io::parse_instance("{\"r\": -2, \"points\": [[0,0]]}"),
                         doctest::Contains("'r'"), std::invalid_argument);
}

TEST_CASE("trajectory files round-trip and validate unit speed") {
    io::TrajectoryFile file;
    file.r = 1.5;
    file.trajectories = gen_trajectories(5, 9, 2.0, 11);
    io::TrajectoryFile back = io::parse_trajectory(io::trajectory_to_json(file));
    CHECK(back.r == file.r);
    CHECK(back.trajectories.timestamps() == 9);
    CHECK(back.trajectories.point_count() == 5);

    io::TrajectoryFile fast = file;
    fast.trajectories.positions[2][3].x += 5.0;  // breaks unit speed
    CHECK_THROWS_WITH_AS(io::parse_trajectory(io::trajectory_to_json(fast)),
                         doctest::Contains("point 2"), std::invalid_argument);

    io::TrajectoryFile small = file;
    small.r = 0.5;
    CHECK_THROWS_AS(io::parse_trajectory(io::trajectory_to_json(small)),
                    std::invalid_argument);
}

TEST_CASE("cmd_solve writes a result that re-validates") {
    TempDir dir;
    io::InstanceFile inst;
    inst.r = 1.0;
    inst.points = {{0, 0}, {10, 0}, {5, 1}};
    io::save_instance(inst, dir.file("inst.json"));

    cli::SolveArgs args;
    args.instance_path = dir.file("inst.json");
    args.output_path = dir.file("out.json");
    args.trace_path = dir.file("trace.json");
    CHECK(cli::cmd_solve(args) == cli::kExitOk);

    auto j = nlohmann::json::parse(io::read_file(dir.file("out.json")));
    CHECK(j["status"] == "segment");
    CHECK(j["length"].get<double>() == doctest::Approx(8.0));
    Segment seg({j["endpoints"][0][0], j["endpoints"][0][1]},
                {j["endpoints"][1][0], j["endpoints"][1][1]});
    CHECK(oracle::validate_segment(inst.points, inst.r, seg));
    CHECK(j["max_point_distance"].get<double>() <= inst.r + 1e-9);

    auto trace = nlohmann::json::parse(io::read_file(dir.file("trace.json")));
    CHECK(trace.contains("events"));

    // Status variants.
    inst.points = {{0, 0}};
    io::save_instance(inst, dir.file("point.json"));
    args.instance_path = dir.file("point.json");
    args.trace_path.clear();
    args.output_path = dir.file("point_out.json");
    CHECK(cli::cmd_solve(args) == cli::kExitOk);
    CHECK(nlohmann::json::parse(io::read_file(dir.file("point_out.json")))["status"] == "point");

    inst.r = 0.5;
    inst.points = {{0, 0}, {2, 0}, {1, std::sqrt(3.0)}};
    io::save_instance(inst, dir.file("none.json"));
    args.instance_path = dir.file("none.json");
    args.output_path = dir.file("none_out.json");
    CHECK(cli::cmd_solve(args) == cli::kExitOk);
    CHECK(nlohmann::json::parse(io::read_file(dir.file("none_out.json")))["status"] == "none");

    io::write_file(dir.file("broken.json"), "{\"r\": 1}");
    args.instance_path = dir.file("broken.json");
    CHECK(cli::cmd_solve(args) == cli::kExitInputError);
}

TEST_CASE("cmd_kinetic outputs samples and a stability report") {
    TempDir dir;
    io::TrajectoryFile file;
    file.r = 1.2;
    file.trajectories = gen_trajectories(8, 10, 2.5, 21);
    io::save_trajectory(file, dir.file("traj.json"));

    cli::KineticArgs args;
    args.trajectory_path = dir.file("traj.json");
    args.output_path = dir.file("out.json");
    args.dt = 0.25;
    args.verify = true;
    CHECK(cli::cmd_kinetic(args) == cli::kExitOk);
    auto j = nlohmann::json::parse(io::read_file(dir.file("out.json")));
    CHECK(j["samples"].size() > 30);
    CHECK(j["stability"]["all_ok"].get<bool>());

    args.t_begin = 0.0;  // outside [1, T-1]
    CHECK(cli::cmd_kinetic(args) == cli::kExitInputError);
}

TEST_CASE("cmd_check passes on generated instances and flags injected faults") {
    cli::CheckArgs args;
    args.generate = "collinear";
    args.n = 12;
    args.seeds = 4;
    args.seed = 77;
    args.k_orientations = 256;
    CHECK(cli::cmd_check(args) == cli::kExitOk);

    args.generate = "convex";
    args.n = 16;
    args.seeds = 4;
    CHECK(cli::cmd_check(args) == cli::kExitOk);

    args.inject_error = true;
    CHECK(cli::cmd_check(args) == cli::kExitMismatch);

    args.inject_error = false;
    args.generate = "spiral";
    CHECK(cli::cmd_check(args) == cli::kExitInputError);
}

TEST_CASE("cmd_render: structure and determinism") {
    TempDir dir;
    io::InstanceFile inst;
    inst.points = gen_uniform_disk(12, 2.0, 31);
    double w = calipers(convex_hull(inst.points)).width;
    double sed = smallest_enclosing_disk(inst.points).radius;
    inst.r = 0.5 * w + (sed - 0.5 * w) * 0.4;  // a segment solution exists
    io::save_instance(inst, dir.file("inst.json"));
    int h = convex_hull(inst.points).size();

    cli::RenderArgs args;
    args.input_path = dir.file("inst.json");
    args.output_path = dir.file("a.svg");
    CHECK(cli::cmd_render(args) == cli::kExitOk);
    std::string svg1 = io::read_file(dir.file("a.svg"));
    CHECK(count_occurrences(svg1, "<circle") == h);
    CHECK(count_occurrences(svg1, "class=\"segment\"") == 1);

    args.output_path = dir.file("b.svg");
    CHECK(cli::cmd_render(args) == cli::kExitOk);
    CHECK(io::read_file(dir.file("b.svg")) == svg1);  // byte-identical

    io::InstanceFile none;
    none.r = 0.5;
    none.points = {{0, 0}, {2, 0}, {1, std::sqrt(3.0)}};
    io::save_instance(none, dir.file("none.json"));
    args.input_path = dir.file("none.json");
    args.output_path = dir.file("none.svg");
    CHECK(cli::cmd_render(args) == cli::kExitOk);
    CHECK(count_occurrences(io::read_file(dir.file("none.svg")), "class=\"segment\"") == 0);

    // Trajectory rendering: one SVG per sampled frame.
    io::TrajectoryFile file;
    file.r = 1.2;
    file.trajectories = gen_trajectories(5, 6, 2.0, 3);
    io::save_trajectory(file, dir.file("traj.json"));
    args.input_path = dir.file("traj.json");
    args.output_path = dir.file("frames.svg");
    args.dt = 1.0;
    CHECK(cli::cmd_render(args) == cli::kExitOk);
    CHECK(fs::exists(dir.file("frames_0000.svg")));
    CHECK(fs::exists(dir.file("frames_0004.svg")));
}
