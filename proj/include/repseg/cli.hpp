#pragma once

#include <optional>
#include <string>

namespace repseg {
namespace cli {

// Exit codes: 0 computed (any status), 2 input error, 3 oracle mismatch.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitMismatch = 3;

struct SolveArgs {
    std::string instance_path;
    std::string output_path;            // empty: stdout
    std::optional<double> r_override;
    std::string trace_path;             // empty: no trace file
};
int cmd_solve(const SolveArgs& args);

struct KineticArgs {
    std::string trajectory_path;
    std::string output_path;  // empty: stdout
    std::optional<double> t_begin;
    std::optional<double> t_end;
    double dt = 1.0 / 64.0;
    bool verify = false;
    bool formula_interpolation = false;  // alternative chasing mode
};
int cmd_kinetic(const KineticArgs& args);

struct CheckArgs {
    std::string instance_path;  // exclusive with generate
    std::string generate;       // collinear | convex | uniform | clustered
    int n = 20;
    int seeds = 10;
    std::uint64_t seed = 1;
    std::optional<double> r;
    int k_orientations = 4096;
    int threads = 4;
    bool inject_error = false;  // harness self-test: force one mismatch
};
int cmd_check(const CheckArgs& args);

struct RenderArgs {
    std::string input_path;
    std::string output_path;
    double dt = 1.0;  // frame step for trajectory inputs
};
int cmd_render(const RenderArgs& args);

}  // namespace cli
}  // namespace repseg
