#include "repseg/cli.hpp"

#include "CLI11.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Shortest representative segment of a planar point set: static solver, "
                 "kinetic chasing, oracle cross-checks and SVG rendering"};
    app.require_subcommand(1);

    repseg::cli::SolveArgs solve;
    CLI::App* cmd_solve = app.add_subcommand("solve", "Solve a static instance");
    cmd_solve->add_option("instance", solve.instance_path, "Instance JSON file")->required();
    cmd_solve->add_option("-o,--output", solve.output_path, "Result JSON file (default stdout)");
    double r_override = 0.0;
    CLI::Option* ropt = cmd_solve->add_option("--r", r_override, "Override the instance radius");
    cmd_solve->add_option("--trace", solve.trace_path, "Write the sweep trace as JSON");

    repseg::cli::KineticArgs kin;
    CLI::App* cmd_kinetic = app.add_subcommand("kinetic", "Evaluate a trajectory file");
    cmd_kinetic->add_option("trajectory", kin.trajectory_path, "Trajectory JSON file")->required();
    cmd_kinetic->add_option("-o,--output", kin.output_path, "Result JSON file (default stdout)");
    double t0 = 0.0, t1 = 0.0;
    CLI::Option* t0opt = cmd_kinetic->add_option("--t-begin", t0, "Start time (default 1)");
    CLI::Option* t1opt = cmd_kinetic->add_option("--t-end", t1, "End time (default T-1)");
    cmd_kinetic->add_option("--dt", kin.dt, "Sampling step (default 1/64)");
    cmd_kinetic->add_flag("--verify", kin.verify, "Run the stability verifier");
    cmd_kinetic->add_flag("--formula-interpolation", kin.formula_interpolation,
                          "Use the alternative interpolation weighting");

    repseg::cli::CheckArgs check;
    CLI::App* cmd_check = app.add_subcommand("check", "Cross-check the sweep against the oracle");
    cmd_check->add_option("--input", check.instance_path, "Instance JSON file");
    cmd_check->add_option("--generate", check.generate,
                          "Generator: collinear, convex, uniform, clustered");
    cmd_check->add_option("--n", check.n, "Points per generated instance");
    cmd_check->add_option("--seeds", check.seeds, "Number of seeded instances");
    cmd_check->add_option("--seed", check.seed, "Base seed");
    double check_r = 0.0;
    CLI::Option* cropt = cmd_check->add_option("--r", check_r, "Fixed radius");
    cmd_check->add_option("--k", check.k_orientations, "Oracle orientation count");
    cmd_check->add_option("--threads", check.threads, "Worker threads");
    cmd_check->add_flag("--inject-error", check.inject_error,
                        "Corrupt one result to exercise the mismatch exit code");

    repseg::cli::RenderArgs render;
    CLI::App* cmd_render = app.add_subcommand("render", "Render an instance or trajectory as SVG");
    cmd_render->add_option("input", render.input_path, "Instance or trajectory JSON")->required();
    cmd_render->add_option("output", render.output_path, "Output SVG path")->required();
    cmd_render->add_option("--dt", render.dt, "Frame step for trajectories (default 1)");

    CLI11_PARSE(app, argc, argv);

    if (cmd_solve->parsed()) {
        if (*ropt) solve.r_override = r_override;
        return repseg::cli::cmd_solve(solve);
    }
    if (cmd_kinetic->parsed()) {
        if (*t0opt) kin.t_begin = t0;
        if (*t1opt) kin.t_end = t1;
        return repseg::cli::cmd_kinetic(kin);
    }
    if (cmd_check->parsed()) {
        if (*cropt) check.r = check_r;
        return repseg::cli::cmd_check(check);
    }
    if (cmd_render->parsed()) {
        return repseg::cli::cmd_render(render);
    }
    return 1;
}
