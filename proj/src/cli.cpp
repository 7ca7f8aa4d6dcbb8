#include "repseg/cli.hpp"

#include "repseg/generate.hpp"
#include "repseg/io.hpp"
#include "repseg/oracle.hpp"
#include "repseg/svg.hpp"

#include <atomic>
#include <cstdio>
#include <iostream>
#include <thread>

#include "json.hpp"

namespace repseg {
namespace cli {

namespace {

void emit(const std::string& path, const std::string& contents) {
    if (path.empty()) {
        std::cout << contents;
    } else {
        io::write_file(path, contents);
    }
}

}  // namespace

int cmd_solve(const SolveArgs& args) {
    io::InstanceFile inst;
    try {
        inst = io::load_instance(args.instance_path);
        if (args.r_override) {
            if (*args.r_override <= 0.0) throw std::invalid_argument("--r must be positive");
            inst.r = *args.r_override;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
    SweepOptions opts;
    opts.record_events = !args.trace_path.empty();
    SweepResult res = sweep_shortest_segment(inst.points, inst.r, opts);
    emit(args.output_path, io::static_result_to_json(res, inst.points, inst.r, false));
    if (!args.trace_path.empty())
        io::write_file(args.trace_path,
                       io::static_result_to_json(res, inst.points, inst.r, true));
    return kExitOk;
}

int cmd_kinetic(const KineticArgs& args) {
    io::TrajectoryFile file;
    double t0, t1;
    try {
        file = io::load_trajectory(args.trajectory_path);
        int last = file.trajectories.timestamps() - 1;
        t0 = args.t_begin.value_or(1.0);
        t1 = args.t_end.value_or(static_cast<double>(last));
        if (args.dt <= 0.0) throw std::invalid_argument("--dt must be positive");
        if (t0 < 1.0 || t1 > static_cast<double>(last) || t0 > t1)
            throw std::invalid_argument("t-range must lie within [1, " + std::to_string(last) +
                                        "]");
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
    kinetic::ChasingMode mode = args.formula_interpolation ? kinetic::ChasingMode::SnapCurrent
                                                           : kinetic::ChasingMode::ArriveNext;
    kinetic::Evaluator ev(file.trajectories, file.r, mode);
    std::vector<io::KineticSample> samples;
    for (double t = t0; t <= t1 + 1e-12; t += args.dt) {
        double tc = std::min(t, t1);
        kinetic::KineticOutput out = ev.evaluate(tc);
        samples.push_back({tc, out.has_value, out.value});
    }
    if (args.verify) {
        kinetic::StabilityReport rep =
            kinetic::verify_stability(file.trajectories, file.r, args.dt, mode);
        emit(args.output_path, io::kinetic_result_to_json(samples, file.r, &rep));
    } else {
        emit(args.output_path, io::kinetic_result_to_json(samples, file.r, nullptr));
    }
    return kExitOk;
}

namespace {

struct CheckInstance {
    std::uint64_t seed;
    std::vector<Point2> points;
    double r;
};

struct CheckOutcome {
    bool mismatch = false;
    std::string line;
};

CheckOutcome run_check(const CheckInstance& inst, int k_orientations, bool corrupt) {
    CheckOutcome out;
    SweepResult res = sweep_shortest_segment(inst.points, inst.r);
    double sweep_len = res.length;
    if (corrupt) sweep_len += 0.1 * (1.0 + sweep_len);  // deliberate fault, test mode

    oracle::OracleResult ora =
        oracle::brute_force_shortest(inst.points, inst.r, k_orientations);
    char buf[256];
    const char* status = res.status == SweepResult::Status::Segment  ? "segment"
                         : res.status == SweepResult::Status::Point  ? "point"
                                                                     : "none";
    if (res.status == SweepResult::Status::None) {
        out.mismatch = ora.feasible;
        snprintf(buf, sizeof buf, "seed=%llu n=%zu r=%.6f status=%s oracle=%s  %s",
                 static_cast<unsigned long long>(inst.seed), inst.points.size(), inst.r, status,
                 ora.feasible ? "feasible" : "infeasible", out.mismatch ? "MISMATCH" : "ok");
        out.line = buf;
        return out;
    }
    double ref = ora.feasible ? ora.length : 0.0;
    bool valid = res.segment && oracle::validate_segment(inst.points, inst.r, *res.segment);
    double rel = std::abs(sweep_len - ref) / (1.0 + ref);
    out.mismatch = rel > 1e-5 || !valid;
    snprintf(buf, sizeof buf,
             "seed=%llu n=%zu r=%.6f status=%s sweep=%.9f oracle=%.9f rel=%.2e valid=%d  %s",
             static_cast<unsigned long long>(inst.seed), inst.points.size(), inst.r, status,
             sweep_len, ref, rel, valid ? 1 : 0, out.mismatch ? "MISMATCH" : "ok");
    out.line = buf;
    return out;
}

}  // namespace

int cmd_check(const CheckArgs& args) {
    std::vector<CheckInstance> instances;
    try {
        if (!args.instance_path.empty()) {
            io::InstanceFile f = io::load_instance(args.instance_path);
            instances.push_back({0, f.points, args.r.value_or(f.r)});
        } else {
            if (args.n < 1 || args.seeds < 1)
                throw std::invalid_argument("--n and --seeds must be positive");
            for (int s = 0; s < args.seeds; ++s) {
                std::uint64_t seed = args.seed + static_cast<std::uint64_t>(s);
                CheckInstance inst;
                inst.seed = seed;
                if (args.generate == "collinear") {
                    std::mt19937_64 rng(seed ^ 0xc0ffee);
                    double span = uniform(rng, 5.0, 30.0);
                    inst.points = gen_collinear(args.n, span, seed);
                    inst.r = args.r.value_or(uniform(rng, 0.1, span / 2 * 0.9));
                } else {
                    if (args.generate == "convex") {
                        inst.points = gen_convex_position(std::max(args.n, 3), 2.0, seed);
                    } else if (args.generate == "uniform") {
                        inst.points = gen_uniform_disk(args.n, 2.0, seed);
                    } else if (args.generate == "clustered") {
                        inst.points = gen_clustered(args.n, 3, 2.0, seed);
                    } else {
                        throw std::invalid_argument(
                            "--generate must be collinear, convex, uniform or clustered");
                    }
                    if (args.r) {
                        inst.r = *args.r;
                    } else {
                        // r strictly between width/2 and the enclosing-disk
                        // radius, so a segment solution exists.
                        ConvexHull h = convex_hull(inst.points);
                        double w = calipers(h).width;
                        double sed = smallest_enclosing_disk(inst.points).radius;
                        std::mt19937_64 rng(seed ^ 0xabcd);
                        inst.r = 0.5 * w + (sed - 0.5 * w) * uniform(rng, 0.15, 0.85);
                    }
                }
                instances.push_back(std::move(inst));
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    }

    std::vector<CheckOutcome> outcomes(instances.size());
    std::atomic<size_t> next{0};
    int nthreads = std::max(1, std::min<int>(args.threads, instances.size()));
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= instances.size()) break;
            outcomes[i] =
                run_check(instances[i], args.k_orientations, args.inject_error && i == 0);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    int mismatches = 0;
    for (const CheckOutcome& o : outcomes) {
        std::cout << o.line << "\n";
        if (o.mismatch) ++mismatches;
    }
    std::cout << (instances.size() - mismatches) << "/" << instances.size() << " within tolerance\n";
    return mismatches == 0 ? kExitOk : kExitMismatch;
}

int cmd_render(const RenderArgs& args) {
    std::string text;
    try {
        text = io::read_file(args.input_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
    bool is_trajectory = false;
    try {
        auto j = nlohmann::json::parse(text);
        is_trajectory = j.contains("trajectories");
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "input error: malformed JSON: " << e.what() << "\n";
        return kExitInputError;
    }
    try {
        if (!is_trajectory) {
            io::InstanceFile inst = io::parse_instance(text);
            SweepResult res = sweep_shortest_segment(inst.points, inst.r);
            io::write_file(args.output_path, svg::render_instance(inst.points, inst.r, res));
        } else {
            io::TrajectoryFile file = io::parse_trajectory(text);
            if (args.dt <= 0.0) throw std::invalid_argument("--dt must be positive");
            kinetic::Evaluator ev(file.trajectories, file.r);
            int last = file.trajectories.timestamps() - 1;
            std::string base = args.output_path;
            if (base.size() > 4 && base.substr(base.size() - 4) == ".svg")
                base = base.substr(0, base.size() - 4);
            int frame = 0;
            for (double t = 1.0; t <= last + 1e-12; t += args.dt, ++frame) {
                double tc = std::min(t, static_cast<double>(last));
                kinetic::KineticOutput out = ev.evaluate(tc);
                std::optional<Segment> seg;
                if (out.has_value) seg = out.value;
                char name[64];
                snprintf(name, sizeof name, "_%04d.svg", frame);
                io::write_file(base + name,
                               svg::render_frame(file.trajectories.interpolated(tc), file.r,
                                                 tc, seg));
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitOk;
}

}  // namespace cli
}  // namespace repseg
