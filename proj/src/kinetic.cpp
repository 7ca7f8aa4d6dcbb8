#include "repseg/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace repseg {
namespace kinetic {

std::vector<Point2> Trajectory::at(int i) const {
    std::vector<Point2> out;
    out.reserve(positions.size());
    for (const auto& traj : positions) out.push_back(traj[i]);
    return out;
}

std::vector<Point2> Trajectory::interpolated(double t) const {
    int last = timestamps() - 1;
    if (t <= 0.0) return at(0);
    if (t >= last) return at(last);
    int i = static_cast<int>(std::floor(t));
    double b = t - i;
    std::vector<Point2> out;
    out.reserve(positions.size());
    for (const auto& traj : positions) out.push_back(traj[i] * (1.0 - b) + traj[i + 1] * b);
    return out;
}

void validate_trajectory(const Trajectory& traj) {
    if (traj.positions.empty()) throw std::invalid_argument("trajectory: no points");
    int t = traj.timestamps();
    if (t < 1) throw std::invalid_argument("trajectory: no timestamps");
    for (size_t p = 0; p < traj.positions.size(); ++p) {
        if (static_cast<int>(traj.positions[p].size()) != t)
            throw std::invalid_argument("trajectory: point " + std::to_string(p) +
                                        " has ragged timestamp count");
        for (int i = 0; i + 1 < t; ++i) {
            double step = distance(traj.positions[p][i], traj.positions[p][i + 1]);
            if (step > 1.0 + 1e-9)
                throw std::invalid_argument("trajectory: point " + std::to_string(p) +
                                            " moves " + std::to_string(step) + " > 1 at step " +
                                            std::to_string(i));
        }
    }
}

SpreadMeasures width_extent_diameter(const std::vector<Point2>& points) {
    if (points.empty()) throw std::invalid_argument("width_extent_diameter: no points");
    SpreadMeasures out;
    ConvexHull hull = convex_hull(points);
    CaliperResult cal = calipers(hull);
    out.width = cal.width;
    out.diameter = cal.diameter;
    out.diametric_pair = cal.diametric_pair;
    if (cal.diameter == 0.0) return out;
    Vec2 u = (points[cal.diametric_pair.second] - points[cal.diametric_pair.first]).normalized();
    out.extent = directional_extent(points, u.perp());
    return out;
}

CanonicalSolution canonical_solution(const std::vector<Point2>& points, double /*r*/) {
    if (points.empty()) throw std::invalid_argument("canonical_solution: no points");
    CanonicalSolution out;
    SpreadMeasures m = width_extent_diameter(points);
    out.diametric_pair = m.diametric_pair;
    out.extent = m.extent;
    out.width = m.width;
    out.diameter = m.diameter;
    if (m.diameter == 0.0) {
        out.q1 = out.q2 = points[0];
        return out;
    }
    const Point2& d1 = points[m.diametric_pair.first];
    const Point2& d2 = points[m.diametric_pair.second];
    Vec2 n = (d2 - d1).normalized().perp();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const Point2& p : points) {
        double v = n.dot(p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double mid = 0.5 * (lo + hi);
    out.q1 = d1 + n * (mid - n.dot(d1));
    out.q2 = d2 + n * (mid - n.dot(d2));
    return out;
}

Evaluator::Evaluator(Trajectory traj, double r, ChasingMode mode)
    : traj_(std::move(traj)), r_(r), mode_(mode) {
    if (r_ < 1.0) throw std::invalid_argument("kinetic evaluator requires r >= 1");
    validate_trajectory(traj_);
    int t = traj_.timestamps();
    canonical_.reserve(t);
    for (int i = 0; i < t; ++i) {
        CanonicalSolution c = canonical_solution(traj_.at(i), r_);
        c.timestamp = i;
        canonical_.push_back(c);
    }
}

KineticOutput Evaluator::evaluate(double t) const {
    int last = traj_.timestamps() - 1;
    if (t < 1.0 || t > static_cast<double>(last))
        throw std::invalid_argument("evaluate: t outside [1, T-1]");
    int i = static_cast<int>(std::floor(t));
    if (i > last) i = last;
    double b = t - i;

    KineticOutput out;
    out.t = t;
    if (canonical_[i].extent > gate_threshold()) {
        out.has_value = false;
        return out;
    }
    const CanonicalSolution& prev = canonical_[i - 1];
    const CanonicalSolution& cur = canonical_[i];
    double wprev = mode_ == ChasingMode::ArriveNext ? 1.0 - b : b;
    out.has_value = true;
    out.value = Segment(prev.q1 * wprev + cur.q1 * (1.0 - wprev),
                        prev.q2 * wprev + cur.q2 * (1.0 - wprev));
    return out;
}

KineticOutput evaluate(const Trajectory& traj, double r, double t, ChasingMode mode) {
    return Evaluator(traj, r, mode).evaluate(t);
}

StabilityReport verify_stability(const Trajectory& traj, double r, double dt,
                                 ChasingMode mode) {
    if (dt <= 0.0) throw std::invalid_argument("verify_stability: dt must be positive");
    Evaluator ev(traj, r, mode);
    StabilityReport rep;
    rep.speed_bound = (2.0 * r + 1.0) * std::sqrt(2.0) + 2.0;
    rep.length_allowance = 2.0 * r + 4.0;
    rep.hausdorff_bound = 2.0 * r * std::sqrt(2.0) + 4.0;

    int last = traj.timestamps() - 1;
    if (last < 1) throw std::invalid_argument("verify_stability: need at least two timestamps");

    bool have_prev = false;
    KineticOutput prev_out;
    double prev_t = 0.0;
    for (double t = 1.0; t <= last + 1e-12; t += dt) {
        double tc = std::min(t, static_cast<double>(last));
        std::vector<Point2> pos = traj.interpolated(tc);
        KineticOutput out = ev.evaluate(tc);
        ++rep.samples;

        double w = width_extent_diameter(pos).width;
        // Existence gate, exact lemma form with tolerance on W.
        if (w <= 2.0 * r - 1e-9 && !out.has_value) ++rep.gate_violations;
        if (w > 2.0 * r * std::sqrt(2.0) + 4.0 + 1e-9 && out.has_value) ++rep.gate_violations;

        if (out.has_value) {
            double far = 0.0;
            for (const Point2& p : pos) far = std::max(far, point_segment_distance(p, out.value));
            rep.max_point_distance = std::max(rep.max_point_distance, far);

            SweepResult opt = sweep_shortest_segment(pos, r);
            if (opt.status != SweepResult::Status::None) {
                rep.max_length_gap =
                    std::max(rep.max_length_gap, out.value.length() - opt.length);
            }
        }
        if (have_prev && out.has_value && prev_out.has_value) {
            double step = tc - prev_t;
            if (step > 1e-12) {
                double v1 = distance(out.value.a, prev_out.value.a) / step;
                double v2 = distance(out.value.b, prev_out.value.b) / step;
                rep.max_endpoint_speed = std::max({rep.max_endpoint_speed, v1, v2});
            }
        }
        // Output status may change only where the gate index advances, i.e.
        // when an integer time lies in (prev_t, tc].
        if (have_prev && out.has_value != prev_out.has_value &&
            std::floor(tc) == std::floor(prev_t)) {
            ++rep.flicker_violations;
        }
        prev_out = out;
        prev_t = tc;
        have_prev = true;
    }

    rep.gate_ok = rep.gate_violations == 0;
    rep.speed_ok = rep.max_endpoint_speed <= rep.speed_bound + 1e-6;
    rep.length_ok = rep.max_length_gap <= rep.length_allowance + 1e-6;
    rep.hausdorff_ok = rep.max_point_distance <= rep.hausdorff_bound + 1e-6;
    rep.flicker_ok = rep.flicker_violations == 0;
    return rep;
}

}  // namespace kinetic
}  // namespace repseg
