#pragma once

#include "repseg/hull.hpp"
#include "repseg/sweep.hpp"

#include <limits>

namespace repseg {
namespace kinetic {

// Point trajectories sampled at integer timestamps 0..T-1. All points share
// the timestamp range; per-step displacement is at most 1 (unit speed).
struct Trajectory {
    std::vector<std::vector<Point2>> positions;  // [point][timestamp]

    int point_count() const { return static_cast<int>(positions.size()); }
    int timestamps() const {
        return positions.empty() ? 0 : static_cast<int>(positions[0].size());
    }
    std::vector<Point2> at(int i) const;
    // Positions between integer samples by linear interpolation.
    std::vector<Point2> interpolated(double t) const;
};

// Throws std::invalid_argument naming the offending point/step on a
// unit-speed violation or ragged data.
void validate_trajectory(const Trajectory& traj);

struct SpreadMeasures {
    double width = 0.0;
    double extent = 0.0;  // orthogonal to the diametric direction
    double diameter = 0.0;
    std::pair<int, int> diametric_pair{0, 0};
};

SpreadMeasures width_extent_diameter(const std::vector<Point2>& points);

// Segment of diametric orientation centered in the narrowest strip of that
// orientation; its length is the diameter.
struct CanonicalSolution {
    int timestamp = 0;
    Point2 q1, q2;
    std::pair<int, int> diametric_pair{0, 0};
    double extent = 0.0;
    double width = 0.0;
    double diameter = 0.0;
};

CanonicalSolution canonical_solution(const std::vector<Point2>& points, double r);

struct KineticOutput {
    double t = 0.0;
    bool has_value = false;
    Segment value;
};

// The displayed interpolation formula in the source material contradicts its
// prose; ArriveNext follows the prose (the output reaches q'(i) at time
// i+1), SnapCurrent the formula.
enum class ChasingMode { ArriveNext, SnapCurrent };

// Chasing evaluator: precomputes canonical solutions at every timestamp and
// linearly interpolates between the previous two. Valid query times are
// [1, T-1]; requires r >= 1.
class Evaluator {
  public:
    Evaluator(Trajectory traj, double r, ChasingMode mode = ChasingMode::ArriveNext);

    KineticOutput evaluate(double t) const;
    const CanonicalSolution& canonical(int i) const { return canonical_[i]; }
    const Trajectory& trajectory() const { return traj_; }
    double gate_threshold() const { return 2.0 * r_ * std::sqrt(2.0) + 2.0; }
    double r() const { return r_; }

  private:
    Trajectory traj_;
    double r_;
    ChasingMode mode_;
    std::vector<CanonicalSolution> canonical_;
};

// One-shot wrapper over Evaluator.
KineticOutput evaluate(const Trajectory& traj, double r, double t,
                       ChasingMode mode = ChasingMode::ArriveNext);

struct StabilityReport {
    long samples = 0;
    double speed_bound = 0.0;       // (2r+1)*sqrt(2) + 2
    double length_allowance = 0.0;  // 2r + 4
    double hausdorff_bound = 0.0;   // 2r*sqrt(2) + 4

    double max_endpoint_speed = 0.0;
    double max_length_gap = -std::numeric_limits<double>::infinity();  // |A| - OPT
    double max_point_distance = 0.0;
    long gate_violations = 0;
    long flicker_violations = 0;

    bool gate_ok = false;
    bool speed_ok = false;
    bool length_ok = false;
    bool hausdorff_ok = false;
    bool flicker_ok = false;
    bool all_ok() const { return gate_ok && speed_ok && length_ok && hausdorff_ok && flicker_ok; }
};

// Samples [1, T-1] on a dt-grid and checks every stability bound; OPT comes
// from the static solver on linearly interpolated positions.
StabilityReport verify_stability(const Trajectory& traj, double r, double dt = 1.0 / 64.0,
                                 ChasingMode mode = ChasingMode::ArriveNext);

}  // namespace kinetic
}  // namespace repseg
