#pragma once

#include "repseg/geom.hpp"

namespace repseg {
namespace oracle {

// Result of a brute-force reference computation. `tolerance` reports the
// resolution actually achieved so callers can compare with honest bounds.
struct OracleResult {
    bool feasible = false;
    Segment segment;
    double length = 0.0;
    long cost = 0;          // objective evaluations used
    double tolerance = 0.0; // achieved parameter resolution
    OrientationAngle orientation;
};

// True iff every point is within r of s (tolerance 1e-9).
bool validate_segment(const std::vector<Point2>& points, double r, const Segment& s);

// Shortest alpha-oriented stabbing segment by dense search over the strip
// offset; `refine` adds ternary refinement (the span is convex in the
// offset). Infeasible orientations yield feasible == false.
OracleResult brute_force_fixed_orientation(const std::vector<Point2>& points, double r,
                                           OrientationAngle alpha, int grid_n,
                                           bool refine = true);

// Global reference: a uniform orientation grid over [0, pi) followed by
// golden-section refinement around the best grid orientation (window of two
// grid steps). offset_grid controls the inner offset search.
OracleResult brute_force_shortest(const std::vector<Point2>& points, double r,
                                  int k_orientations, int offset_grid = 64);

// --- Scan oracles for the disk-intersection index -------------------------

struct CircularScanHit {
    Point2 point;
    int owner = -1;      // index into the disk sequence
    double travel = 0.0; // angular distance from q in the winding direction
};

// First exit of the directed circular ray (along c from q, given winding)
// from the common intersection of the disks, computed disk by disk.
std::optional<CircularScanHit> linear_scan_circular_query(const std::vector<Circle>& disks,
                                                          const Circle& c, const Point2& q,
                                                          Winding winding);

struct LineScanResult {
    enum class Kind { None, Candidate, Both } kind = Kind::None;
    Point2 left;  // smaller parameter along the line direction
    Point2 right;
    int left_owner = -1;
    int right_owner = -1;
};

// Intersection of the line with the common disk intersection; when empty,
// the right-to-left interval scan produces the candidate left endpoint.
LineScanResult linear_scan_line_query(const std::vector<Circle>& disks, const Line& line);

}  // namespace oracle
}  // namespace repseg
