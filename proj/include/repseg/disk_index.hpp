#pragma once

#include "repseg/hull.hpp"
#include "repseg/oracle.hpp"

namespace repseg {

// Convex boundary of the common intersection of equal-radius disks, as a
// counter-clockwise cycle of circular arcs. Arc t runs on the circle of
// owners[t] from vertices[t] to vertices[t + 1 mod m]. A single-disk region
// is its full circle (no vertices); empty is representable.
struct CommonIntersectionBoundary {
    bool empty_region = false;
    std::vector<int> owners;
    std::vector<Point2> vertices;

    bool full_circle() const {
        return !empty_region && owners.size() == 1 && vertices.empty();
    }
    // Materialized arcs for inspection and rendering.
    std::vector<std::pair<int, CircularArc>> arcs(const std::vector<Circle>& circles) const;
};

// Incremental clipping of the common intersection of the given disks.
// Owners in the result index into `disks`.
CommonIntersectionBoundary common_intersection(const std::vector<Circle>& disks);

struct CircularQueryHit {
    Point2 point;
    int owner = -1;      // hull index
    double travel = 0.0; // angular distance from q in the winding direction
};

struct LineQueryResult {
    enum class Kind { None, Candidate, Both } kind = Kind::None;
    Point2 left;  // smaller parameter along the line direction
    Point2 right;
    int left_owner = -1;  // hull indices
    int right_owner = -1;
};

struct QueryStats {
    int runs_touched = 0;
    int nodes_touched = 0;
};

// The hull partitioned into maximal runs of bounded turning angle (<= pi/2)
// and bounded endpoint distance (<= r), with a balanced tree per run whose
// nodes store the boundary of the common intersection of their leaf disks.
class DiskIndex {
  public:
    DiskIndex(const ConvexHull& hull, double r);

    int hull_size() const { return static_cast<int>(centers_.size()); }
    double radius() const { return r_; }
    const std::vector<Point2>& centers() const { return centers_; }

    struct Run {
        int start = 0;
        int length = 0;
        int root = -1;
    };
    const std::vector<Run>& runs() const { return runs_; }

    struct Node {
        int lo = 0, hi = 0;  // hull index range (inclusive)
        int left = -1, right = -1;
        CommonIntersectionBoundary boundary;  // owners are hull indices
    };
    const std::vector<Node>& nodes() const { return nodes_; }

    // First exit of the directed circular ray (along c from q) from the
    // common intersection of the disks in the cyclic hull range [i, j]
    // (inclusive). q must lie in that common intersection. Disks farther
    // than 2r from the query circle's center cannot be hit and are skipped.
    std::optional<CircularQueryHit> circular_ray_query(int i, int j, const Circle& c,
                                                       const Point2& q, Winding winding,
                                                       QueryStats* stats = nullptr) const;

    // Intersection of `line` with the common intersection of the cyclic
    // range [i, j]; on empty intersection, the right-to-left walk with
    // descent yields the candidate left endpoint.
    LineQueryResult line_query(int i, int j, const Line& line,
                               QueryStats* stats = nullptr) const;

    bool point_in_range_intersection(int i, int j, const Point2& p, double eps = kEps) const;

  private:
    friend struct IndexQueryAccess;
    int build_node(int lo, int hi);
    std::vector<int> cover(int lo, int hi) const;  // canonical node cover of a linear range

    std::vector<Point2> centers_;
    double r_ = 0.0;
    std::vector<Run> runs_;
    std::vector<int> run_of_;
    std::vector<Node> nodes_;
};

struct CapSeed {
    Point2 cap_center;    // endpoint of the single-line solution
    int witness = -1;     // hull index of the circle realizing the cap
    int runs_touched = 0;
};

// After a type-3 event makes a solution appear, the chains restart as single
// vertices: the caps of the hippodrome on the critical line. Computed with
// the three-part line-query decomposition.
std::pair<CapSeed, CapSeed> restart_solution_after_type3(const DiskIndex& index,
                                                         const ConvexHull& hull, double r,
                                                         OrientationAngle alpha);

// Same computation against an explicit (possibly unnormalized-angle) frame;
// the first cap bounds the solution on the +u side.
std::pair<CapSeed, CapSeed> restart_caps_in_frame(const DiskIndex& index, const ConvexHull& hull,
                                                  double r, const Frame& frame);

}  // namespace repseg
