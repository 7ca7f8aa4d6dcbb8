#pragma once

#include "repseg/hull.hpp"

namespace repseg {

// S1 bounds region R1 (points right of the right-most envelope of left
// half-circles); the optimal segment's endpoint q1 lies on it and is the
// right endpoint in the frame of the sweep orientation. S2 is symmetric on
// the left side.
enum class ChainSide { S1, S2 };

// Extremal tangent lines of all hull circles at one orientation. tau1 is the
// bottom-most top tangent, tau2 the top-most bottom tangent (in the frame of
// alpha); the strip between them contains every stabbing line.
struct TangentPair {
    Line tau1;
    Line tau2;
    int owner1 = 0;  // hull index of the tau1 circle (minimal frame height)
    int owner2 = 0;  // hull index of the tau2 circle (maximal frame height)
    double y_tau1 = 0.0;  // frame height of tau1
    double y_tau2 = 0.0;  // frame height of tau2
};

struct ChainArc {
    int support = 0;  // hull index of the arc's circle
    CircularArc arc;  // clipped to the strip, ordered tau1 end -> tau2 end
};

struct ConvexChain {
    ChainSide side = ChainSide::S1;
    std::vector<ChainArc> arcs;
};

// Combinatorial chain: supports in order from the tau1 end to the tau2 end,
// plus the fixed intersection point between consecutive supporting circles.
struct ChainSkeleton {
    std::vector<int> supports;
    std::vector<Point2> breakpoints;  // size = supports.size() - 1
    bool empty() const { return supports.empty(); }
    int arc_count() const { return static_cast<int>(supports.size()); }
};

// How the fixed-orientation optimum is realized on the two chains.
enum class MinimizerKind {
    ArcArc,        // interior critical point on an arc of each chain
    VertexArc,     // q1 pinned on an S1 vertex
    ArcVertex,     // q2 pinned on an S2 vertex
    PinnedTop,     // both endpoints on tau1
    PinnedBottom,  // both endpoints on tau2
};

struct ChainOptimum {
    MinimizerKind kind = MinimizerKind::ArcArc;
    // Active arc index on each chain. For VertexArc, s1_vertex is the vertex
    // index (between arcs s1_vertex and s1_vertex+1); likewise s2_vertex.
    int s1_arc = 0;
    int s2_arc = 0;
    int s1_vertex = -1;
    int s2_vertex = -1;
    double y = 0.0;     // frame height of the segment
    double s1_x = 0.0;  // frame x of q1
    double s2_x = 0.0;  // frame x of q2
    bool point_feasible = false;  // R1 and R2 intersect at this orientation
    Segment segment;              // world coordinates
    double length = 0.0;
};

// tau1/tau2 with owners, or nullopt when tau1 lies strictly below tau2 (no
// stabbing line of this orientation exists).
std::optional<TangentPair> fixed_orientation_tangents(const ConvexHull& hull, double r,
                                                      OrientationAngle alpha);

// Envelope value (frame x) of one circle at frame height y.
double half_circle_x(const ConvexHull& hull, double r, const Frame& frame, int support, double y,
                     ChainSide side);

// Builds the chain skeleton by the incremental hull-order procedure.
ChainSkeleton build_chain_skeleton(const ConvexHull& hull, double r, const Frame& frame,
                                   double y_lo, double y_hi, ChainSide side);

// Frame heights at which the skeleton switches arcs, descending, including
// the strip bounds: size = arc_count() + 1.
std::vector<double> chain_breakpoint_heights(const ChainSkeleton& chain, const Frame& frame,
                                             double y_lo, double y_hi);

ConvexChain materialize_chain(const ConvexHull& hull, double r, const Frame& frame,
                              const ChainSkeleton& chain, ChainSide side, double y_lo,
                              double y_hi);

// Lemma-3 construction of both chains at one orientation.
std::pair<ConvexChain, ConvexChain> build_convex_chains(const ConvexHull& hull, double r,
                                                        const TangentPair& tangents,
                                                        OrientationAngle alpha);

// Minimizes the horizontal span S1(y) - S2(y) over the strip. The span is
// convex in y, so the minimum is a single point characterized by equal
// tangent directions on the two chains.
ChainOptimum minimize_chain_span(const ConvexHull& hull, double r, const Frame& frame,
                                 const ChainSkeleton& s1, const ChainSkeleton& s2, double y_lo,
                                 double y_hi);

// Spec-level entry point on materialized chains. Throws if a chain is empty.
Segment shortest_segment_fixed_orientation(const ConvexChain& s1, const ConvexChain& s2,
                                           OrientationAngle alpha);

}  // namespace repseg
