#pragma once

#include "repseg/geom.hpp"

namespace repseg {

// Convex hull with vertices in clockwise order. `indices` maps each hull
// vertex back to the original input point.
struct ConvexHull {
    std::vector<Point2> vertices;
    std::vector<int> indices;

    int size() const { return static_cast<int>(vertices.size()); }
    // Cyclic accessors (i may be any integer).
    const Point2& cyclic(int i) const {
        int h = size();
        int k = ((i % h) + h) % h;
        return vertices[k];
    }
    int cyclic_index(int i) const {
        int h = size();
        return ((i % h) + h) % h;
    }
};

struct CaliperResult {
    double width = 0.0;
    OrientationAngle width_orientation;  // direction of the narrowest strip
    double diameter = 0.0;
    std::pair<int, int> diametric_pair{0, 0};  // original input indices, i < j
};

// Monotone chain, O(n log n). Collinear interior points are dropped; points
// within 1e-12 are merged. Throws on empty input.
ConvexHull convex_hull(const std::vector<Point2>& points);

// Width, diameter and witnesses by rotating calipers.
CaliperResult calipers(const ConvexHull& hull);

// Extent of the points along `direction` (max - min of the projection).
double directional_extent(const std::vector<Point2>& points, const Vec2& direction);

// Extent orthogonal to orientation alpha (thickness of the alpha-strip).
double strip_extent(const std::vector<Point2>& points, OrientationAngle alpha);

// Some orientation whose strip has width <= 2r, if one exists.
std::optional<OrientationAngle> feasible_orientation(const ConvexHull& hull, double r);

}  // namespace repseg
