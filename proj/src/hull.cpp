#include "repseg/hull.hpp"

#include <algorithm>
#include <limits>

namespace repseg {

namespace {

double cross3(const Point2& o, const Point2& a, const Point2& b) {
    return (a - o).cross(b - o);
}

}  // namespace

ConvexHull convex_hull(const std::vector<Point2>& points) {
    if (points.empty()) throw std::invalid_argument("convex_hull: empty input");

    struct Entry {
        Point2 p;
        int idx;
    };
    std::vector<Entry> entries;
    entries.reserve(points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y))
            throw std::invalid_argument("convex_hull: non-finite coordinate");
        entries.push_back({points[i], static_cast<int>(i)});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.p.x != b.p.x) return a.p.x < b.p.x;
        if (a.p.y != b.p.y) return a.p.y < b.p.y;
        return a.idx < b.idx;
    });
    // Merge points within 1e-12 of their predecessor.
    std::vector<Entry> dedup;
    for (const Entry& e : entries) {
        if (!dedup.empty() && distance(dedup.back().p, e.p) <= 1e-12) continue;
        dedup.push_back(e);
    }

    double span = distance(dedup.front().p, dedup.back().p);
    for (const Entry& e : dedup) span = std::max(span, distance(dedup.front().p, e.p));
    double area_tol = 1e-12 * (1.0 + span * span);

    ConvexHull out;
    if (dedup.size() == 1) {
        out.vertices = {dedup[0].p};
        out.indices = {dedup[0].idx};
        return out;
    }

    // Monotone chain, counter-clockwise, collinear points dropped.
    std::vector<Entry> ccw(2 * dedup.size());
    int k = 0;
    for (size_t i = 0; i < dedup.size(); ++i) {
        while (k >= 2 && cross3(ccw[k - 2].p, ccw[k - 1].p, dedup[i].p) <= area_tol) --k;
        ccw[k++] = dedup[i];
    }
    int lower = k + 1;
    for (int i = static_cast<int>(dedup.size()) - 2; i >= 0; --i) {
        while (k >= lower && cross3(ccw[k - 2].p, ccw[k - 1].p, dedup[i].p) <= area_tol) --k;
        ccw[k++] = dedup[i];
    }
    ccw.resize(k - 1);

    // Reverse into clockwise order, keeping the lexicographically smallest
    // vertex first for determinism.
    out.vertices.reserve(ccw.size());
    out.indices.reserve(ccw.size());
    out.vertices.push_back(ccw[0].p);
    out.indices.push_back(ccw[0].idx);
    for (size_t i = ccw.size() - 1; i >= 1; --i) {
        out.vertices.push_back(ccw[i].p);
        out.indices.push_back(ccw[i].idx);
    }
    return out;
}

CaliperResult calipers(const ConvexHull& hull) {
    CaliperResult res;
    int h = hull.size();
    if (h == 0) throw std::invalid_argument("calipers: empty hull");
    if (h == 1) {
        res.diametric_pair = {hull.indices[0], hull.indices[0]};
        return res;
    }
    if (h == 2) {
        res.width = 0.0;
        res.width_orientation = orientation_of(hull.vertices[1] - hull.vertices[0]);
        res.diameter = distance(hull.vertices[0], hull.vertices[1]);
        int i = hull.indices[0], j = hull.indices[1];
        res.diametric_pair = {std::min(i, j), std::max(i, j)};
        return res;
    }

    // Work on a counter-clockwise copy.
    std::vector<Point2> p(hull.vertices.rbegin(), hull.vertices.rend());
    std::vector<int> idx(hull.indices.rbegin(), hull.indices.rend());
    int n = h;
    auto at = [&](int i) -> const Point2& { return p[((i % n) + n) % n]; };

    res.width = std::numeric_limits<double>::infinity();
    res.diameter = 0.0;
    auto consider_pair = [&](int a, int b) {
        double d = distance(at(a), at(b));
        int ia = idx[((a % n) + n) % n];
        int ib = idx[((b % n) + n) % n];
        std::pair<int, int> pr{std::min(ia, ib), std::max(ia, ib)};
        if (d > res.diameter + 1e-15 ||
            (std::abs(d - res.diameter) <= 1e-15 && pr < res.diametric_pair)) {
            res.diameter = d;
            res.diametric_pair = pr;
        }
    };

    int j = 1;
    for (int i = 0; i < n; ++i) {
        Vec2 edge = at(i + 1) - at(i);
        // Advance the opposite vertex while the distance to the edge grows.
        while (std::abs(edge.cross(at(j + 1) - at(i))) > std::abs(edge.cross(at(j) - at(i)))) {
            consider_pair(i, j);
            consider_pair(i + 1, j);
            j = (j + 1) % n;
        }
        consider_pair(i, j);
        consider_pair(i + 1, j);
        double elen = edge.norm();
        if (elen > 0.0) {
            double w = std::abs(edge.cross(at(j) - at(i))) / elen;
            if (w < res.width) {
                res.width = w;
                res.width_orientation = orientation_of(edge);
            }
        }
    }
    if (!std::isfinite(res.width)) res.width = 0.0;
    return res;
}

double directional_extent(const std::vector<Point2>& points, const Vec2& direction) {
    if (points.empty()) return 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Point2& q : points) {
        double v = q.dot(direction);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

double strip_extent(const std::vector<Point2>& points, OrientationAngle alpha) {
    return directional_extent(points, alpha.n());
}

std::optional<OrientationAngle> feasible_orientation(const ConvexHull& hull, double r) {
    if (r <= 0.0) throw std::invalid_argument("feasible_orientation: r must be positive");
    CaliperResult c = calipers(hull);
    if (c.width <= 2.0 * r) return c.width_orientation;
    return std::nullopt;
}

}  // namespace repseg
