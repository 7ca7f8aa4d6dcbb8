#pragma once

// Shared brute-force oracles for the test suites. These deliberately avoid
// the library's algorithmic paths: hulls by triple containment, envelopes by
// dense sampling, optima by grid search.

#include "repseg/chains.hpp"
#include "repseg/generate.hpp"
#include "repseg/hull.hpp"
#include "repseg/sweep.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace testsupport {

using namespace repseg;

// Indices of points that are vertices of the convex hull: a point is not a
// vertex iff it lies (weakly) inside a triangle of three other points.
inline std::set<int> slow_hull_vertex_set(const std::vector<Point2>& pts) {
    int n = static_cast<int>(pts.size());
    std::set<int> verts;
    for (int p = 0; p < n; ++p) {
        bool inside = false;
        for (int a = 0; a < n && !inside; ++a) {
            if (a == p) continue;
            for (int b = a + 1; b < n && !inside; ++b) {
                if (b == p) continue;
                for (int c = b + 1; c < n && !inside; ++c) {
                    if (c == p) continue;
                    double d1 = (pts[b] - pts[a]).cross(pts[p] - pts[a]);
                    double d2 = (pts[c] - pts[b]).cross(pts[p] - pts[b]);
                    double d3 = (pts[a] - pts[c]).cross(pts[p] - pts[c]);
                    bool neg = d1 < -1e-12 || d2 < -1e-12 || d3 < -1e-12;
                    bool pos = d1 > 1e-12 || d2 > 1e-12 || d3 > 1e-12;
                    if (!(neg && pos)) inside = true;
                }
            }
        }
        if (!inside) verts.insert(p);
    }
    return verts;
}

struct BruteCalipers {
    double width;
    double diameter;
};

inline BruteCalipers brute_calipers(const ConvexHull& hull) {
    BruteCalipers out{0.0, 0.0};
    int h = hull.size();
    for (int i = 0; i < h; ++i)
        for (int j = i + 1; j < h; ++j)
            out.diameter = std::max(out.diameter, distance(hull.vertices[i], hull.vertices[j]));
    if (h < 3) return out;
    out.width = std::numeric_limits<double>::infinity();
    for (int i = 0; i < h; ++i) {
        Vec2 e = hull.cyclic(i + 1) - hull.vertices[i];
        if (e.norm() == 0.0) continue;
        double far = 0.0;
        for (int j = 0; j < h; ++j)
            far = std::max(far, std::abs(e.cross(hull.vertices[j] - hull.vertices[i])) / e.norm());
        out.width = std::min(out.width, far);
    }
    return out;
}

// Envelope x-value of a materialized chain at frame height y.
inline double chain_x_at(const ConvexChain& chain, const Frame& f, double y) {
    double r = chain.arcs.front().arc.circle.radius;
    for (const ChainArc& a : chain.arcs) {
        double top = f.n.dot(a.arc.start_point());
        double bot = f.n.dot(a.arc.end_point());
        if (y <= top + 1e-12 && y >= bot - 1e-12) {
            double yc = f.n.dot(a.arc.circle.center);
            double w2 = r * r - (y - yc) * (y - yc);
            double w = w2 <= 0.0 ? 0.0 : std::sqrt(w2);
            double xc = f.u.dot(a.arc.circle.center);
            return chain.side == ChainSide::S1 ? xc - w : xc + w;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

// Direct envelope over all points (not just hull) at frame height y.
inline double brute_envelope_x(const std::vector<Point2>& pts, double r, const Frame& f, double y,
                               ChainSide side) {
    double best = side == ChainSide::S1 ? -std::numeric_limits<double>::infinity()
                                        : std::numeric_limits<double>::infinity();
    for (const Point2& p : pts) {
        double dy = y - f.n.dot(p);
        double w2 = r * r - dy * dy;
        double w = w2 <= 0.0 ? 0.0 : std::sqrt(w2);
        double x = f.u.dot(p);
        if (side == ChainSide::S1) {
            best = std::max(best, x - w);
        } else {
            best = std::min(best, x + w);
        }
    }
    return best;
}

// Minimal alpha-oriented segment length by dense search over the strip
// offset, refined by ternary search (the span is convex in the offset).
inline std::optional<double> brute_fixed_orientation_length(const std::vector<Point2>& pts,
                                                            double r, double alpha, int grid_n) {
    Frame f(alpha);
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const Point2& p : pts) {
        double y = f.n.dot(p);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    double y_hi = ymin + r, y_lo = ymax - r;
    if (y_hi < y_lo) return std::nullopt;
    auto span = [&](double y) {
        return brute_envelope_x(pts, r, f, y, ChainSide::S1) -
               brute_envelope_x(pts, r, f, y, ChainSide::S2);
    };
    double best = std::numeric_limits<double>::infinity();
    double best_y = y_lo;
    for (int i = 0; i <= grid_n; ++i) {
        double y = y_lo + (y_hi - y_lo) * i / std::max(grid_n, 1);
        double s = span(y);
        if (s < best) {
            best = s;
            best_y = y;
        }
    }
    double step = (y_hi - y_lo) / std::max(grid_n, 1);
    double lo = std::max(y_lo, best_y - step), hi = std::min(y_hi, best_y + step);
    for (int it = 0; it < 200; ++it) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (span(m1) < span(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    best = std::min(best, span(0.5 * (lo + hi)));
    return std::max(0.0, best);
}

// Compares the engine's maintained chains against a from-scratch Lemma-3
// construction, probed at the midpoint to the next event so the structures
// are numerically resolvable. Events closer than 1e-7 to the next pending
// violation are part of a cascade and are compared after it completes.
inline bool chains_match_reconstruction(const SweepEngine& eng, std::string& msg) {
    if (!eng.solution_exists()) return true;
    double next = std::min(eng.next_violation().value_or(eng.alpha_end()), eng.alpha_end());
    if (next <= eng.alpha() + 1e-7) return true;
    double a = eng.alpha() + 0.5 * (next - eng.alpha());
    double r = eng.radius();
    const ConvexHull& h = eng.hull();
    Frame f(a);
    double y_lo = f.n.dot(h.vertices[eng.tau2_owner()]) - r;
    double y_hi = f.n.dot(h.vertices[eng.tau1_owner()]) + r;
    ChainSkeleton w1 = build_chain_skeleton(h, r, f, y_lo, y_hi, ChainSide::S1);
    ChainSkeleton w2 = build_chain_skeleton(h, r, f, y_lo, y_hi, ChainSide::S2);
    auto cmp = [&](const ChainSkeleton& got, const ChainSkeleton& want, const char* name) {
        if (got.supports != want.supports) {
            msg = std::string(name) + " supports differ";
            return false;
        }
        for (size_t t = 0; t < got.breakpoints.size(); ++t) {
            if (distance(got.breakpoints[t], want.breakpoints[t]) > 1e-7) {
                msg = std::string(name) + " breakpoint differs";
                return false;
            }
        }
        return true;
    };
    return cmp(eng.s1(), w1, "S1") && cmp(eng.s2(), w2, "S2");
}

// Convenience: rotate a point set about the origin.
inline std::vector<Point2> rotate_points(const std::vector<Point2>& pts, double angle) {
    std::vector<Point2> out;
    out.reserve(pts.size());
    double c = std::cos(angle), s = std::sin(angle);
    for (const Point2& p : pts) out.push_back({c * p.x - s * p.y, c * p.y + s * p.x});
    return out;
}

}  // namespace testsupport
