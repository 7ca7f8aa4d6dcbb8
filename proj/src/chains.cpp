#include "repseg/chains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace repseg {

namespace {

double chord_half_width(double r, double dy) {
    double s = r * r - dy * dy;
    return s <= 0.0 ? 0.0 : std::sqrt(s);
}

double side_sign(ChainSide side) { return side == ChainSide::S1 ? 1.0 : -1.0; }

// Envelope objective g_k(y) = sign * x'_k - w_k(y); both chains are the upper
// envelope of g over their candidate half-circles.
struct EnvelopeEval {
    const ConvexHull& hull;
    const Frame& frame;
    double r;
    double sign;

    double x_of(int k) const { return frame.u.dot(hull.vertices[k]); }
    double y_of(int k) const { return frame.n.dot(hull.vertices[k]); }
    double g(int k, double y) const {
        return sign * x_of(k) - chord_half_width(r, y - y_of(k));
    }
};

// The unique intersection point of the two circles that can be an envelope
// breakpoint for this side (sign * x' coordinate not exceeding either
// center), or nullopt.
std::optional<Point2> side_crossing(const EnvelopeEval& ev, int a, int b) {
    Circle ca(ev.hull.vertices[a], ev.r);
    Circle cb(ev.hull.vertices[b], ev.r);
    CircleIntersections xs = circle_circle_intersections(ca, cb);
    if (xs.status != CircleIntersectStatus::Ok || xs.points.empty()) return std::nullopt;
    double limit = std::min(ev.sign * ev.x_of(a), ev.sign * ev.x_of(b)) + 1e-9 * ev.r;
    std::optional<Point2> best;
    double best_x = std::numeric_limits<double>::infinity();
    for (const Point2& p : xs.points) {
        double px = ev.sign * ev.frame.u.dot(p);
        if (px <= limit && px < best_x) {
            best = p;
            best_x = px;
        }
    }
    return best;
}

}  // namespace

std::optional<TangentPair> fixed_orientation_tangents(const ConvexHull& hull, double r,
                                                      OrientationAngle alpha) {
    if (r <= 0.0) throw std::invalid_argument("fixed_orientation_tangents: r must be positive");
    if (hull.size() == 0) throw std::invalid_argument("fixed_orientation_tangents: empty hull");
    Frame f(alpha.alpha);
    int i1 = 0, i2 = 0;
    double ymin = f.n.dot(hull.vertices[0]);
    double ymax = ymin;
    for (int i = 1; i < hull.size(); ++i) {
        double y = f.n.dot(hull.vertices[i]);
        if (y < ymin) {
            ymin = y;
            i1 = i;
        }
        if (y > ymax) {
            ymax = y;
            i2 = i;
        }
    }
    TangentPair t;
    t.owner1 = i1;
    t.owner2 = i2;
    t.y_tau1 = ymin + r;
    t.y_tau2 = ymax - r;
    if (t.y_tau1 < t.y_tau2) return std::nullopt;
    t.tau1 = Line(f.n, t.y_tau1);
    t.tau2 = Line(f.n, t.y_tau2);
    return t;
}

double half_circle_x(const ConvexHull& hull, double r, const Frame& frame, int support, double y,
                     ChainSide side) {
    double w = chord_half_width(r, y - frame.n.dot(hull.vertices[support]));
    return frame.u.dot(hull.vertices[support]) + (side == ChainSide::S1 ? -w : w);
}

ChainSkeleton build_chain_skeleton(const ConvexHull& hull, double r, const Frame& frame,
                                   double y_lo, double y_hi, ChainSide side) {
    ChainSkeleton out;
    int h = hull.size();
    if (h == 0) return out;
    EnvelopeEval ev{hull, frame, r, side_sign(side)};

    // Initial arc: extremal at the tau1 line, ties broken just below it.
    double probe = y_hi - std::max(1e-9 * (y_hi - y_lo), 1e-15);
    int start = 0;
    for (int k = 1; k < h; ++k) {
        double diff = ev.g(k, y_hi) - ev.g(start, y_hi);
        double tie = 1e-11 * (1.0 + r);
        if (diff > tie || (std::abs(diff) <= tie && ev.g(k, probe) > ev.g(start, probe))) {
            start = k;
        }
    }

    struct StackArc {
        int support;
        double takeover_y;  // top of the arc's visible interval
        Point2 breakpoint;  // crossing with the previous arc (unset for first)
    };
    std::vector<StackArc> stack;
    stack.push_back({start, y_hi, Point2{}});

    // S1 supports advance counter-clockwise (decreasing clockwise index),
    // S2 supports clockwise. Each candidate is compared against the stack
    // top; fully dominated arcs are popped (amortized O(h)).
    int step_dir = side == ChainSide::S1 ? -1 : 1;
    for (int step = 1; step < h; ++step) {
        int c = hull.cyclic_index(start + step_dir * step);
        bool drop = false;
        while (!stack.empty() && !drop) {
            const StackArc& top = stack.back();
            double vis_top = top.takeover_y;
            std::optional<Point2> v = side_crossing(ev, c, top.support);
            double y_v = v ? frame.n.dot(*v) : std::numeric_limits<double>::quiet_NaN();
            if (v && y_v > y_lo && y_v < vis_top) {
                double y_eval = 0.5 * (y_lo + y_v);
                if (ev.g(c, y_eval) > ev.g(top.support, y_eval)) {
                    stack.push_back({c, y_v, *v});
                }
                drop = true;  // candidate resolved either way
            } else {
                // No crossing inside the visible interval: the relation is
                // constant there.
                double y_eval = 0.5 * (std::min(y_lo, vis_top) + vis_top);
                if (ev.g(c, y_eval) > ev.g(top.support, y_eval)) {
                    stack.pop_back();
                } else {
                    drop = true;
                }
            }
        }
        if (stack.empty()) stack.push_back({c, y_hi, Point2{}});
    }

    out.supports.reserve(stack.size());
    for (size_t t = 0; t < stack.size(); ++t) {
        out.supports.push_back(stack[t].support);
        if (t > 0) out.breakpoints.push_back(stack[t].breakpoint);
    }
    return out;
}

std::vector<double> chain_breakpoint_heights(const ChainSkeleton& chain, const Frame& frame,
                                             double y_lo, double y_hi) {
    std::vector<double> hs;
    hs.reserve(chain.arc_count() + 1);
    hs.push_back(y_hi);
    for (const Point2& bp : chain.breakpoints) {
        double y = frame.n.dot(bp);
        hs.push_back(std::min(hs.back(), std::max(y, y_lo)));
    }
    hs.push_back(std::min(hs.back(), y_lo));
    return hs;
}

ConvexChain materialize_chain(const ConvexHull& hull, double r, const Frame& frame,
                              const ChainSkeleton& chain, ChainSide side, double y_lo,
                              double y_hi) {
    ConvexChain out;
    out.side = side;
    std::vector<double> hs = chain_breakpoint_heights(chain, frame, y_lo, y_hi);
    for (int t = 0; t < chain.arc_count(); ++t) {
        int k = chain.supports[t];
        double top = hs[t], bottom = hs[t + 1];
        Point2 a = frame.from_frame({half_circle_x(hull, r, frame, k, top, side), top});
        Point2 b = frame.from_frame({half_circle_x(hull, r, frame, k, bottom, side), bottom});
        Circle c(hull.vertices[k], r);
        CircularArc arc;
        arc.circle = c;
        arc.start_angle = wrap_angle(std::atan2(a.y - c.center.y, a.x - c.center.x));
        arc.end_angle = wrap_angle(std::atan2(b.y - c.center.y, b.x - c.center.x));
        arc.winding = side == ChainSide::S1 ? Winding::CounterClockwise : Winding::Clockwise;
        out.arcs.push_back({k, arc});
    }
    return out;
}

std::pair<ConvexChain, ConvexChain> build_convex_chains(const ConvexHull& hull, double r,
                                                        const TangentPair& tangents,
                                                        OrientationAngle alpha) {
    Frame f(alpha.alpha);
    double y_lo = tangents.y_tau2, y_hi = tangents.y_tau1;
    ChainSkeleton s1 = build_chain_skeleton(hull, r, f, y_lo, y_hi, ChainSide::S1);
    ChainSkeleton s2 = build_chain_skeleton(hull, r, f, y_lo, y_hi, ChainSide::S2);
    return {materialize_chain(hull, r, f, s1, ChainSide::S1, y_lo, y_hi),
            materialize_chain(hull, r, f, s2, ChainSide::S2, y_lo, y_hi)};
}

ChainOptimum minimize_chain_span(const ConvexHull& hull, double r, const Frame& frame,
                                 const ChainSkeleton& s1, const ChainSkeleton& s2, double y_lo,
                                 double y_hi) {
    if (s1.empty() || s2.empty())
        throw std::invalid_argument("minimize_chain_span: empty chain");

    std::vector<double> h1 = chain_breakpoint_heights(s1, frame, y_lo, y_hi);
    std::vector<double> h2 = chain_breakpoint_heights(s2, frame, y_lo, y_hi);

    auto y_center = [&](int k) { return frame.n.dot(hull.vertices[k]); };
    // d/dy of the span S1(y) - S2(y) when arcs (i, j) are active.
    auto span_deriv = [&](int i, int j, double y) {
        double wi = std::max(chord_half_width(r, y - y_center(i)), 1e-300);
        double wj = std::max(chord_half_width(r, y - y_center(j)), 1e-300);
        return (y - y_center(i)) / wi + (y - y_center(j)) / wj;
    };

    ChainOptimum opt;
    int a1 = 0, a2 = 0;
    double cur_top = y_hi;
    for (;;) {
        double bot1 = h1[a1 + 1];
        double bot2 = h2[a2 + 1];
        double cur_bot = std::max(bot1, bot2);
        int i = s1.supports[a1], j = s2.supports[a2];
        double d_top = span_deriv(i, j, cur_top);
        double d_bot = span_deriv(i, j, cur_bot);
        if (d_top <= 0.0) {
            // The derivative crossed zero at the top of this interval:
            // either the strip top or the chain vertex we just passed.
            if (cur_top >= y_hi) {
                opt.kind = MinimizerKind::PinnedTop;
                opt.y = y_hi;
            } else if (a1 > 0 && cur_top == h1[a1]) {
                opt.kind = MinimizerKind::VertexArc;
                opt.s1_vertex = a1 - 1;
                opt.y = cur_top;
            } else {
                opt.kind = MinimizerKind::ArcVertex;
                opt.s2_vertex = a2 - 1;
                opt.y = cur_top;
            }
            break;
        }
        if (d_bot < 0.0) {
            opt.kind = MinimizerKind::ArcArc;
            opt.y = std::clamp(0.5 * (y_center(i) + y_center(j)), cur_bot, cur_top);
            break;
        }
        if (cur_bot <= y_lo) {
            opt.kind = MinimizerKind::PinnedBottom;
            opt.y = y_lo;
            break;
        }
        if (bot1 >= bot2) ++a1;
        if (bot2 >= bot1) ++a2;
        cur_top = cur_bot;
    }

    // Clamp active arcs for boundary kinds.
    if (opt.kind == MinimizerKind::PinnedBottom) {
        a1 = s1.arc_count() - 1;
        a2 = s2.arc_count() - 1;
    } else if (opt.kind == MinimizerKind::PinnedTop) {
        a1 = 0;
        a2 = 0;
    }
    opt.s1_arc = a1;
    opt.s2_arc = a2;
    opt.s1_x = half_circle_x(hull, r, frame, s1.supports[a1], opt.y, ChainSide::S1);
    opt.s2_x = half_circle_x(hull, r, frame, s2.supports[a2], opt.y, ChainSide::S2);
    double span = opt.s1_x - opt.s2_x;
    if (span <= 0.0) {
        opt.point_feasible = true;
        Point2 mid = frame.from_frame({0.5 * (opt.s1_x + opt.s2_x), opt.y});
        opt.segment = Segment(mid, mid);
        opt.length = 0.0;
    } else {
        opt.segment = Segment(frame.from_frame({opt.s1_x, opt.y}),
                              frame.from_frame({opt.s2_x, opt.y}));
        opt.length = span;
    }
    return opt;
}

Segment shortest_segment_fixed_orientation(const ConvexChain& s1, const ConvexChain& s2,
                                           OrientationAngle alpha) {
    if (s1.arcs.empty() || s2.arcs.empty())
        throw std::invalid_argument("shortest_segment_fixed_orientation: no solution at alpha");
    Frame f(alpha.alpha);

    // Rebuild a center table and skeletons from the materialized chains.
    ConvexHull centers;
    ChainSkeleton k1, k2;
    for (const ChainArc& a : s1.arcs) {
        k1.supports.push_back(static_cast<int>(centers.vertices.size()));
        centers.vertices.push_back(a.arc.circle.center);
        centers.indices.push_back(a.support);
    }
    for (size_t t = 0; t + 1 < s1.arcs.size(); ++t)
        k1.breakpoints.push_back(s1.arcs[t].arc.end_point());
    for (const ChainArc& a : s2.arcs) {
        k2.supports.push_back(static_cast<int>(centers.vertices.size()));
        centers.vertices.push_back(a.arc.circle.center);
        centers.indices.push_back(a.support);
    }
    for (size_t t = 0; t + 1 < s2.arcs.size(); ++t)
        k2.breakpoints.push_back(s2.arcs[t].arc.end_point());

    double r = s1.arcs.front().arc.circle.radius;
    double y_hi = f.n.dot(s1.arcs.front().arc.start_point());
    double y_lo = f.n.dot(s1.arcs.back().arc.end_point());
    ChainOptimum opt = minimize_chain_span(centers, r, f, k1, k2, y_lo, y_hi);
    return opt.segment;
}

}  // namespace repseg
