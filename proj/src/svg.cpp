#include "repseg/svg.hpp"

#include "repseg/chains.hpp"

#include <algorithm>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <sstream>

namespace repseg {
namespace svg {

namespace {

struct View {
    double min_x, min_y, max_x, max_y;
    double scale, pad;

    static View fit(const std::vector<Point2>& pts, double r) {
        View v{};
        v.min_x = v.min_y = std::numeric_limits<double>::infinity();
        v.max_x = v.max_y = -v.min_x;
        for (const Point2& p : pts) {
            v.min_x = std::min(v.min_x, p.x);
            v.max_x = std::max(v.max_x, p.x);
            v.min_y = std::min(v.min_y, p.y);
            v.max_y = std::max(v.max_y, p.y);
        }
        v.min_x -= r;
        v.min_y -= r;
        v.max_x += r;
        v.max_y += r;
        double span = std::max({v.max_x - v.min_x, v.max_y - v.min_y, 1e-9});
        v.scale = 760.0 / span;
        v.pad = 20.0;
        return v;
    }
    double width() const { return (max_x - min_x) * scale + 2 * pad; }
    double height() const { return (max_y - min_y) * scale + 2 * pad; }
    // World to pixel, y pointing up in world coordinates.
    std::pair<double, double> map(const Point2& p) const {
        return {(p.x - min_x) * scale + pad, (max_y - p.y) * scale + pad};
    }
};

void fmt(std::ostringstream& out, const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    out << buf;
}

void emit_polyline(std::ostringstream& out, const View& v, const std::vector<Point2>& pts,
                   const char* cls, const char* color) {
    if (pts.size() < 2) return;
    out << "<path class=\"" << cls << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" d=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        auto [x, y] = v.map(pts[i]);
        fmt(out, "%c%.4f %.4f", i == 0 ? 'M' : 'L', x, y);
    }
    out << "\"/>\n";
}

std::vector<Point2> sample_arc(const CircularArc& arc, int n) {
    std::vector<Point2> pts;
    pts.reserve(n + 1);
    for (int i = 0; i <= n; ++i) pts.push_back(arc.point_at(static_cast<double>(i) / n));
    return pts;
}

void emit_line_across(std::ostringstream& out, const View& v, const Line& line,
                      const char* cls, const char* color, double reach) {
    Point2 base = line.normal * line.offset;
    Vec2 d = line.direction();
    std::vector<Point2> pts{base - d * reach, base + d * reach};
    emit_polyline(out, v, pts, cls, color);
}

}  // namespace

std::string render_instance(const std::vector<Point2>& points, double r,
                            const SweepResult& result) {
    View v = View::fit(points, r);
    std::ostringstream out;
    fmt(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%.0f\" "
             "height=\"%.0f\">\n", v.width(), v.height());

    ConvexHull hull = convex_hull(points);
    // Exactly one circle element per hull point.
    for (int i = 0; i < hull.size(); ++i) {
        auto [x, y] = v.map(hull.vertices[i]);
        fmt(out, "<circle class=\"disk\" cx=\"%.4f\" cy=\"%.4f\" r=\"%.4f\" fill=\"none\" "
                 "stroke=\"#8ab\" stroke-width=\"1\"/>\n", x, y, r * v.scale);
    }

    // Tangents and chains at the reported orientation.
    if (result.status == SweepResult::Status::Segment && hull.size() >= 2) {
        auto tangents = fixed_orientation_tangents(hull, r, result.best_orientation);
        if (tangents) {
            double reach = (v.max_x - v.min_x) + (v.max_y - v.min_y);
            emit_line_across(out, v, tangents->tau1, "tau1", "#c90", reach);
            emit_line_across(out, v, tangents->tau2, "tau2", "#c90", reach);
            auto [s1, s2] = build_convex_chains(hull, r, *tangents, result.best_orientation);
            for (const ChainArc& a : s1.arcs)
                emit_polyline(out, v, sample_arc(a.arc, 64), "chain-s1", "#d33");
            for (const ChainArc& a : s2.arcs)
                emit_polyline(out, v, sample_arc(a.arc, 64), "chain-s2", "#33d");
        }
    }

    // Input points as small squares (the circle count stays the hull size).
    for (const Point2& p : points) {
        auto [x, y] = v.map(p);
        fmt(out, "<rect class=\"pt\" x=\"%.4f\" y=\"%.4f\" width=\"4\" height=\"4\" "
                 "fill=\"#222\"/>\n", x - 2.0, y - 2.0);
    }

    if (result.status == SweepResult::Status::Segment && result.segment) {
        auto [x1, y1] = v.map(result.segment->a);
        auto [x2, y2] = v.map(result.segment->b);
        fmt(out, "<line class=\"segment\" x1=\"%.4f\" y1=\"%.4f\" x2=\"%.4f\" y2=\"%.4f\" "
                 "stroke=\"#06c\" stroke-width=\"3\"/>\n", x1, y1, x2, y2);
    } else if (result.status == SweepResult::Status::Point && result.segment) {
        auto [x, y] = v.map(result.segment->a);
        fmt(out, "<rect class=\"point-answer\" x=\"%.4f\" y=\"%.4f\" width=\"8\" height=\"8\" "
                 "fill=\"#06c\"/>\n", x - 4.0, y - 4.0);
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_frame(const std::vector<Point2>& points, double r, double t,
                         const std::optional<Segment>& output) {
    View v = View::fit(points, r);
    std::ostringstream out;
    fmt(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%.0f\" "
             "height=\"%.0f\">\n", v.width(), v.height());
    fmt(out, "<!-- t=%.6f -->\n", t);
    for (const Point2& p : points) {
        auto [x, y] = v.map(p);
        fmt(out, "<rect class=\"pt\" x=\"%.4f\" y=\"%.4f\" width=\"4\" height=\"4\" "
                 "fill=\"#222\"/>\n", x - 2.0, y - 2.0);
    }
    if (output) {
        auto [x1, y1] = v.map(output->a);
        auto [x2, y2] = v.map(output->b);
        fmt(out, "<line class=\"segment\" x1=\"%.4f\" y1=\"%.4f\" x2=\"%.4f\" y2=\"%.4f\" "
                 "stroke=\"#06c\" stroke-width=\"3\"/>\n", x1, y1, x2, y2);
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace svg
}  // namespace repseg
