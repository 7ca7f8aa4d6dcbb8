#include "repseg/geom.hpp"

#include <algorithm>
#include <random>

namespace repseg {

double wrap_angle(double theta) {
    double t = std::fmod(theta, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    if (t >= 2.0 * kPi) t = 0.0;
    return t;
}

OrientationAngle::OrientationAngle(double a) {
    double t = std::fmod(a, kPi);
    if (t < 0.0) t += kPi;
    if (t >= kPi) t = 0.0;
    alpha = t;
}

double orientation_distance(OrientationAngle a, OrientationAngle b) {
    double d = std::abs(a.alpha - b.alpha);
    return std::min(d, kPi - d);
}

OrientationAngle orientation_of(const Vec2& v) {
    if (v.norm() == 0.0) throw std::invalid_argument("orientation of zero vector");
    return OrientationAngle(std::atan2(v.y, v.x));
}

double CircularArc::angular_extent() const {
    if (full_circle) return 2.0 * kPi;
    double w = winding == Winding::CounterClockwise ? wrap_angle(end_angle - start_angle)
                                                    : wrap_angle(start_angle - end_angle);
    return w;
}

Point2 CircularArc::point_at(double t) const {
    double ext = angular_extent();
    double a = winding == Winding::CounterClockwise ? start_angle + t * ext : start_angle - t * ext;
    return circle.at(a);
}

CircleIntersections circle_circle_intersections(const Circle& c1, const Circle& c2) {
    if (c1.radius <= 0.0 || c2.radius <= 0.0)
        throw std::invalid_argument("circle radius must be positive");
    CircleIntersections out;
    Vec2 delta = c2.center - c1.center;
    double d = delta.norm();
    double scale = c1.radius + c2.radius;
    if (d <= kEps * scale && std::abs(c1.radius - c2.radius) <= kEps * scale) {
        out.status = CircleIntersectStatus::Coincident;
        return out;
    }
    if (d > scale + kEps || d < std::abs(c1.radius - c2.radius) - kEps || d == 0.0) {
        return out;  // disjoint or nested
    }
    double a = (c1.radius * c1.radius - c2.radius * c2.radius + d * d) / (2.0 * d);
    double h2 = c1.radius * c1.radius - a * a;
    Vec2 axis = delta / d;
    Point2 mid = c1.center + axis * a;
    if (h2 <= 0.0) {
        out.points.push_back(mid);
        return out;
    }
    double h = std::sqrt(h2);
    Point2 p1 = mid + axis.perp() * h;
    Point2 p2 = mid - axis.perp() * h;
    double a1 = wrap_angle(std::atan2(p1.y - c1.center.y, p1.x - c1.center.x));
    double a2 = wrap_angle(std::atan2(p2.y - c1.center.y, p2.x - c1.center.x));
    if (a1 <= a2) {
        out.points = {p1, p2};
    } else {
        out.points = {p2, p1};
    }
    return out;
}

double point_segment_distance(const Point2& p, const Segment& s) {
    Vec2 d = s.b - s.a;
    double len2 = d.norm_sq();
    if (len2 == 0.0) return distance(p, s.a);
    double t = std::clamp((p - s.a).dot(d) / len2, 0.0, 1.0);
    return distance(p, s.a + d * t);
}

std::pair<Line, Line> tangent_lines_at_orientation(const Circle& c, OrientationAngle alpha) {
    Vec2 n = alpha.n();
    double center_off = n.dot(c.center);
    return {Line(n, center_off + c.radius), Line(n, center_off - c.radius)};
}

InnerBitangents inner_bitangents(const Circle& c1, const Circle& c2) {
    if (std::abs(c1.radius - c2.radius) > kEps * (c1.radius + c2.radius))
        throw std::invalid_argument("inner_bitangents requires equal radii");
    InnerBitangents out;
    double r = 0.5 * (c1.radius + c2.radius);
    Vec2 delta = c2.center - c1.center;
    double d = delta.norm();
    if (d <= kEps * r) {
        out.status = BitangentStatus::Coincident;
        return out;
    }
    Point2 mid = (c1.center + c2.center) * 0.5;
    if (d < 2.0 * r - kEps) {
        out.status = BitangentStatus::Overlapping;
        return out;
    }
    Vec2 axis = delta / d;
    if (d <= 2.0 * r + kEps) {
        // Internal tangency: the single line through the touch point.
        out.lines.push_back(Line::through(mid, axis.perp()));
        return out;
    }
    double phi = std::asin(std::clamp(2.0 * r / d, -1.0, 1.0));
    double base = std::atan2(axis.y, axis.x);
    Line l1 = Line::through(mid, dir(base + phi));
    Line l2 = Line::through(mid, dir(base - phi));
    if (orientation_of(l1.direction()).alpha <= orientation_of(l2.direction()).alpha) {
        out.lines = {l1, l2};
    } else {
        out.lines = {l2, l1};
    }
    return out;
}

namespace {

Circle disk_two_points(const Point2& a, const Point2& b) {
    return Circle((a + b) * 0.5, 0.5 * distance(a, b));
}

Circle disk_three_points(const Point2& a, const Point2& b, const Point2& c) {
    double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    double span = std::max({distance(a, b), distance(b, c), distance(a, c)});
    if (std::abs(d) < 1e-14 * (1.0 + span * span)) {
        // Nearly collinear: the farthest pair defines the disk.
        Circle best = disk_two_points(a, b);
        Circle bc = disk_two_points(b, c);
        Circle ac = disk_two_points(a, c);
        if (bc.radius > best.radius) best = bc;
        if (ac.radius > best.radius) best = ac;
        return best;
    }
    double ax = a.norm_sq(), bx = b.norm_sq(), cx = c.norm_sq();
    double ux = (ax * (b.y - c.y) + bx * (c.y - a.y) + cx * (a.y - b.y)) / d;
    double uy = (ax * (c.x - b.x) + bx * (a.x - c.x) + cx * (b.x - a.x)) / d;
    Point2 center{ux, uy};
    double r = std::max({distance(center, a), distance(center, b), distance(center, c)});
    return Circle(center, r);
}

bool in_disk(const Circle& c, const Point2& p) {
    return distance(p, c.center) <= c.radius + 1e-10 * (1.0 + c.radius);
}

}  // namespace

Circle smallest_enclosing_disk(const std::vector<Point2>& points) {
    if (points.empty()) throw std::invalid_argument("smallest_enclosing_disk: empty input");
    std::vector<Point2> pts = points;
    std::mt19937_64 rng(0x5eb2d15cull);
    std::shuffle(pts.begin(), pts.end(), rng);

    Circle disk(pts[0], 0.0);
    for (size_t i = 1; i < pts.size(); ++i) {
        if (in_disk(disk, pts[i])) continue;
        disk = Circle(pts[i], 0.0);
        for (size_t j = 0; j < i; ++j) {
            if (in_disk(disk, pts[j])) continue;
            disk = disk_two_points(pts[i], pts[j]);
            for (size_t k = 0; k < j; ++k) {
                if (in_disk(disk, pts[k])) continue;
                disk = disk_three_points(pts[i], pts[j], pts[k]);
            }
        }
    }
    return disk;
}

namespace {

// Appends all alpha in (lo, hi] with cos(alpha + phase) = q (|q| clamped).
std::vector<double> solve_phase_cos(double phase, double q, double lo, double hi) {
    std::vector<double> out;
    if (q > 1.0 + 1e-12 || q < -1.0 - 1e-12) return out;
    double base = std::acos(std::clamp(q, -1.0, 1.0));
    for (double theta : {base, -base}) {
        double a = theta - phase;
        double k = std::ceil((lo - a) / (2.0 * kPi) - 1e-12);
        double cand = a + k * 2.0 * kPi;
        // Enforce strict lower bound.
        while (cand <= lo) cand += 2.0 * kPi;
        while (cand <= hi) {
            out.push_back(cand);
            cand += 2.0 * kPi;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-14; }),
              out.end());
    return out;
}

}  // namespace

std::vector<double> solve_dot_n(const Vec2& g, double c, double lo, double hi) {
    // g.n(alpha) = -gx sin a + gy cos a = |g| cos(a + phi), phi = atan2(gx, gy)
    double r = g.norm();
    if (r < 1e-300) return {};
    return solve_phase_cos(std::atan2(g.x, g.y), c / r, lo, hi);
}

std::vector<double> solve_dot_u(const Vec2& g, double c, double lo, double hi) {
    // g.u(alpha) = gx cos a + gy sin a = |g| cos(a - psi), psi = atan2(gy, gx)
    double r = g.norm();
    if (r < 1e-300) return {};
    return solve_phase_cos(-std::atan2(g.y, g.x), c / r, lo, hi);
}

}  // namespace repseg
