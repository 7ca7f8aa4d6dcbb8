#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace repseg {

// Global predicate tolerance for geometric comparisons.
inline constexpr double kEps = 1e-9;
inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm_sq() const { return x * x + y * y; }
    // Rotated by +pi/2.
    Vec2 perp() const { return {-y, x}; }
    Vec2 normalized() const {
        double n = norm();
        if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
        return {x / n, y / n};
    }
};

using Point2 = Vec2;

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double distance(const Point2& a, const Point2& b) { return (a - b).norm(); }
inline bool almost_equal(double a, double b, double eps = kEps) { return std::abs(a - b) <= eps; }
inline bool almost_equal(const Vec2& a, const Vec2& b, double eps = kEps) {
    return almost_equal(a.x, b.x, eps) && almost_equal(a.y, b.y, eps);
}

// Unit vector at angle theta (radians).
inline Vec2 dir(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Wraps an angle into [0, 2*pi).
double wrap_angle(double theta);

// An orientation of an (undirected) line or segment, normalized into [0, pi).
struct OrientationAngle {
    double alpha = 0.0;

    OrientationAngle() = default;
    explicit OrientationAngle(double a);

    // Direction of the orientation.
    Vec2 u() const { return dir(alpha); }
    // u rotated by +pi/2.
    Vec2 n() const { return dir(alpha).perp(); }
};

// Smallest absolute difference between two orientations, result in [0, pi/2].
double orientation_distance(OrientationAngle a, OrientationAngle b);

// Orientation of a (nonzero) vector.
OrientationAngle orientation_of(const Vec2& v);

struct Circle {
    Point2 center;
    double radius = 0.0;

    Circle() = default;
    Circle(Point2 c, double r) : center(c), radius(r) {}

    Point2 at(double theta) const { return center + dir(theta) * radius; }
    bool contains(const Point2& p, double eps = kEps) const {
        return distance(p, center) <= radius + eps;
    }
};

enum class Winding { Clockwise, CounterClockwise };

// Arc of a supporting circle; angles are world angles on the circle.
// For CounterClockwise the arc runs from start_angle increasing to end_angle,
// for Clockwise decreasing. A full circle is flagged explicitly.
struct CircularArc {
    Circle circle;
    double start_angle = 0.0;
    double end_angle = 0.0;
    Winding winding = Winding::CounterClockwise;
    bool full_circle = false;

    Point2 start_point() const { return circle.at(start_angle); }
    Point2 end_point() const { return circle.at(end_angle); }
    // Signed angular extent in [0, 2*pi]; positive regardless of winding.
    double angular_extent() const;
    // Point at parameter t in [0, 1] along the arc.
    Point2 point_at(double t) const;
};

struct Segment {
    Point2 a;
    Point2 b;

    Segment() = default;
    Segment(Point2 a_, Point2 b_) : a(a_), b(b_) {}
    double length() const { return distance(a, b); }
};

// Line in signed distance form: normal . p = offset, |normal| = 1.
struct Line {
    Vec2 normal{0.0, 1.0};
    double offset = 0.0;

    Line() = default;
    Line(Vec2 n_, double offset_) : normal(n_.normalized()), offset(offset_) {}
    static Line through(const Point2& p, const Vec2& direction) {
        Vec2 n = direction.perp().normalized();
        return Line(n, n.dot(p));
    }
    double signed_distance(const Point2& p) const { return normal.dot(p) - offset; }
    Vec2 direction() const { return normal.perp(); }
};

// Rotating frame for a sweep orientation alpha: u points along the
// orientation, n = u rotated by +pi/2. Frame coordinates (s, t) of p are
// s = p.u, t = p.n.
struct Frame {
    double alpha = 0.0;
    Vec2 u{1.0, 0.0};
    Vec2 n{0.0, 1.0};

    Frame() = default;
    explicit Frame(double a) : alpha(a), u(dir(a)), n(dir(a).perp()) {}
    Vec2 to_frame(const Point2& p) const { return {p.dot(u), p.dot(n)}; }
    Point2 from_frame(const Vec2& q) const { return u * q.x + n * q.y; }
};

// --- Operations ---------------------------------------------------------

enum class CircleIntersectStatus { Ok, Coincident };

struct CircleIntersections {
    CircleIntersectStatus status = CircleIntersectStatus::Ok;
    // 0, 1 (tangency) or 2 points, sorted by angle on the first circle.
    std::vector<Point2> points;
};

// Intersection points of two circle boundaries. Coincident circles are an
// error value; tangency yields one point.
CircleIntersections circle_circle_intersections(const Circle& c1, const Circle& c2);

double point_segment_distance(const Point2& p, const Segment& s);

// The two lines of orientation alpha tangent to c. `first` supports c from
// the +n(alpha) side (upper), `second` from the -n(alpha) side (lower).
std::pair<Line, Line> tangent_lines_at_orientation(const Circle& c, OrientationAngle alpha);

enum class BitangentStatus { Ok, Overlapping, Coincident };

struct InnerBitangents {
    BitangentStatus status = BitangentStatus::Ok;
    std::vector<Line> lines;  // 0, 1 (internal tangency) or 2, sorted by angle
};

// Inner bitangents of two equal-radius circles (circles on opposite sides).
// Unequal radii are unsupported and throw.
InnerBitangents inner_bitangents(const Circle& c1, const Circle& c2);

// Minimal enclosing disk (radius 0 allowed). Throws on empty input.
Circle smallest_enclosing_disk(const std::vector<Point2>& points);

// --- Sweep trigonometry helpers ------------------------------------------
//
// Events in the rotational sweep reduce to conditions of the form
//   g . n(alpha) = c    or    g . u(alpha) = c
// for a fixed vector g. These helpers enumerate solutions in an interval.

// All alpha in (lo, hi] with g . n(alpha) = c, ascending.
std::vector<double> solve_dot_n(const Vec2& g, double c, double lo, double hi);
// All alpha in (lo, hi] with g . u(alpha) = c, ascending.
std::vector<double> solve_dot_u(const Vec2& g, double c, double lo, double hi);

}  // namespace repseg
