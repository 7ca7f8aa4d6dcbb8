#include "repseg/oracle.hpp"

#include <algorithm>
#include <limits>

namespace repseg {
namespace oracle {

bool validate_segment(const std::vector<Point2>& points, double r, const Segment& s) {
    for (const Point2& p : points) {
        if (point_segment_distance(p, s) > r + 1e-9) return false;
    }
    return true;
}

namespace {

struct StripEval {
    Frame frame;
    const std::vector<Point2>* points;
    double r;
    double y_lo = 0.0, y_hi = 0.0;
    mutable long evals = 0;

    // Minimal segment at offset y covers [min_i b_i, max_i a_i]; the span is
    // max_i a_i - min_i b_i (negative means a point suffices).
    struct Span {
        double left, right;
    };
    Span span(double y) const {
        ++evals;
        double right = -std::numeric_limits<double>::infinity();
        double left = std::numeric_limits<double>::infinity();
        for (const Point2& p : *points) {
            double dy = y - frame.n.dot(p);
            double w2 = r * r - dy * dy;
            double w = w2 <= 0.0 ? 0.0 : std::sqrt(w2);
            double x = frame.u.dot(p);
            right = std::max(right, x - w);
            left = std::min(left, x + w);
        }
        return {left, right};
    }
    double span_len(double y) const {
        Span s = span(y);
        return s.right - s.left;
    }
};

OracleResult fixed_orientation_impl(const std::vector<Point2>& points, double r,
                                    OrientationAngle alpha, int grid_n, bool refine) {
    if (grid_n < 2) throw std::invalid_argument("brute_force_fixed_orientation: grid_n >= 2");
    if (points.empty()) throw std::invalid_argument("brute_force_fixed_orientation: no points");
    StripEval ev;
    ev.frame = Frame(alpha.alpha);
    ev.points = &points;
    ev.r = r;
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const Point2& p : points) {
        double y = ev.frame.n.dot(p);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    ev.y_lo = ymax - r;
    ev.y_hi = ymin + r;

    OracleResult out;
    out.orientation = alpha;
    if (ev.y_hi < ev.y_lo) {
        out.feasible = false;
        return out;
    }
    double best_y = ev.y_lo, best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid_n; ++i) {
        double y = ev.y_lo + (ev.y_hi - ev.y_lo) * i / grid_n;
        double s = ev.span_len(y);
        if (s < best) {
            best = s;
            best_y = y;
        }
    }
    double step = (ev.y_hi - ev.y_lo) / grid_n;
    out.tolerance = step;
    if (refine && step > 0.0) {
        double lo = std::max(ev.y_lo, best_y - step);
        double hi = std::min(ev.y_hi, best_y + step);
        while (hi - lo > 1e-13 * (1.0 + std::abs(hi))) {
            double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (ev.span_len(m1) < ev.span_len(m2)) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        double y = 0.5 * (lo + hi);
        if (ev.span_len(y) < best) {
            best = ev.span_len(y);
            best_y = y;
        }
        out.tolerance = 1e-12;
    }
    StripEval::Span s = ev.span(best_y);
    out.feasible = true;
    out.cost = ev.evals;
    if (s.right <= s.left) {
        Point2 mid = ev.frame.from_frame({0.5 * (s.left + s.right), best_y});
        out.segment = Segment(mid, mid);
        out.length = 0.0;
    } else {
        out.segment = Segment(ev.frame.from_frame({s.left, best_y}),
                              ev.frame.from_frame({s.right, best_y}));
        out.length = s.right - s.left;
    }
    return out;
}

}  // namespace

OracleResult brute_force_fixed_orientation(const std::vector<Point2>& points, double r,
                                           OrientationAngle alpha, int grid_n, bool refine) {
    return fixed_orientation_impl(points, r, alpha, grid_n, refine);
}

OracleResult brute_force_shortest(const std::vector<Point2>& points, double r,
                                  int k_orientations, int offset_grid) {
    if (k_orientations < 16) throw std::invalid_argument("brute_force_shortest: k >= 16");
    long cost = 0;
    std::vector<double> grid_lengths(k_orientations,
                                     std::numeric_limits<double>::infinity());
    OracleResult best;
    best.length = std::numeric_limits<double>::infinity();
    int best_k = -1;
    for (int k = 0; k < k_orientations; ++k) {
        OrientationAngle alpha(kPi * k / k_orientations);
        OracleResult res = fixed_orientation_impl(points, r, alpha, offset_grid, true);
        cost += res.cost;
        if (!res.feasible) continue;
        grid_lengths[k] = res.length;
        if (res.length < best.length) {
            best = res;
            best_k = k;
        }
    }
    if (best_k < 0) {
        OracleResult none;
        none.feasible = false;
        none.cost = cost;
        return none;
    }

    auto eval = [&](double a) {
        OracleResult res =
            fixed_orientation_impl(points, r, OrientationAngle(a), offset_grid, true);
        cost += res.cost;
        return res;
    };
    auto len_of = [](const OracleResult& o) {
        return o.feasible ? o.length : std::numeric_limits<double>::infinity();
    };

    // Refine windows of two grid steps around the best local minima of the
    // cyclic grid sequence: distinct basins can differ by less than the
    // grid's value resolution, so picking by raw value alone can miss the
    // global basin entirely. A window need not be unimodal, so each one is
    // sampled densely before the golden section.
    std::vector<int> seeds;
    for (int k = 0; k < k_orientations; ++k) {
        double v = grid_lengths[k];
        if (!std::isfinite(v)) continue;
        double prev = grid_lengths[(k + k_orientations - 1) % k_orientations];
        double next = grid_lengths[(k + 1) % k_orientations];
        if (v <= prev && v <= next) seeds.push_back(k);
    }
    std::sort(seeds.begin(), seeds.end(),
              [&](int a, int b) { return grid_lengths[a] < grid_lengths[b]; });
    if (seeds.size() > 8) seeds.resize(8);
    if (seeds.empty()) seeds.push_back(best_k);

    double step = kPi / k_orientations;
    for (int s : seeds) {
        double center = kPi * s / k_orientations;
        double w_lo = center - step, w_hi = center + step;
        const int kDense = 64;
        double cbest = std::numeric_limits<double>::infinity(), cbest_a = center;
        for (int i = 0; i <= kDense; ++i) {
            double a = w_lo + (w_hi - w_lo) * i / kDense;
            double v = len_of(eval(a));
            if (v < cbest) {
                cbest = v;
                cbest_a = a;
            }
        }
        double lo = cbest_a - (w_hi - w_lo) / kDense;
        double hi = cbest_a + (w_hi - w_lo) / kDense;
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        OracleResult f1 = eval(x1), f2 = eval(x2);
        for (int it = 0; it < 60; ++it) {
            if (len_of(f1) < len_of(f2)) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = eval(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = eval(x2);
            }
        }
        for (const OracleResult& cand : {f1, f2}) {
            if (cand.feasible && cand.length < best.length) best = cand;
        }
    }
    best.cost = cost;
    return best;
}

namespace {

// Angular interval of the query circle lying inside one disk, as
// [enter, exit] with exit - enter in [0, 2*pi]; full = whole circle inside.
struct ArcInterval {
    bool empty = false;
    bool full = false;
    double enter = 0.0, exit = 0.0;
};

ArcInterval circle_in_disk_interval(const Circle& query, const Circle& disk) {
    ArcInterval out;
    Vec2 g = query.center - disk.center;
    double d = g.norm();
    if (d < 1e-14) {
        out.full = query.radius <= disk.radius;
        out.empty = !out.full;
        return out;
    }
    // Point query.at(theta) is inside the disk iff cos(theta - angle(g)) <= q.
    double q = (disk.radius * disk.radius - d * d - query.radius * query.radius) /
               (2.0 * query.radius * d);
    if (q >= 1.0) {
        out.full = true;
        return out;
    }
    if (q <= -1.0) {
        out.empty = true;
        return out;
    }
    double phi = std::atan2(g.y, g.x) + kPi;  // midpoint: toward the disk center
    double beta = std::acos(-q);              // angular half-width
    out.enter = phi - beta;
    out.exit = phi + beta;
    return out;
}

}  // namespace

std::optional<CircularScanHit> linear_scan_circular_query(const std::vector<Circle>& disks,
                                                          const Circle& c, const Point2& q,
                                                          Winding winding) {
    if (disks.empty()) throw std::invalid_argument("linear_scan_circular_query: no disks");
    double theta_q = std::atan2(q.y - c.center.y, q.x - c.center.x);
    std::optional<CircularScanHit> best;
    for (size_t m = 0; m < disks.size(); ++m) {
        ArcInterval iv = circle_in_disk_interval(c, disks[m]);
        if (iv.full) continue;  // this disk never stops the ray
        double travel;
        if (iv.empty) {
            travel = 0.0;  // q is on/outside this disk already
        } else if (winding == Winding::CounterClockwise) {
            travel = wrap_angle(iv.exit - theta_q);
        } else {
            travel = wrap_angle(theta_q - iv.enter);
        }
        double boundary = winding == Winding::CounterClockwise ? iv.exit : iv.enter;
        Point2 hit = iv.empty ? q : c.at(boundary);
        if (!best || travel < best->travel) {
            best = CircularScanHit{hit, static_cast<int>(m), travel};
        }
    }
    return best;
}

LineScanResult linear_scan_line_query(const std::vector<Circle>& disks, const Line& line) {
    LineScanResult out;
    if (disks.empty()) return out;
    Point2 p0 = line.normal * line.offset;
    Vec2 d = line.direction();

    struct Interval {
        bool ok;
        double lo, hi;
    };
    auto disk_interval = [&](const Circle& c) -> Interval {
        double dist = line.signed_distance(c.center);
        double h2 = c.radius * c.radius - dist * dist;
        if (h2 < -1e-12 * (1.0 + c.radius * c.radius)) return {false, 0.0, 0.0};
        double mid = d.dot(c.center - p0);
        double h = h2 <= 0.0 ? 0.0 : std::sqrt(h2);
        return {true, mid - h, mid + h};
    };

    // Right-to-left scan maintaining the running intersection.
    double maxlo = -std::numeric_limits<double>::infinity();
    double minhi = std::numeric_limits<double>::infinity();
    int lo_owner = -1, hi_owner = -1;
    for (int m = static_cast<int>(disks.size()) - 1; m >= 0; --m) {
        Interval iv = disk_interval(disks[m]);
        if (!iv.ok) {
            if (lo_owner < 0) return out;  // first disk already misses the line
            out.kind = LineScanResult::Kind::Candidate;
            out.left = p0 + d * maxlo;
            out.left_owner = lo_owner;
            return out;
        }
        double new_maxlo = maxlo, new_minhi = minhi;
        int new_lo = lo_owner, new_hi = hi_owner;
        if (iv.lo > new_maxlo) {
            new_maxlo = iv.lo;
            new_lo = m;
        }
        if (iv.hi < new_minhi) {
            new_minhi = iv.hi;
            new_hi = m;
        }
        if (new_maxlo > new_minhi) {
            // Became empty here: the best left endpoint seen so far is the
            // candidate (no disk further left can beat it).
            out.kind = LineScanResult::Kind::Candidate;
            out.left = p0 + d * new_maxlo;
            out.left_owner = new_lo;
            return out;
        }
        maxlo = new_maxlo;
        minhi = new_minhi;
        lo_owner = new_lo;
        hi_owner = new_hi;
    }
    out.kind = LineScanResult::Kind::Both;
    out.left = p0 + d * maxlo;
    out.right = p0 + d * minhi;
    out.left_owner = lo_owner;
    out.right_owner = hi_owner;
    return out;
}

}  // namespace oracle
}  // namespace repseg
