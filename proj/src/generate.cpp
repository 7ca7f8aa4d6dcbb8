#include "repseg/generate.hpp"

#include <algorithm>
#include <stdexcept>

namespace repseg {

std::vector<Point2> gen_uniform_disk(int n, double radius, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_uniform_disk: n must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<Point2> pts;
    pts.reserve(n);
    while (static_cast<int>(pts.size()) < n) {
        double x = uniform(rng, -1.0, 1.0);
        double y = uniform(rng, -1.0, 1.0);
        if (x * x + y * y <= 1.0) pts.push_back({x * radius, y * radius});
    }
    return pts;
}

std::vector<Point2> gen_convex_position(int n, double radius, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("gen_convex_position: n must be >= 3");
    std::mt19937_64 rng(seed);
    // Valtr: random x and y coordinates split into up/down chains give edge
    // vectors that chain into a convex polygon once sorted by angle.
    auto deltas = [&](std::vector<double>& out) {
        std::vector<double> v(n);
        for (double& t : v) t = uniform01(rng);
        std::sort(v.begin(), v.end());
        double lo = v.front(), hi = v.back();
        double last_top = lo, last_bot = lo;
        for (int i = 1; i + 1 < n; ++i) {
            if (rng() & 1) {
                out.push_back(v[i] - last_top);
                last_top = v[i];
            } else {
                out.push_back(last_bot - v[i]);
                last_bot = v[i];
            }
        }
        out.push_back(hi - last_top);
        out.push_back(last_bot - hi);
    };
    std::vector<double> dx, dy;
    deltas(dx);
    deltas(dy);
    std::shuffle(dy.begin(), dy.end(), rng);
    std::vector<Vec2> edges(n);
    for (int i = 0; i < n; ++i) edges[i] = {dx[i], dy[i]};
    std::sort(edges.begin(), edges.end(), [](const Vec2& a, const Vec2& b) {
        return std::atan2(a.y, a.x) < std::atan2(b.y, b.x);
    });
    std::vector<Point2> pts(n);
    Point2 cur{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        pts[i] = cur;
        cur += edges[i];
    }
    // Normalize to the requested radius around the centroid.
    Point2 c{0.0, 0.0};
    for (const Point2& p : pts) c += p;
    c = c / static_cast<double>(n);
    double scale = 0.0;
    for (const Point2& p : pts) scale = std::max(scale, distance(p, c));
    if (scale == 0.0) scale = 1.0;
    for (Point2& p : pts) p = (p - c) * (radius / scale);
    return pts;
}

std::vector<Point2> gen_collinear(int n, double length, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("gen_collinear: n must be >= 2");
    std::mt19937_64 rng(seed);
    double theta = uniform(rng, 0.0, kPi);
    Vec2 d = dir(theta);
    Point2 base{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    std::vector<Point2> pts;
    pts.reserve(n);
    pts.push_back(base);
    pts.push_back(base + d * length);
    for (int i = 2; i < n; ++i) pts.push_back(base + d * uniform(rng, 0.0, length));
    return pts;
}

std::vector<Point2> gen_clustered(int n, int clusters, double radius, std::uint64_t seed) {
    if (n < 1 || clusters < 1) throw std::invalid_argument("gen_clustered: bad sizes");
    std::mt19937_64 rng(seed);
    std::vector<Point2> centers = gen_uniform_disk(clusters, radius, rng());
    std::vector<Point2> pts;
    pts.reserve(n);
    double spread = radius / (4.0 * clusters);
    for (int i = 0; i < n; ++i) {
        const Point2& c = centers[i % clusters];
        double a = uniform(rng, 0.0, 2.0 * kPi);
        double rr = spread * std::sqrt(uniform01(rng));
        pts.push_back(c + dir(a) * rr);
    }
    return pts;
}

kinetic::Trajectory gen_trajectories(int n, int timestamps, double spawn_radius,
                                     std::uint64_t seed) {
    if (n < 1 || timestamps < 2) throw std::invalid_argument("gen_trajectories: bad sizes");
    std::mt19937_64 rng(seed);
    kinetic::Trajectory traj;
    traj.positions.resize(n);
    for (int p = 0; p < n; ++p) {
        Point2 pos = gen_uniform_disk(1, spawn_radius, rng())[0];
        Vec2 vel = dir(uniform(rng, 0.0, 2.0 * kPi)) * uniform(rng, 0.0, 0.9);
        traj.positions[p].reserve(timestamps);
        traj.positions[p].push_back(pos);
        for (int i = 1; i < timestamps; ++i) {
            vel = vel * 0.8 + dir(uniform(rng, 0.0, 2.0 * kPi)) * uniform(rng, 0.0, 0.5);
            double speed = vel.norm();
            if (speed > 0.999) vel = vel * (0.999 / speed);
            pos += vel;
            traj.positions[p].push_back(pos);
        }
    }
    return traj;
}

}  // namespace repseg
