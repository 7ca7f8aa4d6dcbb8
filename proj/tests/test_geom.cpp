#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "repseg/generate.hpp"
#include "repseg/geom.hpp"

#include <random>

using namespace repseg;

TEST_CASE("circle_circle_intersections basic cases") {
    Circle a({0, 0}, 1), b({1, 0}, 1);
    auto res = circle_circle_intersections(a, b);
    REQUIRE(res.status == CircleIntersectStatus::Ok);
    REQUIRE(res.points.size() == 2);
    CHECK(res.points[0].x == doctest::Approx(0.5));
    CHECK(res.points[0].y == doctest::Approx(std::sqrt(3.0) / 2.0));
    CHECK(res.points[1].y == doctest::Approx(-std::sqrt(3.0) / 2.0));

    CHECK(circle_circle_intersections(a, Circle({3, 0}, 1)).points.empty());

    auto tang = circle_circle_intersections(a, Circle({2, 0}, 1));
    REQUIRE(tang.points.size() == 1);
    CHECK(almost_equal(tang.points[0], {1, 0}, 1e-12));

    CHECK(circle_circle_intersections(a, Circle({0, 0}, 1)).status ==
          CircleIntersectStatus::Coincident);
}

TEST_CASE("circle_circle_intersections random points lie on both circles") {
    std::mt19937_64 rng(17);
    int found = 0;
    for (int it = 0; it < 500; ++it) {
        Circle a({uniform(rng, -5, 5), uniform(rng, -5, 5)}, uniform(rng, 0.1, 3.0));
        Circle b({uniform(rng, -5, 5), uniform(rng, -5, 5)}, uniform(rng, 0.1, 3.0));
        auto res = circle_circle_intersections(a, b);
        for (const Point2& p : res.points) {
            ++found;
            CHECK(std::abs(distance(p, a.center) - a.radius) < 1e-9);
            CHECK(std::abs(distance(p, b.center) - b.radius) < 1e-9);
        }
    }
    CHECK(found > 100);
}

TEST_CASE("point_segment_distance") {
    CHECK(point_segment_distance({0, 1}, {{-1, 0}, {1, 0}}) == doctest::Approx(1.0));
    CHECK(point_segment_distance({2, 0}, {{-1, 0}, {1, 0}}) == doctest::Approx(1.0));
    CHECK(point_segment_distance({3, 4}, {{0, 0}, {0, 0}}) == doctest::Approx(5.0));
}

TEST_CASE("point_segment_distance matches dense sampling") {
    std::mt19937_64 rng(29);
    for (int it = 0; it < 50; ++it) {
        Point2 p{uniform(rng, -4, 4), uniform(rng, -4, 4)};
        Segment s{{uniform(rng, -4, 4), uniform(rng, -4, 4)},
                  {uniform(rng, -4, 4), uniform(rng, -4, 4)}};
        double sampled = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 10000; ++i) {
            Point2 q = s.a + (s.b - s.a) * (i / 10000.0);
            sampled = std::min(sampled, distance(p, q));
        }
        CHECK(point_segment_distance(p, s) == doctest::Approx(sampled).epsilon(1e-6));
    }
}

TEST_CASE("tangent_lines_at_orientation") {
    auto [up, lo] = tangent_lines_at_orientation(Circle({0, 0}, 1), OrientationAngle(0));
    CHECK(up.signed_distance({0, 1}) == doctest::Approx(0.0));
    CHECK(lo.signed_distance({0, -1}) == doctest::Approx(0.0));

    auto [up2, lo2] = tangent_lines_at_orientation(Circle({5, 3}, 1), OrientationAngle(0));
    CHECK(up2.signed_distance({5, 4}) == doctest::Approx(0.0));
    CHECK(lo2.signed_distance({5, 2}) == doctest::Approx(0.0));

    auto [up3, lo3] = tangent_lines_at_orientation(Circle({0, 0}, 1), OrientationAngle(kPi / 2));
    CHECK(std::abs(up3.signed_distance({-1, 0})) < 1e-12);
    CHECK(std::abs(lo3.signed_distance({1, 0})) < 1e-12);
}

TEST_CASE("tangent lines are tangent and parallel to alpha") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 200; ++it) {
        Circle c({uniform(rng, -5, 5), uniform(rng, -5, 5)}, uniform(rng, 0.1, 3.0));
        OrientationAngle alpha(uniform(rng, 0, kPi));
        auto [up, lo] = tangent_lines_at_orientation(c, alpha);
        for (const Line& l : {up, lo}) {
            CHECK(std::abs(std::abs(l.signed_distance(c.center)) - c.radius) < 1e-9);
            CHECK(orientation_distance(orientation_of(l.direction()), alpha) < 1e-9);
        }
        CHECK(up.signed_distance(c.center) < 0);
        CHECK(lo.signed_distance(c.center) > 0);
    }
}

TEST_CASE("inner_bitangents") {
    auto two = inner_bitangents(Circle({0, 0}, 1), Circle({4, 0}, 1));
    REQUIRE(two.lines.size() == 2);
    for (const Line& l : two.lines) {
        // Independent check: both centers at distance exactly 1, opposite sides.
        CHECK(std::abs(std::abs(l.signed_distance({0, 0})) - 1.0) < 1e-9);
        CHECK(std::abs(std::abs(l.signed_distance({4, 0})) - 1.0) < 1e-9);
        CHECK(l.signed_distance({0, 0}) * l.signed_distance({4, 0}) < 0);
        CHECK(std::abs(l.signed_distance({2, 0})) < 1e-9);  // through the midpoint
        double slope = std::abs(l.direction().y / l.direction().x);
        CHECK(slope == doctest::Approx(std::tan(std::asin(0.5))));
    }

    auto none = inner_bitangents(Circle({0, 0}, 1), Circle({1, 0}, 1));
    CHECK(none.status == BitangentStatus::Overlapping);
    CHECK(none.lines.empty());

    auto one = inner_bitangents(Circle({0, 0}, 1), Circle({2, 0}, 1));
    REQUIRE(one.lines.size() == 1);
    CHECK(std::abs(one.lines[0].signed_distance({1, 0})) < 1e-12);
    CHECK(std::abs(one.lines[0].signed_distance({1, 5})) < 1e-9);  // the line x = 1

    CHECK_THROWS_AS(inner_bitangents(Circle({0, 0}, 1), Circle({4, 0}, 2)),
                    std::invalid_argument);
}

TEST_CASE("smallest_enclosing_disk examples") {
    Circle one = smallest_enclosing_disk({{0, 0}});
    CHECK(one.radius == doctest::Approx(0.0));
    CHECK(almost_equal(one.center, {0, 0}, 1e-12));

    Circle two = smallest_enclosing_disk({{0, 0}, {2, 0}});
    CHECK(two.radius == doctest::Approx(1.0));
    CHECK(almost_equal(two.center, {1, 0}, 1e-9));

    Circle tri = smallest_enclosing_disk({{0, 0}, {2, 0}, {1, std::sqrt(3.0)}});
    CHECK(tri.radius == doctest::Approx(2.0 / std::sqrt(3.0)));

    CHECK_THROWS_AS(smallest_enclosing_disk({}), std::invalid_argument);
}

TEST_CASE("smallest_enclosing_disk vs grid search oracle") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto pts = gen_uniform_disk(3 + static_cast<int>(seed % 17), 2.0, seed);
        Circle d = smallest_enclosing_disk(pts);
        double max_dist = 0.0;
        for (const Point2& p : pts) max_dist = std::max(max_dist, distance(p, d.center));
        CHECK(max_dist <= d.radius + 1e-9);   // covers every point
        CHECK(max_dist >= d.radius - 1e-6);   // shrinking excludes some point

        // Grid of candidate centers cannot do substantially better.
        double best = std::numeric_limits<double>::infinity();
        for (int i = -40; i <= 40; ++i) {
            for (int j = -40; j <= 40; ++j) {
                Point2 c{i * 0.05, j * 0.05};
                double rr = 0.0;
                for (const Point2& p : pts) rr = std::max(rr, distance(p, c));
                best = std::min(best, rr);
            }
        }
        CHECK(d.radius <= best + 1e-9);
    }
}

TEST_CASE("solve_dot_n and solve_dot_u satisfy their equations") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 300; ++it) {
        Vec2 g{uniform(rng, -3, 3), uniform(rng, -3, 3)};
        if (g.norm() < 1e-6) continue;
        double c = uniform(rng, -g.norm() * 1.2, g.norm() * 1.2);
        double lo = uniform(rng, -3, 3);
        double hi = lo + uniform(rng, 0.5, 2 * kPi);
        for (double a : solve_dot_n(g, c, lo, hi)) {
            CHECK(a > lo);
            CHECK(a <= hi + 1e-12);
            CHECK(std::abs(g.dot(dir(a).perp()) - c) < 1e-9);
        }
        for (double a : solve_dot_u(g, c, lo, hi)) {
            CHECK(a > lo);
            CHECK(a <= hi + 1e-12);
            CHECK(std::abs(g.dot(dir(a)) - c) < 1e-9);
        }
    }
}

TEST_CASE("solve_dot_n finds every sign crossing") {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 100; ++it) {
        Vec2 g{uniform(rng, -3, 3), uniform(rng, -3, 3)};
        if (g.norm() < 0.1) continue;
        double c = uniform(rng, -g.norm() * 0.95, g.norm() * 0.95);
        double lo = uniform(rng, -3, 3), hi = lo + kPi;
        auto sols = solve_dot_n(g, c, lo, hi);
        int crossings = 0;
        const int kGrid = 20000;
        double prev = g.dot(dir(lo).perp()) - c;
        for (int i = 1; i <= kGrid; ++i) {
            double a = lo + (hi - lo) * i / kGrid;
            double v = g.dot(dir(a).perp()) - c;
            if ((prev < 0) != (v < 0)) ++crossings;
            prev = v;
        }
        CHECK(static_cast<int>(sols.size()) >= crossings);
    }
}

TEST_CASE("orientation wrap arithmetic") {
    CHECK(OrientationAngle(kPi + 0.25).alpha == doctest::Approx(0.25));
    CHECK(OrientationAngle(-0.25).alpha == doctest::Approx(kPi - 0.25));
    CHECK(orientation_distance(OrientationAngle(0.05), OrientationAngle(kPi - 0.05)) ==
          doctest::Approx(0.1));
    CHECK(wrap_angle(-kPi / 2) == doctest::Approx(1.5 * kPi));
}
