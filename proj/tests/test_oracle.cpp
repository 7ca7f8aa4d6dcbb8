#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "repseg/oracle.hpp"
#include "test_support.hpp"

using namespace repseg;
using namespace repseg::oracle;
using namespace testsupport;

TEST_CASE("validate_segment") {
    std::vector<Point2> pts{{0, 0}, {10, 0}, {4, 0}, {7, 0}};
    CHECK(validate_segment(pts, 1.0, {{1, 0}, {9, 0}}));
    CHECK(!validate_segment(pts, 1.0, {{2, 0}, {9, 0}}));
    CHECK(validate_segment({}, 1.0, {{0, 0}, {1, 1}}));
}

TEST_CASE("brute_force_fixed_orientation basics") {
    std::vector<Point2> pts{{0, 0}, {10, 0}};
    auto res = brute_force_fixed_orientation(pts, 1.0, OrientationAngle(0), 512);
    REQUIRE(res.feasible);
    CHECK(res.length == doctest::Approx(8.0).epsilon(1e-9));

    auto inf = brute_force_fixed_orientation(pts, 1.0, OrientationAngle(kPi / 2), 512);
    CHECK(!inf.feasible);

    CHECK_THROWS_AS(brute_force_fixed_orientation(pts, 1.0, OrientationAngle(0), 1),
                    std::invalid_argument);
}

TEST_CASE("oracle monotonicity in resolution") {
    for (unsigned seed = 1; seed <= 10; ++seed) {
        auto pts = gen_uniform_disk(12, 2.0, 3000 + seed);
        ConvexHull h = convex_hull(pts);
        if (h.size() < 3) continue;
        double w = calipers(h).width;
        double sed = smallest_enclosing_disk(pts).radius;
        double r = 0.5 * w + (sed - 0.5 * w) * 0.5;
        OrientationAngle alpha(0.3 * seed);
        auto coarse = brute_force_fixed_orientation(pts, r, alpha, 32);
        auto fine = brute_force_fixed_orientation(pts, r, alpha, 4096);
        if (!coarse.feasible) continue;
        CHECK(fine.length <= coarse.length + 1e-12);

        auto few = brute_force_shortest(pts, r, 64);
        auto many = brute_force_shortest(pts, r, 512);
        if (few.feasible && many.feasible) CHECK(many.length <= few.length + 1e-9);
    }
}

TEST_CASE("pure grid and refined modes agree") {
    for (unsigned seed = 1; seed <= 10; ++seed) {
        auto pts = gen_uniform_disk(10, 2.0, 3300 + seed);
        ConvexHull h = convex_hull(pts);
        if (h.size() < 3) continue;
        double w = calipers(h).width;
        double sed = smallest_enclosing_disk(pts).radius;
        double r = 0.5 * w + (sed - 0.5 * w) * 0.5;
        OrientationAngle alpha(0.17 * seed);
        auto pure = brute_force_fixed_orientation(pts, r, alpha, 4096, false);
        auto refined = brute_force_fixed_orientation(pts, r, alpha, 64, true);
        if (!pure.feasible) continue;
        CHECK(refined.length <= pure.length + 1e-12);
        // The pure grid is within its own reported resolution of the truth.
        CHECK(pure.length - refined.length <= pure.tolerance * 2.0 + 1e-9);
        CHECK(pure.tolerance > 0.0);
        CHECK(pure.cost >= 4096);
    }
}

TEST_CASE("brute_force_shortest trivial answers") {
    auto line = brute_force_shortest({{0, 0}, {10, 0}, {3, 0}}, 1.0, 256);
    REQUIRE(line.feasible);
    CHECK(line.length == doctest::Approx(8.0).epsilon(1e-6));

    auto cloud = brute_force_shortest(gen_uniform_disk(10, 0.4, 12), 1.0, 64);
    REQUIRE(cloud.feasible);
    CHECK(cloud.length == doctest::Approx(0.0));

    auto none = brute_force_shortest({{0, 0}, {2, 0}, {1, std::sqrt(3.0)}}, 0.5, 64);
    CHECK(!none.feasible);
}

TEST_CASE("linear_scan_circular_query single disk") {
    std::vector<Circle> disks{Circle({0, 0}, 1)};
    Circle c({0.5, 0}, 1.0);
    Point2 q{-0.5, 0};  // on c, inside the disk
    auto hit = linear_scan_circular_query(disks, c, q, Winding::CounterClockwise);
    REQUIRE(hit.has_value());
    CHECK(hit->owner == 0);
    auto xs = circle_circle_intersections(disks[0], c);
    double best = 1e18;
    for (const Point2& p : xs.points) best = std::min(best, distance(p, hit->point));
    CHECK(best < 1e-9);

    // A disk that contains the whole query circle never produces an exit.
    std::vector<Circle> big{Circle({0, 0}, 10)};
    Circle tiny({0.5, 0}, 1.0);
    CHECK(!linear_scan_circular_query(big, tiny, {1.5, 0}, Winding::Clockwise).has_value());
}

TEST_CASE("linear_scan_line_query single disk chord") {
    std::vector<Circle> disks{Circle({2, 1}, 1.5)};
    // y = 1 through the center, oriented so the parameter increases with x.
    Line line({0, -1}, -1.0);
    auto res = linear_scan_line_query(disks, line);
    REQUIRE(res.kind == LineScanResult::Kind::Both);
    CHECK(res.left.x == doctest::Approx(0.5));
    CHECK(res.right.x == doctest::Approx(3.5));
    CHECK(res.left_owner == 0);

    Line miss({0, 1}, 5.0);
    CHECK(linear_scan_line_query(disks, miss).kind == LineScanResult::Kind::None);
}
