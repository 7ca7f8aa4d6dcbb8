#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "repseg/oracle.hpp"
#include "test_support.hpp"

using namespace repseg;
using namespace testsupport;

namespace {

SweepEngine make_engine(const std::vector<Point2>& pts, double r, double rot = 3.7e-8) {
    auto rp = rotate_points(pts, rot);
    ConvexHull h = convex_hull(rp);
    auto feas = feasible_orientation(h, r);
    REQUIRE(feas.has_value());
    return SweepEngine(h, r, feas->alpha, true);
}

}  // namespace

TEST_CASE("collinear instances are exact") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 10; ++it) {
        double span = uniform(rng, 4.0, 40.0);
        double r = uniform(rng, 0.2, span / 2 * 0.9);
        auto pts = gen_collinear(12, span, 5000 + it);
        auto res = sweep_shortest_segment(pts, r);
        REQUIRE(res.status == SweepResult::Status::Segment);
        double d = 0.0;
        for (const Point2& a : pts)
            for (const Point2& b : pts) d = std::max(d, distance(a, b));
        CHECK(res.length == doctest::Approx(d - 2 * r).epsilon(1e-12));
        CHECK(std::abs(res.length - (d - 2 * r)) < 1e-9);
    }
}

TEST_CASE("degenerate statuses") {
    auto tiny = gen_uniform_disk(12, 0.5, 99);
    auto res = sweep_shortest_segment(tiny, 1.0);
    CHECK(res.status == SweepResult::Status::Point);
    CHECK(res.length == 0.0);
    REQUIRE(res.segment.has_value());
    for (const Point2& p : tiny) CHECK(distance(p, res.segment->a) <= 1.0 + 1e-9);

    std::vector<Point2> tri{{0, 0}, {2, 0}, {1, std::sqrt(3.0)}};
    CHECK(sweep_shortest_segment(tri, 0.5).status == SweepResult::Status::None);

    CHECK_THROWS_AS(sweep_shortest_segment({}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sweep_shortest_segment(tri, -1.0), std::invalid_argument);
}

TEST_CASE("sweep agrees with the brute-force oracle and validates") {
    int checked = 0;
    for (unsigned seed = 1; seed <= 40; ++seed) {
        std::vector<Point2> pts;
        if (seed % 3 == 0) {
            pts = gen_convex_position(8 + seed % 20, 2.0, seed);
        } else if (seed % 3 == 1) {
            pts = gen_uniform_disk(5 + seed % 30, 2.0, seed);
        } else {
            pts = gen_clustered(8 + seed % 25, 2 + seed % 3, 2.0, seed);
        }
        ConvexHull h = convex_hull(pts);
        if (h.size() < 3) continue;
        double w = calipers(h).width;
        double sed = smallest_enclosing_disk(pts).radius;
        double frac[] = {0.1, 0.35, 0.6, 0.9};
        // Strictly between width/2 (feasibility) and the enclosing-disk
        // radius (point case), so a segment solution exists.
        double r = 0.5 * w + (sed - 0.5 * w) * frac[seed % 4];
        if (r <= 0.5 * w || r >= sed) continue;
        auto res = sweep_shortest_segment(pts, r);
        REQUIRE(res.status == SweepResult::Status::Segment);
        auto ora = oracle::brute_force_shortest(pts, r, 1024);
        REQUIRE(ora.feasible);
        ++checked;
        CHECK(std::abs(res.length - ora.length) <= 1e-5 * (1.0 + ora.length));
        REQUIRE(res.segment.has_value());
        CHECK(oracle::validate_segment(pts, r, *res.segment));
        // The sweep result is never shorter than what validity permits.
        CHECK(res.length >= ora.length - 1e-5 * (1.0 + ora.length));
    }
    CHECK(checked >= 25);
}

TEST_CASE("maintained chains match from-scratch reconstruction after every event") {
    for (unsigned seed = 1; seed <= 12; ++seed) {
        auto pts = gen_uniform_disk(10 + seed * 2, 2.0, 7000 + seed);
        ConvexHull h = convex_hull(pts);
        if (h.size() < 3) continue;
        double w = calipers(h).width;
        double r = 0.5 * w * (1.1 + 0.3 * (seed % 4));
        SweepEngine eng = make_engine(pts, r);
        std::string msg;
        int mismatches = 0;
        while (eng.step()) {
            if (!chains_match_reconstruction(eng, msg)) ++mismatches;
        }
        CHECK(mismatches == 0);
    }
}

TEST_CASE("fixed-orientation optimality holds at every event") {
    for (unsigned seed = 1; seed <= 6; ++seed) {
        auto pts = gen_uniform_disk(9 + seed * 3, 2.0, 8100 + seed);
        ConvexHull h = convex_hull(pts);
        if (h.size() < 3) continue;
        double w = calipers(h).width;
        double r = 0.5 * w * 1.3;
        auto rp = rotate_points(pts, 3.7e-8);
        SweepEngine eng = make_engine(pts, r);
        while (eng.step()) {
            if (!eng.solution_exists()) continue;
            double next = eng.next_violation().value_or(eng.alpha_end());
            if (next <= eng.alpha() + 1e-7) continue;  // mid-cascade
            ChainOptimum opt = eng.current_optimum();
            auto ora = oracle::brute_force_fixed_orientation(
                rp, r, OrientationAngle(eng.alpha()), 2048);
            if (!ora.feasible) continue;  // exactly at a boundary orientation
            CHECK(opt.length <= ora.length + 1e-6 * (1.0 + ora.length));
            CHECK(opt.length >= ora.length - 1e-6 * (1.0 + ora.length));
            // The maintained segment is valid.
            double worst = 0.0;
            for (const Point2& p : rp)
                worst = std::max(worst, point_segment_distance(p, opt.segment));
            CHECK(worst <= r + 1e-7);
        }
    }
}

TEST_CASE("rotating the input rotates the answer") {
    std::mt19937_64 rng(17);
    for (unsigned seed = 1; seed <= 8; ++seed) {
        auto pts = gen_uniform_disk(18, 2.0, 9200 + seed);
        ConvexHull h = convex_hull(pts);
        if (h.size() < 3) continue;
        double r = 0.5 * calipers(h).width * 1.4;
        auto base = sweep_shortest_segment(pts, r);
        if (base.status != SweepResult::Status::Segment) continue;
        double angle = uniform(rng, 0.1, 3.0);
        auto res = sweep_shortest_segment(rotate_points(pts, angle), r);
        REQUIRE(res.status == SweepResult::Status::Segment);
        CHECK(std::abs(res.length - base.length) < 1e-9 * (1.0 + base.length));
    }
}

TEST_CASE("type-3 disappearance purges motion and endpoint certificates") {
    // A thin instance loses feasibility away from its width orientation.
    std::vector<Point2> pts{{0, 0}, {10, 0.4}, {5, 0.8}, {2, 0.5}, {8, 0.1}};
    double r = 0.9;
    SweepEngine eng = make_engine(pts, r);
    bool seen_disappear = false;
    while (eng.step()) {
        const EventRecord& e = eng.trace().events.back();
        if (e.kind == 3 && !eng.solution_exists()) {
            seen_disappear = true;
            CHECK(!eng.has_certificate(CertSlot::Type1S1));
            CHECK(!eng.has_certificate(CertSlot::Type1S2));
            CHECK(!eng.has_certificate(CertSlot::EndS1Top));
            CHECK(!eng.has_certificate(CertSlot::EndS1Bottom));
            CHECK(!eng.has_certificate(CertSlot::EndS2Top));
            CHECK(!eng.has_certificate(CertSlot::EndS2Bottom));
            CHECK(eng.has_certificate(CertSlot::Type2Tau1));
            CHECK(eng.has_certificate(CertSlot::Type2Tau2));
        }
        if (e.kind == 3 && eng.solution_exists()) {
            // Reappearance restarts single-vertex chains.
            CHECK(eng.s1().arc_count() == 1);
            CHECK(eng.s2().arc_count() == 1);
        }
    }
    CHECK(seen_disappear);
}

TEST_CASE("internal type-5 events leave the chains unchanged") {
    int internals = 0;
    for (unsigned seed = 1; seed <= 6 && internals < 5; ++seed) {
        auto pts = gen_convex_position(24, 2.0, 11000 + seed);
        double r = 0.5 * calipers(convex_hull(pts)).width * 1.3;
        SweepEngine eng = make_engine(pts, r);
        std::vector<int> before1 = eng.s1().supports, before2 = eng.s2().supports;
        while (eng.step()) {
            const EventRecord& e = eng.trace().events.back();
            if (e.internal) {
                ++internals;
                CHECK(eng.s1().supports == before1);
                CHECK(eng.s2().supports == before2);
            }
            before1 = eng.s1().supports;
            before2 = eng.s2().supports;
        }
    }
    CHECK(internals >= 5);
}

TEST_CASE("type-2 events happen at hull edge orientations") {
    auto pts = gen_uniform_disk(20, 2.0, 4321);
    ConvexHull h0 = convex_hull(pts);
    double r = 0.5 * calipers(h0).width * 1.6;
    double rot = 3.7e-8;
    SweepEngine eng = make_engine(pts, r, rot);
    const ConvexHull& h = eng.hull();
    std::vector<OrientationAngle> edges;
    for (int i = 0; i < h.size(); ++i)
        edges.push_back(orientation_of(h.cyclic(i + 1) - h.vertices[i]));
    int seen = 0;
    while (eng.step()) {
        const EventRecord& e = eng.trace().events.back();
        if (e.kind != 2) continue;
        ++seen;
        double best = kPi;
        for (OrientationAngle eo : edges)
            best = std::min(best, orientation_distance(eo, OrientationAngle(e.orientation)));
        CHECK(best < 1e-9);
    }
    CHECK(seen > 0);
}

TEST_CASE("type-3 events happen where the strip extent equals 2r") {
    std::vector<Point2> pts{{0, 0}, {10, 0.4}, {5, 0.8}, {2, 0.5}, {8, 0.1}};
    double r = 0.9;
    SweepEngine eng = make_engine(pts, r);
    const ConvexHull& h = eng.hull();
    int seen = 0;
    while (eng.step()) {
        const EventRecord& e = eng.trace().events.back();
        if (e.kind != 3) continue;
        ++seen;
        CHECK(std::abs(strip_extent(h.vertices, OrientationAngle(e.orientation)) - 2 * r) <
              1e-7);
    }
    CHECK(seen >= 2);
}

TEST_CASE("sweep result is the minimum over dense orientation sampling") {
    for (unsigned seed = 1; seed <= 4; ++seed) {
        auto pts = gen_uniform_disk(16, 2.0, 13000 + seed);
        ConvexHull h = convex_hull(pts);
        if (h.size() < 3) continue;
        double w = calipers(h).width;
        double sed = smallest_enclosing_disk(pts).radius;
        double r = 0.5 * w + (sed - 0.5 * w) * 0.4;
        auto res = sweep_shortest_segment(pts, r);
        REQUIRE(res.status == SweepResult::Status::Segment);
        for (int k = 0; k < 360; ++k) {
            auto ora = oracle::brute_force_fixed_orientation(
                pts, r, OrientationAngle(kPi * k / 360.0), 512);
            if (ora.feasible) CHECK(ora.length >= res.length - 1e-6 * (1.0 + res.length));
        }
    }
}

TEST_CASE("sweep crosses the pi wraparound") {
    auto pts = gen_uniform_disk(15, 2.0, 777);
    ConvexHull h = convex_hull(pts);
    double r = 0.5 * calipers(h).width * 1.5;
    SweepEngine eng = make_engine(pts, r);
    double start = eng.alpha();
    double prev = start;
    bool crossed = false;
    while (eng.step()) {
        CHECK(eng.alpha() >= prev - 1e-12);  // monotone advance
        if (prev < kPi && eng.alpha() >= kPi) crossed = true;
        prev = eng.alpha();
        const EventRecord& e = eng.trace().events.back();
        CHECK(e.orientation >= 0.0);
        CHECK(e.orientation < kPi);
    }
    CHECK(eng.alpha() == doctest::Approx(start + kPi));
    if (start > 1e-6) CHECK(crossed);
}
