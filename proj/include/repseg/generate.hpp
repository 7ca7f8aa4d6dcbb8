#pragma once

#include "repseg/geom.hpp"
#include "repseg/kinetic.hpp"

#include <cstdint>
#include <random>

namespace repseg {

// Deterministic uniform double in [0, 1) from the engine's raw bits.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// n points uniform in a disk of the given radius.
std::vector<Point2> gen_uniform_disk(int n, double radius, std::uint64_t seed);

// n points in convex position (every point a hull vertex), Valtr's method.
std::vector<Point2> gen_convex_position(int n, double radius, std::uint64_t seed);

// n collinear points on a random line, spanning exactly `length`.
std::vector<Point2> gen_collinear(int n, double length, std::uint64_t seed);

// n points in `clusters` round clusters spread over a disk.
std::vector<Point2> gen_clustered(int n, int clusters, double radius, std::uint64_t seed);

// n unit-speed random-walk trajectories with T integer samples, spawned in a
// disk of the given radius. Velocities carry some persistence so the hull
// deforms smoothly.
kinetic::Trajectory gen_trajectories(int n, int timestamps, double spawn_radius,
                                     std::uint64_t seed);

}  // namespace repseg
