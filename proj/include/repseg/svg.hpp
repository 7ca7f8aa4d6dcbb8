#pragma once

#include "repseg/sweep.hpp"

#include <string>

namespace repseg {
namespace svg {

// Deterministic SVG 1.1 rendering: radius-r circles for the hull points (one
// <circle> element each), input points as small square markers, the extremal
// tangents and convex chains at the result orientation, and the result
// segment when one exists.
std::string render_instance(const std::vector<Point2>& points, double r,
                            const SweepResult& result);

// A single kinetic frame: points plus the chasing output at that time.
std::string render_frame(const std::vector<Point2>& points, double r, double t,
                         const std::optional<Segment>& output);

}  // namespace svg
}  // namespace repseg
