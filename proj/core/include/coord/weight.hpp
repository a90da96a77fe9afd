#pragma once

#include <span>

#include "coord/model.hpp"
#include "coord/point.hpp"

namespace coord {

// Directional obstacle weight at a candidate position v:
//
//   W(v) = sum over obstacles of (1 + cos(theta)) * exp(-alpha * dist)
//
// where theta is the angle between the obstacle's main axis and the
// vector from its centroid to v, and dist the Euclidean centroid-to-v
// distance. Result lies in [0, 2 * obstacle count]. A v coinciding with a
// centroid counts as fully aligned (cos theta = 1).
double weight_correction(Point2 v, std::span<const ObstacleEstimate> obstacles, double alpha);

}  // namespace coord
