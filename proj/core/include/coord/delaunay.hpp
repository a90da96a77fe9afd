#pragma once

#include <array>
#include <span>
#include <vector>

#include "coord/point.hpp"

namespace coord {

// Delaunay triangulation over a point set. Triangles index into `points`,
// which holds the de-duplicated input (points closer than the merge
// epsilon collapse to the first occurrence).
struct Triangulation {
    std::vector<Point2> points;
    std::vector<std::array<int, 3>> triangles;  // CCW vertex indices
};

// Circumcircle of a triangle; radius is +inf for (near-)degenerate ones.
struct Circumcircle {
    Point2 center;
    double radius_sq = 0.0;
};

Circumcircle circumcircle(Point2 a, Point2 b, Point2 c);

// Bowyer-Watson with a deterministic sub-nanometer jitter that breaks
// cocircular and collinear-subset ties without exact arithmetic. Output
// coordinates are the unjittered inputs.
//
// Throws DegenerateInputError when fewer than 3 distinct points remain
// after merging or when the whole set is collinear.
Triangulation delaunay_triangulate(std::span<const Point2> points);

}  // namespace coord
