#include "coord/weight.hpp"

#include <cmath>

namespace coord {

double weight_correction(Point2 v, std::span<const ObstacleEstimate> obstacles, double alpha) {
    double total = 0.0;
    for (const ObstacleEstimate& o : obstacles) {
        const Point2 to_v = v - o.centroid;
        const double dist = to_v.norm();
        const double cos_theta = dist > 0.0 ? o.axis_direction.dot(to_v) / dist : 1.0;
        total += (1.0 + cos_theta) * std::exp(-alpha * dist);
    }
    return total;
}

}  // namespace coord
