#pragma once

// Internal helpers shared by the exact and rasterized diagram builders.

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "coord/point.hpp"
#include "coord/voronoi.hpp"

namespace coord::detail {

struct NodeCandidate {
    Point2 position;
    std::vector<int> incident_sites;
    bool on_border = false;
};

// Single-linkage merge of candidates within the dedup radius: position
// becomes the cluster centroid, incident site sets are unioned.
inline std::vector<VoronoiNode> merge_node_candidates(std::vector<NodeCandidate> candidates,
                                                      double merge_radius) {
    std::sort(candidates.begin(), candidates.end(), [](const NodeCandidate& a, const NodeCandidate& b) {
        if (a.position.x != b.position.x) return a.position.x < b.position.x;
        return a.position.y < b.position.y;
    });

    const std::size_t n = candidates.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    const double r2 = merge_radius * merge_radius;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (candidates[j].position.x - candidates[i].position.x > merge_radius) break;
            if (distance_sq(candidates[i].position, candidates[j].position) <= r2) {
                parent[find(i)] = find(j);
            }
        }
    }

    std::vector<std::vector<std::size_t>> groups(n);
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);

    std::vector<VoronoiNode> nodes;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        VoronoiNode node;
        Point2 sum{};
        for (std::size_t i : g) {
            sum += candidates[i].position;
            node.on_border = node.on_border || candidates[i].on_border;
            for (int s : candidates[i].incident_sites) node.incident_sites.push_back(s);
        }
        node.position = sum / static_cast<double>(g.size());
        std::sort(node.incident_sites.begin(), node.incident_sites.end());
        node.incident_sites.erase(std::unique(node.incident_sites.begin(), node.incident_sites.end()),
                                  node.incident_sites.end());
        nodes.push_back(std::move(node));
    }
    std::sort(nodes.begin(), nodes.end(), [](const VoronoiNode& a, const VoronoiNode& b) {
        if (a.position.x != b.position.x) return a.position.x < b.position.x;
        return a.position.y < b.position.y;
    });
    return nodes;
}

// Liang-Barsky: parameter range [t0, t1] of p(t) = origin + t * dir inside
// the box, or nullopt when the line misses it.
inline std::optional<std::pair<double, double>> clip_to_box(Point2 origin, Point2 dir, double t0,
                                                            double t1, const BoundingBox& box) {
    const double p[4] = {-dir.x, dir.x, -dir.y, dir.y};
    const double q[4] = {origin.x - box.min.x, box.max.x - origin.x, origin.y - box.min.y,
                         box.max.y - origin.y};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) return std::nullopt;  // parallel and outside
            continue;
        }
        const double t = q[i] / p[i];
        if (p[i] < 0.0) {
            if (t > t1) return std::nullopt;
            t0 = std::max(t0, t);
        } else {
            if (t < t0) return std::nullopt;
            t1 = std::min(t1, t);
        }
    }
    if (t0 > t1) return std::nullopt;
    return std::make_pair(t0, t1);
}

inline bool on_box_border(Point2 p, const BoundingBox& box, double eps = 1e-9) {
    return std::abs(p.x - box.min.x) < eps || std::abs(p.x - box.max.x) < eps ||
           std::abs(p.y - box.min.y) < eps || std::abs(p.y - box.max.y) < eps;
}

}  // namespace coord::detail
