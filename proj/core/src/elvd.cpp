#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>

#include "coord/errors.hpp"
#include "coord/voronoi.hpp"
#include "diagram_detail.hpp"

namespace coord {

namespace {

std::int32_t nearest_label(Point2 p, std::span<const EllipticalSite> sites) {
    std::int32_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const double d = ced_distance(p, sites[i]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<std::int32_t>(i);
        }
    }
    return best;
}

}  // namespace

VoronoiDiagram elvd(std::span<const EllipticalSite> sites, const BoundingBox& bounds,
                    double resolution) {
    if (sites.size() < 2) {
        throw DegenerateInputError("elvd: needs at least 2 sites");
    }
    if (resolution < 10.0) {
        throw ConfigError("elvd: resolution must be >= 10 cells/m");
    }

    VoronoiDiagram diagram;
    diagram.backend = VoronoiBackend::RasterizedElvd;
    diagram.bounds = bounds;
    diagram.sites.assign(sites.begin(), sites.end());

    RasterGrid grid;
    grid.resolution = resolution;
    grid.bounds = bounds;
    grid.width = std::max(1, static_cast<int>(std::ceil(bounds.width() * resolution)));
    grid.height = std::max(1, static_cast<int>(std::ceil(bounds.height() * resolution)));
    grid.labels.resize(static_cast<std::size_t>(grid.width) * grid.height);

    for (int iy = 0; iy < grid.height; ++iy) {
        for (int ix = 0; ix < grid.width; ++ix) {
            grid.labels[static_cast<std::size_t>(iy) * grid.width + ix] =
                nearest_label(grid.cell_center(ix, iy), sites);
        }
    }

    const double cell = 1.0 / resolution;
    std::map<std::pair<int, int>, std::vector<Point2>> transition_points;
    std::vector<detail::NodeCandidate> candidates;

    auto record_transition = [&](std::int32_t la, std::int32_t lb, Point2 midpoint) {
        transition_points[{std::min(la, lb), std::max(la, lb)}].push_back(midpoint);
    };

    for (int iy = 0; iy < grid.height; ++iy) {
        for (int ix = 0; ix < grid.width; ++ix) {
            const std::int32_t l = grid.label_at(ix, iy);
            const Point2 c = grid.cell_center(ix, iy);
            if (ix + 1 < grid.width) {
                const std::int32_t r = grid.label_at(ix + 1, iy);
                if (r != l) record_transition(l, r, {c.x + 0.5 * cell, c.y});
            }
            if (iy + 1 < grid.height) {
                const std::int32_t u = grid.label_at(ix, iy + 1);
                if (u != l) record_transition(l, u, {c.x, c.y + 0.5 * cell});
            }
        }
    }

    // interior node candidates: 2x2 blocks touching >= 3 distinct labels
    for (int iy = 0; iy + 1 < grid.height; ++iy) {
        for (int ix = 0; ix + 1 < grid.width; ++ix) {
            std::int32_t block[4] = {grid.label_at(ix, iy), grid.label_at(ix + 1, iy),
                                     grid.label_at(ix, iy + 1), grid.label_at(ix + 1, iy + 1)};
            std::sort(std::begin(block), std::end(block));
            auto* end = std::unique(std::begin(block), std::end(block));
            if (end - std::begin(block) < 3) continue;
            detail::NodeCandidate cand;
            cand.position = {bounds.min.x + (ix + 1) * cell, bounds.min.y + (iy + 1) * cell};
            cand.incident_sites.assign(std::begin(block), end);
            candidates.push_back(std::move(cand));
        }
    }

    // border node candidates: label changes along each box side
    auto scan_border = [&](bool horizontal, int fixed_index, double border_coord) {
        const int count = horizontal ? grid.width : grid.height;
        for (int k = 0; k + 1 < count; ++k) {
            const std::int32_t la = horizontal ? grid.label_at(k, fixed_index)
                                               : grid.label_at(fixed_index, k);
            const std::int32_t lb = horizontal ? grid.label_at(k + 1, fixed_index)
                                               : grid.label_at(fixed_index, k + 1);
            if (la == lb) continue;
            detail::NodeCandidate cand;
            const double along = (horizontal ? bounds.min.x : bounds.min.y) + (k + 1) * cell;
            cand.position = horizontal ? Point2{along, border_coord} : Point2{border_coord, along};
            cand.incident_sites = {std::min(la, lb), std::max(la, lb)};
            cand.on_border = true;
            candidates.push_back(std::move(cand));
        }
    };
    scan_border(true, 0, bounds.min.y);
    scan_border(true, grid.height - 1, bounds.max.y);
    scan_border(false, 0, bounds.min.x);
    scan_border(false, grid.width - 1, bounds.max.x);

    diagram.nodes = detail::merge_node_candidates(std::move(candidates), kNodeMergeRadius);

    diagram.edges.reserve(transition_points.size());
    for (auto& [pair, points] : transition_points) {
        diagram.edges.push_back({pair.first, pair.second, std::move(points)});
    }
    diagram.region_edges.assign(diagram.sites.size(), {});
    for (std::size_t e = 0; e < diagram.edges.size(); ++e) {
        diagram.region_edges[diagram.edges[e].site_a].push_back(static_cast<int>(e));
        diagram.region_edges[diagram.edges[e].site_b].push_back(static_cast<int>(e));
    }

    diagram.grid = std::move(grid);
    return diagram;
}

}  // namespace coord
