#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "coord/point.hpp"

namespace coord {

// A generalized site: a pair of focal points. Point sites are the
// degenerate case f0 == f1, which keeps one distance metric for mixed
// diagrams (the degenerate confocal-ellipse distance is twice the
// Euclidean distance, so nearest-site ordering is preserved).
struct EllipticalSite {
    Point2 f0;               // placed on the obstacle
    Point2 f1;               // f0 displaced along the area-of-interest axis
    int obstacle_id = -1;

    static EllipticalSite point_site(Point2 p, int id = -1) { return {p, p, id}; }

    double interfocal() const { return distance(f0, f1); }
    double half_interfocal() const { return 0.5 * interfocal(); }
    Point2 midpoint() const { return (f0 + f1) * 0.5; }
    bool is_point() const { return f0 == f1; }
};

// Confocal Ellipse-based Distance: d(p,f0) + d(p,f1) - d(f0,f1).
// Equivalently 2(a - f) for the unique confocal ellipse through p with
// semi-major axis a and half-interfocal distance f. Zero exactly on the
// focal segment; for a point site this is twice the Euclidean distance.
double ced_distance(Point2 p, const EllipticalSite& site);

// Backend distance used for diagram labeling (alias of ced_distance;
// named for intent at call sites).
inline double site_distance(Point2 p, const EllipticalSite& site) { return ced_distance(p, site); }

enum class VoronoiBackend { ExactPoint, RasterizedElvd };

// A point on >= 3 region boundaries (>= 2 when it lies on the bounding
// box border). incident_sites is sorted and unique.
struct VoronoiNode {
    Point2 position;
    std::vector<int> incident_sites;
    bool on_border = false;
};

// Boundary shared by two regions. For the exact backend the polyline is a
// clipped segment or ray (2 points); the raster backend stores the label
// transition midpoints.
struct VoronoiEdge {
    int site_a = -1;
    int site_b = -1;
    std::vector<Point2> polyline;
};

// Label grid for the rasterized backend. Cell (ix, iy) covers a square of
// side 1/resolution; labels are site indices of minimal backend distance.
struct RasterGrid {
    double resolution = 0.0;  // cells per meter
    BoundingBox bounds;
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;  // row-major, y * width + x

    Point2 cell_center(int ix, int iy) const {
        const double cell = 1.0 / resolution;
        return {bounds.min.x + (ix + 0.5) * cell, bounds.min.y + (iy + 0.5) * cell};
    }
    std::int32_t label_at(int ix, int iy) const { return labels[static_cast<std::size_t>(iy) * width + ix]; }
    // Cell containing p, clamped to the grid.
    std::pair<int, int> cell_of(Point2 p) const;
};

struct VoronoiDiagram {
    std::vector<EllipticalSite> sites;
    std::vector<VoronoiEdge> edges;
    std::vector<VoronoiNode> nodes;
    std::vector<std::vector<int>> region_edges;  // per site: indices into edges
    VoronoiBackend backend = VoronoiBackend::ExactPoint;
    BoundingBox bounds;
    std::optional<RasterGrid> grid;  // present for the raster backend

    // Region classification of an arbitrary point: nearest site under the
    // backend metric (exact) or the label of the containing cell (raster).
    int region_of(Point2 p) const;

    // Index of the node nearest to p, or nullopt when the diagram has none.
    std::optional<int> nearest_node(Point2 p) const;
};

// Exact point-site Voronoi diagram, built as the dual of the Delaunay
// triangulation and clipped to bounds. Collinear site sets fall back to a
// direct bisector-slab construction. Throws DegenerateInputError for
// fewer than 2 sites inside bounds.
VoronoiDiagram point_voronoi(std::span<const Point2> sites, const BoundingBox& bounds);

// Rasterized Elliptical Line Voronoi Diagram: every cell is labeled with
// the site of minimal confocal-ellipse distance, then edges and nodes are
// extracted from label transitions. resolution is in cells per meter and
// must be >= 10 (ConfigError otherwise); fewer than 2 sites is a
// DegenerateInputError.
VoronoiDiagram elvd(std::span<const EllipticalSite> sites, const BoundingBox& bounds,
                    double resolution = 20.0);

// Node list of a diagram (already merged within the dedup radius).
std::vector<VoronoiNode> voronoi_nodes(const VoronoiDiagram& diagram);

// Candidate nodes closer than this merge into one (centroid kept).
inline constexpr double kNodeMergeRadius = 0.05;

}  // namespace coord
