#include "coord/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "coord/delaunay.hpp"
#include "coord/errors.hpp"
#include "diagram_detail.hpp"

namespace coord {

namespace {

constexpr double kSiteMergeEpsilon = 1e-6;
constexpr double kRayExtent = 1e6;  // "infinite" dual edges, pre-clip

// Representative (first occurrence) of every distinct site position.
struct SiteIndex {
    std::vector<int> representatives;  // distinct site indices, input order
    std::vector<Point2> positions;     // their coordinates
};

SiteIndex distinct_sites(std::span<const Point2> sites) {
    SiteIndex idx;
    for (int i = 0; i < static_cast<int>(sites.size()); ++i) {
        bool duplicate = false;
        for (const Point2& q : idx.positions) {
            if (distance(sites[i], q) < kSiteMergeEpsilon) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            idx.representatives.push_back(i);
            idx.positions.push_back(sites[i]);
        }
    }
    return idx;
}

void add_clipped_edge(VoronoiDiagram& diagram, std::vector<detail::NodeCandidate>& candidates,
                      int site_a, int site_b, Point2 origin, Point2 dir, double t0, double t1) {
    const auto clipped = detail::clip_to_box(origin, dir, t0, t1, diagram.bounds);
    if (!clipped) return;
    const Point2 p0 = origin + dir * clipped->first;
    const Point2 p1 = origin + dir * clipped->second;
    if (distance_sq(p0, p1) < 1e-24) return;

    diagram.edges.push_back({site_a, site_b, {p0, p1}});
    for (const Point2& p : {p0, p1}) {
        if (detail::on_box_border(p, diagram.bounds)) {
            candidates.push_back({p, {site_a, site_b}, true});
        }
    }
}

// Degenerate layouts the Delaunay dual cannot express: exactly two
// distinct sites (single bisector) or a fully collinear set (parallel
// bisector slabs between consecutive sites).
void build_bisector_slabs(VoronoiDiagram& diagram, const SiteIndex& idx,
                          std::vector<detail::NodeCandidate>& candidates) {
    std::vector<int> order(idx.positions.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);

    Point2 dir{1.0, 0.0};
    if (idx.positions.size() >= 2) {
        // spread direction: farthest point from the first anchors the line
        double best = -1.0;
        for (const Point2& p : idx.positions) {
            const double d = distance_sq(idx.positions[0], p);
            if (d > best) {
                best = d;
                dir = p - idx.positions[0];
            }
        }
        dir = dir.normalized();
        if (dir == Point2{}) dir = {1.0, 0.0};
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return idx.positions[a].dot(dir) < idx.positions[b].dot(dir);
    });

    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const int a = order[k], b = order[k + 1];
        const Point2 pa = idx.positions[a], pb = idx.positions[b];
        const Point2 mid = (pa + pb) * 0.5;
        const Point2 bisector_dir = (pb - pa).perp().normalized();
        add_clipped_edge(diagram, candidates, idx.representatives[a], idx.representatives[b], mid,
                         bisector_dir, -kRayExtent, kRayExtent);
    }
}

void build_delaunay_dual(VoronoiDiagram& diagram, const SiteIndex& idx,
                         std::vector<detail::NodeCandidate>& candidates) {
    const Triangulation tri = delaunay_triangulate(idx.positions);

    std::vector<Circumcircle> ccs(tri.triangles.size());
    for (std::size_t t = 0; t < tri.triangles.size(); ++t) {
        const auto& v = tri.triangles[t];
        ccs[t] = circumcircle(tri.points[v[0]], tri.points[v[1]], tri.points[v[2]]);
    }

    // triangle adjacency per undirected Delaunay edge
    std::map<std::pair<int, int>, std::vector<int>> edge_tris;
    for (std::size_t t = 0; t < tri.triangles.size(); ++t) {
        const auto& v = tri.triangles[t];
        for (int k = 0; k < 3; ++k) {
            const int u = v[k], w = v[(k + 1) % 3];
            edge_tris[{std::min(u, w), std::max(u, w)}].push_back(static_cast<int>(t));
        }
    }

    for (const auto& [edge, adjacent] : edge_tris) {
        const int a = idx.representatives[edge.first];
        const int b = idx.representatives[edge.second];
        const Point2 pu = tri.points[edge.first], pw = tri.points[edge.second];

        if (adjacent.size() == 2) {
            const Point2 c0 = ccs[adjacent[0]].center, c1 = ccs[adjacent[1]].center;
            const Point2 d = c1 - c0;
            if (d.norm_sq() < 1e-24) continue;  // cocircular: dual edge degenerates
            add_clipped_edge(diagram, candidates, a, b, c0, d, 0.0, 1.0);
        } else if (adjacent.size() == 1) {
            // hull edge: dual ray away from the opposite triangle vertex
            const auto& v = tri.triangles[adjacent[0]];
            int opposite = v[0];
            for (int vi : v) {
                if (vi != edge.first && vi != edge.second) opposite = vi;
            }
            const Point2 mid = (pu + pw) * 0.5;
            Point2 dir = (pw - pu).perp().normalized();
            if (dir.dot(mid - tri.points[opposite]) < 0.0) dir = dir * -1.0;
            add_clipped_edge(diagram, candidates, a, b, ccs[adjacent[0]].center, dir, 0.0, kRayExtent);
        }
    }

    // interior nodes: circumcenters inside the box
    for (std::size_t t = 0; t < tri.triangles.size(); ++t) {
        if (!diagram.bounds.contains(ccs[t].center)) continue;
        const auto& v = tri.triangles[t];
        candidates.push_back({ccs[t].center,
                              {idx.representatives[v[0]], idx.representatives[v[1]],
                               idx.representatives[v[2]]},
                              false});
    }
}

}  // namespace

double ced_distance(Point2 p, const EllipticalSite& site) {
    return distance(p, site.f0) + distance(p, site.f1) - site.interfocal();
}

std::pair<int, int> RasterGrid::cell_of(Point2 p) const {
    const double cell = 1.0 / resolution;
    int ix = static_cast<int>(std::floor((p.x - bounds.min.x) / cell));
    int iy = static_cast<int>(std::floor((p.y - bounds.min.y) / cell));
    ix = std::clamp(ix, 0, width - 1);
    iy = std::clamp(iy, 0, height - 1);
    return {ix, iy};
}

int VoronoiDiagram::region_of(Point2 p) const {
    if (backend == VoronoiBackend::RasterizedElvd && grid) {
        const auto [ix, iy] = grid->cell_of(p);
        return grid->label_at(ix, iy);
    }
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const double d = site_distance(p, sites[i]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

std::optional<int> VoronoiDiagram::nearest_node(Point2 p) const {
    if (nodes.empty()) return std::nullopt;
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double d = distance_sq(p, nodes[i].position);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

VoronoiDiagram point_voronoi(std::span<const Point2> sites, const BoundingBox& bounds) {
    int inside = 0;
    for (const Point2& s : sites) {
        if (bounds.contains(s)) ++inside;
    }
    if (inside < 2) {
        throw DegenerateInputError("point_voronoi: needs at least 2 sites inside bounds");
    }

    VoronoiDiagram diagram;
    diagram.backend = VoronoiBackend::ExactPoint;
    diagram.bounds = bounds;
    diagram.sites.reserve(sites.size());
    for (int i = 0; i < static_cast<int>(sites.size()); ++i) {
        diagram.sites.push_back(EllipticalSite::point_site(sites[i], i));
    }

    const SiteIndex idx = distinct_sites(sites);
    std::vector<detail::NodeCandidate> candidates;

    bool collinear = idx.positions.size() <= 2;
    if (!collinear) {
        collinear = true;
        const Point2 a = idx.positions[0];
        Point2 dir{};
        double best = 0.0;
        for (const Point2& p : idx.positions) {
            const double d = distance_sq(a, p);
            if (d > best) {
                best = d;
                dir = p - a;
            }
        }
        for (const Point2& p : idx.positions) {
            if (std::abs(dir.cross(p - a)) > 1e-12 * best) {
                collinear = false;
                break;
            }
        }
    }

    if (collinear) {
        build_bisector_slabs(diagram, idx, candidates);
    } else {
        build_delaunay_dual(diagram, idx, candidates);
    }

    diagram.nodes = detail::merge_node_candidates(std::move(candidates), kNodeMergeRadius);
    diagram.region_edges.assign(diagram.sites.size(), {});
    for (std::size_t e = 0; e < diagram.edges.size(); ++e) {
        diagram.region_edges[diagram.edges[e].site_a].push_back(static_cast<int>(e));
        diagram.region_edges[diagram.edges[e].site_b].push_back(static_cast<int>(e));
    }
    return diagram;
}

std::vector<VoronoiNode> voronoi_nodes(const VoronoiDiagram& diagram) { return diagram.nodes; }

}  // namespace coord
