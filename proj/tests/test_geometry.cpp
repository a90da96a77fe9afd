#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "coord/delaunay.hpp"
#include "coord/errors.hpp"
#include "coord/model.hpp"
#include "coord/rng.hpp"
#include "coord/voronoi.hpp"
#include "coord/weight.hpp"

using namespace coord;

namespace {

// brute-force empty-circumcircle oracle
bool circumcircles_empty(const Triangulation& tri, double tol) {
    for (const auto& t : tri.triangles) {
        const Circumcircle cc =
            circumcircle(tri.points[t[0]], tri.points[t[1]], tri.points[t[2]]);
        const double r = std::sqrt(cc.radius_sq);
        for (int p = 0; p < static_cast<int>(tri.points.size()); ++p) {
            if (p == t[0] || p == t[1] || p == t[2]) continue;
            if (distance(tri.points[p], cc.center) < r - tol) return false;
        }
    }
    return true;
}

int brute_force_nearest(Point2 p, const std::vector<Point2>& sites) {
    int best = 0;
    double best_d = distance(p, sites[0]);
    for (int i = 1; i < static_cast<int>(sites.size()); ++i) {
        const double d = distance(p, sites[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

// distance margin between the two closest sites at p (tie detector)
double tie_margin(Point2 p, const std::vector<Point2>& sites) {
    std::vector<double> d;
    d.reserve(sites.size());
    for (const Point2& s : sites) d.push_back(distance(p, s));
    std::sort(d.begin(), d.end());
    return d[1] - d[0];
}

}  // namespace

TEST_CASE("delaunay: three non-collinear points give one triangle") {
    const std::vector<Point2> pts{{0, 0}, {1, 0}, {0, 1}};
    const Triangulation tri = delaunay_triangulate(pts);
    CHECK(tri.triangles.size() == 1);
    CHECK(tri.points.size() == 3);
    CHECK(circumcircles_empty(tri, 1e-9));
}

TEST_CASE("delaunay: unit square splits into two triangles sharing a diagonal") {
    const std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const Triangulation tri = delaunay_triangulate(pts);
    REQUIRE(tri.triangles.size() == 2);
    CHECK(circumcircles_empty(tri, 1e-9));
    // the two triangles share exactly one edge (the diagonal)
    int shared = 0;
    for (int a : tri.triangles[0]) {
        for (int b : tri.triangles[1]) {
            if (a == b) ++shared;
        }
    }
    CHECK(shared == 2);
}

TEST_CASE("delaunay: 25 random points satisfy the empty-circumcircle property") {
    Rng rng(42);
    std::vector<Point2> pts;
    for (int i = 0; i < 25; ++i) {
        pts.push_back({rng.uniform(-4.5, 4.5), rng.uniform(-3.0, 3.0)});
    }
    const Triangulation tri = delaunay_triangulate(pts);
    CHECK(tri.triangles.size() > 20);  // Euler: 2n - 2 - hull
    CHECK(circumcircles_empty(tri, 1e-9));
}

TEST_CASE("delaunay: degenerate inputs are rejected") {
    CHECK_THROWS_AS(delaunay_triangulate(std::vector<Point2>{{0, 0}, {1, 1}}),
                    DegenerateInputError);
    CHECK_THROWS_AS(delaunay_triangulate(std::vector<Point2>{{0, 0}, {1, 1}, {2, 2}, {3, 3}}),
                    DegenerateInputError);
    // near-duplicates merge below the 3-point minimum
    CHECK_THROWS_AS(
        delaunay_triangulate(std::vector<Point2>{{0, 0}, {1e-9, 0}, {1, 1}}),
        DegenerateInputError);
}

TEST_CASE("point_voronoi: two sites give the perpendicular bisector") {
    const std::vector<Point2> sites{{-1, 0}, {1, 0}};
    const BoundingBox box{{-2, -2}, {2, 2}};
    const VoronoiDiagram d = point_voronoi(sites, box);
    REQUIRE(d.edges.size() == 1);
    for (const Point2& p : d.edges[0].polyline) CHECK(p.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.nodes.size() == 2);  // two border crossings, no interior node
    for (const VoronoiNode& n : d.nodes) CHECK(n.on_border);
}

TEST_CASE("point_voronoi: equilateral sites meet at the circumcenter") {
    const double h = std::sqrt(3.0) / 2.0;
    const std::vector<Point2> sites{{-0.5, 0}, {0.5, 0}, {0.0, h}};
    const BoundingBox box{{-2, -2}, {2, 2}};
    const VoronoiDiagram d = point_voronoi(sites, box);
    int interior = 0;
    for (const VoronoiNode& n : d.nodes) {
        if (n.on_border) continue;
        ++interior;
        CHECK(n.incident_sites.size() >= 3);
        const double d0 = distance(n.position, sites[0]);
        const double d1 = distance(n.position, sites[1]);
        const double d2 = distance(n.position, sites[2]);
        CHECK(d0 == doctest::Approx(d1).epsilon(1e-9));
        CHECK(d1 == doctest::Approx(d2).epsilon(1e-9));
    }
    CHECK(interior == 1);
}

TEST_CASE("point_voronoi: region labels match the brute-force nearest-site oracle") {
    Rng rng(7);
    const BoundingBox box{{-4.5, -3.0}, {4.5, 3.0}};
    std::vector<Point2> sites;
    for (int i = 0; i < 10; ++i) {
        sites.push_back({rng.uniform(-4.0, 4.0), rng.uniform(-2.5, 2.5)});
    }
    const VoronoiDiagram d = point_voronoi(sites, box);
    int checked = 0;
    for (int gy = 0; gy < 200; ++gy) {
        for (int gx = 0; gx < 200; ++gx) {
            const Point2 p{box.min.x + (gx + 0.5) * box.width() / 200.0,
                           box.min.y + (gy + 0.5) * box.height() / 200.0};
            if (tie_margin(p, sites) < 1e-6) continue;
            ++checked;
            if (d.region_of(p) != brute_force_nearest(p, sites)) {
                FAIL("label mismatch at (" << p.x << ", " << p.y << ")");
            }
        }
    }
    CHECK(checked > 39000);
}

TEST_CASE("point_voronoi: fewer than two sites inside bounds is degenerate") {
    const BoundingBox box{{-1, -1}, {1, 1}};
    CHECK_THROWS_AS(point_voronoi(std::vector<Point2>{{0, 0}}, box), DegenerateInputError);
    CHECK_THROWS_AS(point_voronoi(std::vector<Point2>{{0, 0}, {5, 5}}, box),
                    DegenerateInputError);
}

TEST_CASE("point_voronoi: collinear sites fall back to bisector slabs") {
    const std::vector<Point2> sites{{-1, 0}, {0, 0}, {1, 0}};
    const BoundingBox box{{-2, -2}, {2, 2}};
    const VoronoiDiagram d = point_voronoi(sites, box);
    CHECK(d.edges.size() == 2);
    for (int gy = 0; gy < 50; ++gy) {
        for (int gx = 0; gx < 50; ++gx) {
            const Point2 p{box.min.x + (gx + 0.5) * box.width() / 50.0,
                           box.min.y + (gy + 0.5) * box.height() / 50.0};
            if (tie_margin(p, sites) < 1e-6) continue;
            CHECK(d.region_of(p) == brute_force_nearest(p, sites));
        }
    }
}

TEST_CASE("ced_distance: zero on the focal segment") {
    const EllipticalSite site{{0, 0}, {2, 0}, 0};
    CHECK(ced_distance({0.0, 0.0}, site) == doctest::Approx(0.0));
    CHECK(ced_distance({1.3, 0.0}, site) == doctest::Approx(0.0));
    CHECK(ced_distance({2.0, 0.0}, site) == doctest::Approx(0.0));
}

TEST_CASE("ced_distance: coincident foci give twice the Euclidean distance") {
    const EllipticalSite site = EllipticalSite::point_site({0, 0});
    CHECK(ced_distance({3, 4}, site) == doctest::Approx(10.0));
}

TEST_CASE("ced_distance: analytic confocal-ellipse oracle") {
    const EllipticalSite site{{0, 0}, {2, 0}, 0};
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const double y = rng.uniform(-5.0, 5.0);
        const Point2 p{1.0, y};
        const double expected = 2.0 * (std::sqrt(1.0 + y * y) - 1.0);
        CHECK(ced_distance(p, site) == doctest::Approx(expected).epsilon(1e-9));

        // identity d = 2(a - f): a recovered from the ellipse equation
        const double a = 0.5 * (distance(p, site.f0) + distance(p, site.f1));
        const double f = site.half_interfocal();
        CHECK(ced_distance(p, site) == doctest::Approx(2.0 * (a - f)).epsilon(1e-9));
    }
}

TEST_CASE("ced_distance: non-negative, zero only on the segment, monotone outward") {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const EllipticalSite site{{rng.uniform(-2, 2), rng.uniform(-2, 2)},
                                  {rng.uniform(-2, 2), rng.uniform(-2, 2)},
                                  0};
        const Point2 p{rng.uniform(-4, 4), rng.uniform(-4, 4)};
        const double d = ced_distance(p, site);
        CHECK(d >= 0.0);

        // monotone non-decreasing along any ray from the midpoint
        const Point2 mid = site.midpoint();
        const Point2 ray = from_angle(rng.uniform(0.0, 6.283185307179586));
        double prev = ced_distance(mid, site);
        for (int k = 1; k <= 40; ++k) {
            const double cur = ced_distance(mid + ray * (0.1 * k), site);
            CHECK(cur >= prev - 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("elvd: degenerate focal pairs reproduce the point diagram cell-for-cell") {
    const std::vector<Point2> points{{-2.0, -1.0}, {1.5, 0.5}, {0.5, 2.0}};
    std::vector<EllipticalSite> sites;
    for (std::size_t i = 0; i < points.size(); ++i) {
        sites.push_back(EllipticalSite::point_site(points[i], static_cast<int>(i)));
    }
    const BoundingBox box{{-4.5, -3.0}, {4.5, 3.0}};
    const VoronoiDiagram raster = elvd(sites, box, 20.0);
    const VoronoiDiagram exact = point_voronoi(points, box);
    REQUIRE(raster.grid.has_value());
    const RasterGrid& grid = *raster.grid;
    for (int iy = 0; iy < grid.height; ++iy) {
        for (int ix = 0; ix < grid.width; ++ix) {
            const Point2 c = grid.cell_center(ix, iy);
            // skip near-ties, where exact and doubled metrics may disagree
            double d0 = distance(c, points[0]), d1 = distance(c, points[1]),
                   d2 = distance(c, points[2]);
            std::vector<double> ds{d0, d1, d2};
            std::sort(ds.begin(), ds.end());
            if (ds[1] - ds[0] < 1e-9) continue;
            CHECK(grid.label_at(ix, iy) == exact.region_of(c));
        }
    }
}

TEST_CASE("elvd: parallel segments separate on the midline") {
    const std::vector<EllipticalSite> sites{{{-0.5, 1.0}, {0.5, 1.0}, 0},
                                            {{-0.5, -1.0}, {0.5, -1.0}, 1}};
    const BoundingBox box{{-3, -3}, {3, 3}};
    const VoronoiDiagram d = elvd(sites, box, 20.0);
    REQUIRE(d.edges.size() == 1);
    const double cell = 1.0 / 20.0;
    for (const Point2& p : d.edges[0].polyline) {
        CHECK(std::abs(p.y) <= cell + 1e-12);
    }
}

TEST_CASE("elvd: labels equal the brute-force CED argmin") {
    Rng rng(17);
    const BoundingBox box{{-4.5, -3.0}, {4.5, 3.0}};
    std::vector<EllipticalSite> sites;
    for (int i = 0; i < 3; ++i) {
        const Point2 f0{rng.uniform(-3.5, 3.5), rng.uniform(-2.0, 2.0)};
        const Point2 dir = from_angle(rng.uniform(0.0, 6.283185307179586));
        sites.push_back({f0, f0 + dir * rng.uniform(0.5, 2.0), i});
    }
    const VoronoiDiagram d = elvd(sites, box, 15.0);
    REQUIRE(d.grid.has_value());
    for (int iy = 0; iy < d.grid->height; ++iy) {
        for (int ix = 0; ix < d.grid->width; ++ix) {
            const Point2 c = d.grid->cell_center(ix, iy);
            int best = 0;
            double best_d = ced_distance(c, sites[0]);
            for (int s = 1; s < 3; ++s) {
                const double dist = ced_distance(c, sites[s]);
                if (dist < best_d) {
                    best_d = dist;
                    best = s;
                }
            }
            CHECK(d.grid->label_at(ix, iy) == best);
        }
    }
}

TEST_CASE("elvd: input validation") {
    const BoundingBox box{{-1, -1}, {1, 1}};
    const std::vector<EllipticalSite> one{EllipticalSite::point_site({0, 0})};
    CHECK_THROWS_AS(elvd(one, box, 20.0), DegenerateInputError);
    const std::vector<EllipticalSite> two{EllipticalSite::point_site({0, 0}),
                                          EllipticalSite::point_site({0.5, 0.5})};
    CHECK_THROWS_AS(elvd(two, box, 5.0), ConfigError);
}

TEST_CASE("voronoi_nodes: two-site diagram has only border nodes") {
    const std::vector<Point2> sites{{-1, 0}, {1, 0}};
    const VoronoiDiagram d = point_voronoi(sites, BoundingBox{{-2, -2}, {2, 2}});
    const auto nodes = voronoi_nodes(d);
    CHECK(nodes.size() == 2);
    for (const VoronoiNode& n : nodes) {
        CHECK(n.on_border);
        CHECK(n.incident_sites.size() == 2);
    }
}

TEST_CASE("voronoi_nodes: equidistance-scan oracle on random sites") {
    const BoundingBox box{{-4.5, -3.0}, {4.5, 3.0}};
    Rng rng(23);

    // deterministic rejection sampling keeps the config non-degenerate:
    // sites well separated and circumcenters far enough apart that the
    // merge radius does not fold distinct nodes together
    std::vector<Point2> sites;
    for (int attempt = 0; attempt < 1000 && sites.size() < 7; ++attempt) {
        const Point2 cand{rng.uniform(-3.8, 3.8), rng.uniform(-2.4, 2.4)};
        bool ok = true;
        for (const Point2& s : sites) ok = ok && distance(s, cand) > 1.2;
        if (ok) sites.push_back(cand);
    }
    REQUIRE(sites.size() == 7);

    const VoronoiDiagram d = point_voronoi(sites, box);

    // oracle: scan a fine grid for points nearly equidistant to >= 3 sites
    std::vector<Point2> hits;
    const int res = 600;
    for (int gy = 0; gy < res; ++gy) {
        for (int gx = 0; gx < res; ++gx) {
            const Point2 p{box.min.x + (gx + 0.5) * box.width() / res,
                           box.min.y + (gy + 0.5) * box.height() / res};
            std::vector<double> ds;
            for (const Point2& s : sites) ds.push_back(distance(p, s));
            std::sort(ds.begin(), ds.end());
            if (ds[2] - ds[0] < 0.01) hits.push_back(p);
        }
    }
    REQUIRE(!hits.empty());

    std::vector<int> interior;
    for (int i = 0; i < static_cast<int>(d.nodes.size()); ++i) {
        if (!d.nodes[i].on_border) interior.push_back(i);
    }

    // every scan hit lies near some interior node; every interior node has
    // a scan hit nearby
    for (const Point2& h : hits) {
        double best = 1e9;
        for (int i : interior) best = std::min(best, distance(h, d.nodes[i].position));
        CHECK(best < 0.1);
    }
    for (int i : interior) {
        double best = 1e9;
        for (const Point2& h : hits) best = std::min(best, distance(h, d.nodes[i].position));
        CHECK(best < 0.1);
    }
}

TEST_CASE("voronoi duality: interior nodes are Delaunay circumcenters") {
    const BoundingBox box{{-4.5, -3.0}, {4.5, 3.0}};
    Rng rng(29);
    int tested_configs = 0;
    for (int trial = 0; trial < 40 && tested_configs < 10; ++trial) {
        std::vector<Point2> sites;
        for (int i = 0; i < 6; ++i) {
            sites.push_back({rng.uniform(-3.5, 3.5), rng.uniform(-2.2, 2.2)});
        }
        const Triangulation tri = delaunay_triangulate(sites);
        std::vector<Point2> centers;
        for (const auto& t : tri.triangles) {
            centers.push_back(circumcircle(tri.points[t[0]], tri.points[t[1]], tri.points[t[2]]).center);
        }
        // skip configurations where the merge radius would fuse nodes
        bool well_separated = true;
        for (std::size_t i = 0; i < centers.size() && well_separated; ++i) {
            for (std::size_t j = i + 1; j < centers.size(); ++j) {
                if (distance(centers[i], centers[j]) < 0.12) {
                    well_separated = false;
                    break;
                }
            }
        }
        if (!well_separated) continue;
        ++tested_configs;

        const VoronoiDiagram d = point_voronoi(sites, box);
        for (const VoronoiNode& n : d.nodes) {
            if (n.on_border) continue;
            double best = 1e9;
            for (const Point2& c : centers) best = std::min(best, distance(n.position, c));
            CHECK(best < 1e-9);
        }
    }
    CHECK(tested_configs >= 5);
}

TEST_CASE("weight_correction: aligned and anti-aligned closed forms") {
    ObstacleEstimate o;
    o.centroid = {0, 0};
    o.axis_direction = {1, 0};
    const std::vector<ObstacleEstimate> obstacles{o};
    const double alpha = 0.5;
    for (double d : {0.5, 1.0, 2.0, 3.7}) {
        CHECK(weight_correction({d, 0}, obstacles, alpha) ==
              doctest::Approx(2.0 * std::exp(-alpha * d)).epsilon(1e-12));
        CHECK(weight_correction({-d, 0}, obstacles, alpha) == doctest::Approx(0.0));
    }
    // on top of the obstacle: fully aligned by convention
    CHECK(weight_correction({0, 0}, obstacles, alpha) == doctest::Approx(2.0));
}

TEST_CASE("weight_correction: matches term-by-term summation and stays bounded") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ObstacleEstimate> obstacles;
        for (int i = 0; i < 3; ++i) {
            ObstacleEstimate o;
            o.centroid = {rng.uniform(-4, 4), rng.uniform(-3, 3)};
            o.axis_direction = from_angle(rng.uniform(0.0, 6.283185307179586));
            obstacles.push_back(o);
        }
        const Point2 v{rng.uniform(-4, 4), rng.uniform(-3, 3)};
        const double alpha = rng.uniform(0.1, 2.0);

        double expected = 0.0;
        for (const ObstacleEstimate& o : obstacles) {
            const Point2 rel = v - o.centroid;
            const double dist = rel.norm();
            const double ct = dist > 0.0 ? (o.axis_direction.x * rel.x + o.axis_direction.y * rel.y) / dist : 1.0;
            expected += (1.0 + ct) * std::exp(-alpha * dist);
        }
        const double got = weight_correction(v, obstacles, alpha);
        CHECK(got == doctest::Approx(expected).epsilon(1e-12));
        CHECK(got >= 0.0);
        CHECK(got <= 2.0 * obstacles.size());
    }
}
