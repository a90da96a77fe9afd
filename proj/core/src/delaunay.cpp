#include "coord/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coord/errors.hpp"

namespace coord {

namespace {

constexpr double kMergeEpsilon = 1e-6;   // points closer than this collapse
constexpr double kJitterScale = 1e-9;    // deterministic tie-breaking jitter

std::vector<Point2> merge_close_points(std::span<const Point2> points) {
    std::vector<Point2> merged;
    merged.reserve(points.size());
    for (const Point2& p : points) {
        bool duplicate = false;
        for (const Point2& q : merged) {
            if (distance(p, q) < kMergeEpsilon) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) merged.push_back(p);
    }
    return merged;
}

bool all_collinear(const std::vector<Point2>& pts) {
    if (pts.size() < 3) return true;
    // find the farthest pair to anchor the line, then test the rest
    const Point2 a = pts[0];
    std::size_t far = 1;
    double best = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double d = distance_sq(a, pts[i]);
        if (d > best) {
            best = d;
            far = i;
        }
    }
    if (best == 0.0) return true;
    const Point2 dir = pts[far] - a;
    for (const Point2& p : pts) {
        const double cross = dir.cross(p - a);
        if (std::abs(cross) > 1e-12 * best) return false;
    }
    return true;
}

// index-keyed jitter in [-1, 1), stable across runs and platforms
double jitter_unit(std::size_t index, std::uint64_t salt) {
    std::uint64_t z = (index + 1) * 0x9e3779b97f4a7c15ULL + salt;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-52 - 1.0;
}

struct Tri {
    std::array<int, 3> v;
    Circumcircle cc;
    bool alive = true;
};

}  // namespace

Circumcircle circumcircle(Point2 a, Point2 b, Point2 c) {
    const Point2 ab = b - a;
    const Point2 ac = c - a;
    const double d = 2.0 * ab.cross(ac);
    if (std::abs(d) < std::numeric_limits<double>::min() * 16) {
        return {Point2{0, 0}, std::numeric_limits<double>::infinity()};
    }
    const double ab2 = ab.norm_sq();
    const double ac2 = ac.norm_sq();
    const Point2 rel{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
    const Point2 center = a + rel;
    return {center, rel.norm_sq()};
}

Triangulation delaunay_triangulate(std::span<const Point2> points) {
    std::vector<Point2> merged = merge_close_points(points);
    if (merged.size() < 3) {
        throw DegenerateInputError("delaunay_triangulate: fewer than 3 distinct points");
    }
    if (all_collinear(merged)) {
        throw DegenerateInputError("delaunay_triangulate: all points collinear");
    }

    // jittered working copy; output refers to the unjittered coordinates
    std::vector<Point2> work(merged);
    for (std::size_t i = 0; i < work.size(); ++i) {
        work[i].x += kJitterScale * jitter_unit(i, 0x5eedULL);
        work[i].y += kJitterScale * jitter_unit(i, 0xfacadeULL);
    }

    // super-triangle comfortably containing everything
    Point2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Point2 hi{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (const Point2& p : work) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
    }
    const Point2 mid = (lo + hi) * 0.5;
    const double span = std::max({hi.x - lo.x, hi.y - lo.y, 1.0});
    const int n = static_cast<int>(work.size());
    work.push_back(mid + Point2{0.0, 64.0 * span});
    work.push_back(mid + Point2{-64.0 * span, -32.0 * span});
    work.push_back(mid + Point2{64.0 * span, -32.0 * span});

    std::vector<Tri> tris;
    tris.push_back({{n, n + 1, n + 2}, circumcircle(work[n], work[n + 1], work[n + 2]), true});

    for (int pi = 0; pi < n; ++pi) {
        const Point2 p = work[pi];

        // collect edges of the cavity (triangles whose circumcircle holds p)
        std::vector<std::array<int, 2>> boundary;
        for (Tri& t : tris) {
            if (!t.alive) continue;
            if (distance_sq(p, t.cc.center) < t.cc.radius_sq) {
                t.alive = false;
                boundary.push_back({t.v[0], t.v[1]});
                boundary.push_back({t.v[1], t.v[2]});
                boundary.push_back({t.v[2], t.v[0]});
            }
        }

        // an edge shared by two removed triangles is interior to the cavity
        std::vector<std::array<int, 2>> hull;
        for (std::size_t i = 0; i < boundary.size(); ++i) {
            bool shared = false;
            for (std::size_t j = 0; j < boundary.size(); ++j) {
                if (i == j) continue;
                if (boundary[i][0] == boundary[j][1] && boundary[i][1] == boundary[j][0]) {
                    shared = true;
                    break;
                }
            }
            if (!shared) hull.push_back(boundary[i]);
        }

        for (const auto& e : hull) {
            Tri t{{e[0], e[1], pi}, circumcircle(work[e[0]], work[e[1]], work[pi]), true};
            tris.push_back(t);
        }

        // compact occasionally to keep the scan linear in live triangles
        if (tris.size() > 4 * work.size()) {
            std::erase_if(tris, [](const Tri& t) { return !t.alive; });
        }
    }

    Triangulation out;
    out.points = std::move(merged);
    for (const Tri& t : tris) {
        if (!t.alive) continue;
        if (t.v[0] >= n || t.v[1] >= n || t.v[2] >= n) continue;  // touches super-triangle
        std::array<int, 3> v = t.v;
        // canonical orientation and vertex order: CCW starting at min index
        const Point2 a = out.points[v[0]], b = out.points[v[1]], c = out.points[v[2]];
        if ((b - a).cross(c - a) < 0.0) std::swap(v[1], v[2]);
        while (v[0] != std::min({v[0], v[1], v[2]})) {
            std::array<int, 3> r{v[1], v[2], v[0]};
            v = r;
        }
        out.triangles.push_back(v);
    }
    std::sort(out.triangles.begin(), out.triangles.end());
    return out;
}

}  // namespace coord
