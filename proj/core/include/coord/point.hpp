#pragma once

#include <cmath>

namespace coord {

// 2-D point / vector in meters. Used both as a position and as a free
// vector; all geometry in this library is planar.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Point2() = default;
    constexpr Point2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
    constexpr Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
    constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Point2 operator/(double s) const { return {x / s, y / s}; }
    Point2& operator+=(Point2 o) { x += o.x; y += o.y; return *this; }
    Point2& operator-=(Point2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr bool operator==(const Point2&) const = default;

    constexpr double dot(Point2 o) const { return x * o.x + y * o.y; }
    // z-component of the 3-D cross product; positive for a left turn.
    constexpr double cross(Point2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm_sq() const { return x * x + y * y; }

    // Returns {0,0} for the zero vector instead of dividing by zero.
    Point2 normalized() const {
        const double n = norm();
        return n > 0.0 ? Point2{x / n, y / n} : Point2{};
    }
    constexpr Point2 perp() const { return {-y, x}; }
};

inline constexpr Point2 operator*(double s, Point2 p) { return p * s; }

inline double distance(Point2 a, Point2 b) { return (a - b).norm(); }
inline constexpr double distance_sq(Point2 a, Point2 b) { return (a - b).norm_sq(); }

inline Point2 from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Normalizes an angle to (-pi, pi].
inline double wrap_angle(double theta) {
    const double two_pi = 6.283185307179586476925286766559;
    double a = std::fmod(theta, two_pi);
    if (a <= -3.141592653589793238462643383279) a += two_pi;
    if (a > 3.141592653589793238462643383279) a -= two_pi;
    return a;
}

// Axis-aligned rectangle; min must be strictly below max in both axes.
struct BoundingBox {
    Point2 min;
    Point2 max;

    constexpr bool operator==(const BoundingBox&) const = default;

    bool contains(Point2 p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    }
    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
    Point2 center() const { return {(min.x + max.x) * 0.5, (min.y + max.y) * 0.5}; }
    Point2 clamp(Point2 p) const {
        return {std::fmin(std::fmax(p.x, min.x), max.x),
                std::fmin(std::fmax(p.y, min.y), max.y)};
    }
};

// Symmetric 2x2 matrix, enough linear algebra for planar covariance updates.
struct Mat2 {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;  // row major [[a b][c d]]

    constexpr bool operator==(const Mat2&) const = default;

    static constexpr Mat2 identity(double s = 1.0) { return {s, 0.0, 0.0, s}; }
    static constexpr Mat2 diagonal(double sx, double sy) { return {sx, 0.0, 0.0, sy}; }

    constexpr Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    constexpr Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    constexpr Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
    constexpr Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    constexpr Point2 operator*(Point2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

    constexpr double trace() const { return a + d; }
    constexpr double det() const { return a * d - b * c; }
    constexpr Mat2 transposed() const { return {a, c, b, d}; }

    // Inverse; caller must ensure det() is nonzero.
    constexpr Mat2 inverse() const {
        const double inv_det = 1.0 / det();
        return {d * inv_det, -b * inv_det, -c * inv_det, a * inv_det};
    }
    constexpr Mat2 symmetrized() const {
        const double m = 0.5 * (b + c);
        return {a, m, m, d};
    }
};

}  // namespace coord
