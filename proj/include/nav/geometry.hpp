#pragma once

// 2D primitives shared by the world model, planner and controller.
// Map frame: x east, y north, angles CCW from +x in radians.

#include <algorithm>
#include <cmath>
#include <optional>

namespace nav {

inline constexpr double kPi = 3.14159265358979323846;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(b - a); }

inline Point unit(Point v) {
    const double n = norm(v);
    if (n <= 0.0) return {0.0, 0.0};
    return {v.x / n, v.y / n};
}

// CCW perpendicular.
inline Point perp(Point v) { return {-v.y, v.x}; }

struct Segment {
    Point a;
    Point b;
};

struct Circle {
    Point center;
    double radius = 0.0;
};

// Robot pose in some planar frame; theta normalized to [-pi, pi).
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;

    Point position() const { return {x, y}; }
};

// Wraps an angle into [-pi, pi).
inline double wrap_angle(double a) {
    double w = a - 2.0 * kPi * std::floor((a + kPi) / (2.0 * kPi));
    // floor rounding can leave w == pi for inputs like pi - 1e-18
    if (w >= kPi) w -= 2.0 * kPi;
    return w;
}

// Distance along the ray (origin o, unit direction d) to segment s.
// Returns nullopt when the ray misses; collinear grazing hits are ignored.
inline std::optional<double> ray_segment(Point o, Point d, const Segment& s) {
    const Point e = s.b - s.a;
    const double denom = cross(d, e);
    if (std::abs(denom) < 1e-15) return std::nullopt;
    const Point ao = s.a - o;
    const double t = cross(ao, e) / denom;
    const double u = cross(ao, d) / denom;
    if (t < 0.0 || u < -1e-12 || u > 1.0 + 1e-12) return std::nullopt;
    return t;
}

// Distance along the ray to circle c (nearest non-negative intersection).
inline std::optional<double> ray_circle(Point o, Point d, const Circle& c) {
    const Point f = o - c.center;
    const double b = dot(f, d);
    const double disc = b * b - (dot(f, f) - c.radius * c.radius);
    if (disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    const double t1 = -b - sq;
    const double t2 = -b + sq;
    if (t1 >= 0.0) return t1;
    if (t2 >= 0.0) return t2;
    return std::nullopt;
}

inline double point_segment_distance(Point p, const Segment& s) {
    const Point e = s.b - s.a;
    const double len2 = dot(e, e);
    if (len2 <= 0.0) return distance(p, s.a);
    const double t = std::clamp(dot(p - s.a, e) / len2, 0.0, 1.0);
    return distance(p, s.a + t * e);
}

}  // namespace nav
