#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace sewmatch {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Vec2&) const = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator*(Vec2 v, double s) { return s * v; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(b - a); }

// Rotation by +90 degrees.
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

inline Vec2 rotate(Vec2 v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

inline Vec2 normalized(Vec2 v) {
    const double n = norm(v);
    if (n <= 0.0) return {0.0, 0.0};
    return {v.x / n, v.y / n};
}

struct Bbox {
    Vec2 lo;
    Vec2 hi;
};

Bbox bbox_of(std::span<const Vec2> points);

// Shoelace area of the closed polyline; positive for anticlockwise order.
double signed_area(std::span<const Vec2> polygon);

// Unsigned angle between two vectors, in [0, pi].
double angle_between(Vec2 a, Vec2 b);

// Interior angle of an anticlockwise contour at a vertex, given the tangent
// of the incoming edge (pointing at the vertex) and of the outgoing edge
// (pointing away). Convex corners give values < pi, reflex ones > pi.
double interior_angle(Vec2 incoming_tangent, Vec2 outgoing_tangent);

// Edge-local relative frame: start maps to (0,0), end to (1,0). Curvature
// control points are stored in this frame.
Vec2 rel_to_world(Vec2 rel, Vec2 start, Vec2 end);
Vec2 world_to_rel(Vec2 world, Vec2 start, Vec2 end);

struct Rigid2 {
    double c = 1.0;  // cos of rotation
    double s = 0.0;  // sin of rotation
    Vec2 t;

    Vec2 operator()(Vec2 v) const { return {c * v.x - s * v.y + t.x, s * v.x + c * v.y + t.y}; }
};

// Rigid motion mapping segment (a0,a1) onto segment (b0,b1). The segments
// must have matching nonzero lengths for the result to be meaningful.
Rigid2 rigid_from_segment(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

}  // namespace sewmatch
