#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "sewmatch/geometry.hpp"

namespace sewmatch {

enum class CurveKind : int {
    Straight = 0,
    CircularArc = 1,
    QuadBezier = 2,
    CubicBezier = 3,
    BSpline = 4,
};

inline constexpr int kCurveParamCount = 10;
inline constexpr int kCurveKindCount = 5;

// Curvature of one panel edge. Param layout by kind:
//   Straight:    all zeros
//   CircularArc: (r, d, theta, 0...) with r in cm, d in {-1,+1} (+1 sweeps
//                anticlockwise from start to end), theta in (0, 2pi)
//   QuadBezier:  (qx, qy, 0...) control point in the edge-local frame
//   CubicBezier: (q1x, q1y, q2x, q2y, 0...)
//   BSpline:     (q1x, q1y, q2x, q2y, cx, cy, q3x, q3y, q4x, q4y)
//                two cubic segments joined at c, all edge-local
// The edge-local frame maps start to (0,0) and end to (1,0).
struct CurvatureSpec {
    CurveKind kind = CurveKind::Straight;
    std::array<double, kCurveParamCount> params{};

    bool operator==(const CurvatureSpec&) const = default;

    static CurvatureSpec straight() { return {}; }
    static CurvatureSpec arc(double radius_cm, double direction, double sweep) {
        CurvatureSpec s;
        s.kind = CurveKind::CircularArc;
        s.params = {radius_cm, direction, sweep, 0, 0, 0, 0, 0, 0, 0};
        return s;
    }
    static CurvatureSpec quad(Vec2 q) {
        CurvatureSpec s;
        s.kind = CurveKind::QuadBezier;
        s.params = {q.x, q.y, 0, 0, 0, 0, 0, 0, 0, 0};
        return s;
    }
    static CurvatureSpec cubic(Vec2 q1, Vec2 q2) {
        CurvatureSpec s;
        s.kind = CurveKind::CubicBezier;
        s.params = {q1.x, q1.y, q2.x, q2.y, 0, 0, 0, 0, 0, 0};
        return s;
    }
    static CurvatureSpec bspline(Vec2 q1, Vec2 q2, Vec2 c, Vec2 q3, Vec2 q4) {
        CurvatureSpec s;
        s.kind = CurveKind::BSpline;
        s.params = {q1.x, q1.y, q2.x, q2.y, c.x, c.y, q3.x, q3.y, q4.x, q4.y};
        return s;
    }
};

struct PanelEdge {
    int start = 0;
    int end = 0;
    CurvatureSpec curvature;

    bool operator==(const PanelEdge&) const = default;
};

struct Panel {
    std::string panel_id;
    std::vector<Vec2> vertices;
    std::vector<PanelEdge> edges;

    bool operator==(const Panel&) const = default;

    Vec2 edge_start(int e) const { return vertices[static_cast<size_t>(edges[static_cast<size_t>(e)].start)]; }
    Vec2 edge_end(int e) const { return vertices[static_cast<size_t>(edges[static_cast<size_t>(e)].end)]; }
};

struct EdgeRef {
    int panel = 0;
    int edge = 0;

    auto operator<=>(const EdgeRef&) const = default;
};

// Undirected stitch between two distinct edges, stored smaller-ref-first.
// Multi-edge seams appear as several pairs sharing an EdgeRef.
struct StitchPair {
    EdgeRef a;
    EdgeRef b;

    auto operator<=>(const StitchPair&) const = default;

    static StitchPair canonical(EdgeRef x, EdgeRef y) {
        if (y < x) std::swap(x, y);
        return {x, y};
    }
};

struct Pattern {
    std::string name;
    std::vector<Panel> panels;
    std::vector<StitchPair> stitches;

    bool operator==(const Pattern&) const = default;

    int total_edge_count() const {
        int m = 0;
        for (const auto& p : panels) m += static_cast<int>(p.edges.size());
        return m;
    }
};

struct Violation {
    std::string rule;
    std::string where;
    std::string detail;

    std::string message() const { return rule + " at " + where + ": " + detail; }
};

// Checks every structural invariant: finite coordinates, curvature param
// slots, closed single loops, valid stitch refs, no self/duplicate pairs.
std::vector<Violation> validate_pattern(const Pattern& p);

inline bool is_valid(const Pattern& p) { return validate_pattern(p).empty(); }

// --- curve geometry ------------------------------------------------------

// Point on the edge curve at parameter t in [0,1].
Vec2 eval_edge(const CurvatureSpec& spec, Vec2 start, Vec2 end, double t);

// Unit tangents at the curve endpoints, pointing along the traversal.
Vec2 edge_start_tangent(const CurvatureSpec& spec, Vec2 start, Vec2 end);
Vec2 edge_end_tangent(const CurvatureSpec& spec, Vec2 start, Vec2 end);

// Curvature of the same world curve traversed end-to-start.
CurvatureSpec reversed_curvature(const CurvatureSpec& spec);

// Cubic Bezier control points equivalent to a quadratic one (exact).
std::pair<Vec2, Vec2> elevate_quadratic(Vec2 p0, Vec2 q, Vec2 p2);

}  // namespace sewmatch
