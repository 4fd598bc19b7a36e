#include "sewmatch/pattern.hpp"

#include <cmath>
#include <set>
#include <string>

namespace sewmatch {

namespace {

std::string edge_where(const std::string& panel_id, int edge) {
    return "panel '" + panel_id + "' edge " + std::to_string(edge);
}

int meaningful_param_count(CurveKind kind) {
    switch (kind) {
        case CurveKind::Straight: return 0;
        case CurveKind::CircularArc: return 3;
        case CurveKind::QuadBezier: return 2;
        case CurveKind::CubicBezier: return 4;
        case CurveKind::BSpline: return kCurveParamCount;
    }
    return 0;
}

}  // namespace

std::vector<Violation> validate_pattern(const Pattern& p) {
    std::vector<Violation> out;
    std::set<std::string> ids;

    for (size_t pi = 0; pi < p.panels.size(); ++pi) {
        const Panel& panel = p.panels[pi];
        const std::string where = "panel '" + panel.panel_id + "'";

        if (!ids.insert(panel.panel_id).second)
            out.push_back({"duplicate-panel-id", where, "panel id reused within pattern"});

        for (size_t vi = 0; vi < panel.vertices.size(); ++vi) {
            const Vec2 v = panel.vertices[vi];
            if (!std::isfinite(v.x) || !std::isfinite(v.y))
                out.push_back({"non-finite-vertex", where, "vertex " + std::to_string(vi)});
        }

        const int nv = static_cast<int>(panel.vertices.size());
        const int ne = static_cast<int>(panel.edges.size());

        for (int ei = 0; ei < ne; ++ei) {
            const PanelEdge& e = panel.edges[static_cast<size_t>(ei)];
            const std::string ewhere = edge_where(panel.panel_id, ei);
            if (e.start < 0 || e.start >= nv || e.end < 0 || e.end >= nv) {
                out.push_back({"edge-vertex-out-of-range", ewhere,
                               "start=" + std::to_string(e.start) + " end=" + std::to_string(e.end)});
                continue;
            }
            if (e.start == e.end)
                out.push_back({"degenerate-edge", ewhere, "start == end"});

            const int code = static_cast<int>(e.curvature.kind);
            if (code < 0 || code >= kCurveKindCount) {
                out.push_back({"unknown-curve-kind", ewhere, "kind code " + std::to_string(code)});
                continue;
            }
            const int used = meaningful_param_count(e.curvature.kind);
            for (int s = 0; s < kCurveParamCount; ++s) {
                const double v = e.curvature.params[static_cast<size_t>(s)];
                if (!std::isfinite(v)) {
                    out.push_back({"non-finite-curvature", ewhere, "param " + std::to_string(s)});
                } else if (s >= used && v != 0.0) {
                    out.push_back({"unused-param-not-zero", ewhere, "param " + std::to_string(s)});
                }
            }
        }

        // Loop closure: edges chain start->end around to the first vertex and
        // visit every listed vertex exactly once.
        if (ne == 0) {
            if (nv > 0) out.push_back({"open-loop", where, "vertices without edges"});
        } else {
            bool chain_ok = true;
            for (int ei = 0; ei < ne; ++ei) {
                const PanelEdge& e = panel.edges[static_cast<size_t>(ei)];
                const PanelEdge& nxt = panel.edges[static_cast<size_t>((ei + 1) % ne)];
                if (e.start < 0 || e.start >= nv || e.end < 0 || e.end >= nv) {
                    chain_ok = false;
                    break;
                }
                if (e.end != nxt.start) {
                    out.push_back({"open-loop", edge_where(panel.panel_id, ei),
                                   "edge end does not chain into next edge start"});
                    chain_ok = false;
                }
            }
            if (chain_ok) {
                std::set<int> visited;
                for (const auto& e : panel.edges) visited.insert(e.start);
                if (static_cast<int>(visited.size()) != ne || ne != nv)
                    out.push_back({"loop-vertex-mismatch", where,
                                   "loop does not visit each listed vertex exactly once"});
            }
        }
    }

    const int np = static_cast<int>(p.panels.size());
    std::set<StitchPair> seen;
    for (size_t si = 0; si < p.stitches.size(); ++si) {
        const StitchPair& s = p.stitches[si];
        const std::string where = "stitch " + std::to_string(si);
        bool refs_ok = true;
        for (const EdgeRef& r : {s.a, s.b}) {
            if (r.panel < 0 || r.panel >= np) {
                out.push_back({"stitch-panel-out-of-range", where, "panel " + std::to_string(r.panel)});
                refs_ok = false;
            } else if (r.edge < 0 ||
                       r.edge >= static_cast<int>(p.panels[static_cast<size_t>(r.panel)].edges.size())) {
                out.push_back({"stitch-edge-out-of-range", where,
                               "panel " + std::to_string(r.panel) + " edge " + std::to_string(r.edge)});
                refs_ok = false;
            }
        }
        if (!refs_ok) continue;
        if (s.a == s.b) {
            out.push_back({"self-stitch", where, "both sides reference the same edge"});
            continue;
        }
        if (s.b < s.a)
            out.push_back({"non-canonical-stitch", where, "pair not stored smaller-ref-first"});
        if (!seen.insert(StitchPair::canonical(s.a, s.b)).second)
            out.push_back({"duplicate-stitch", where, "pair already present"});
    }

    return out;
}

// --- curve geometry ------------------------------------------------------

namespace {

Vec2 bezier2(Vec2 p0, Vec2 p1, Vec2 p2, double t) {
    const double u = 1.0 - t;
    return u * u * p0 + 2.0 * u * t * p1 + t * t * p2;
}

Vec2 bezier3(Vec2 p0, Vec2 p1, Vec2 p2, Vec2 p3, double t) {
    const double u = 1.0 - t;
    return u * u * u * p0 + 3.0 * u * u * t * p1 + 3.0 * u * t * t * p2 + t * t * t * p3;
}

struct ArcFrame {
    Vec2 center;
    double radius;
    double start_angle;
    double sweep;  // signed, direction included
};

ArcFrame arc_frame(const CurvatureSpec& spec, Vec2 start, Vec2 end) {
    const double r = spec.params[0];
    const double d = spec.params[1] >= 0.0 ? 1.0 : -1.0;
    const double theta = spec.params[2];
    const Vec2 mid = 0.5 * (start + end);
    const Vec2 u = normalized(end - start);
    const Vec2 center = mid + (d * r * std::cos(0.5 * theta)) * perp(u);
    const Vec2 sv = start - center;
    return {center, r, std::atan2(sv.y, sv.x), d * theta};
}

}  // namespace

Vec2 eval_edge(const CurvatureSpec& spec, Vec2 start, Vec2 end, double t) {
    switch (spec.kind) {
        case CurveKind::Straight:
            return start + t * (end - start);
        case CurveKind::CircularArc: {
            const ArcFrame f = arc_frame(spec, start, end);
            const double a = f.start_angle + f.sweep * t;
            return f.center + Vec2{f.radius * std::cos(a), f.radius * std::sin(a)};
        }
        case CurveKind::QuadBezier: {
            const Vec2 q = rel_to_world({spec.params[0], spec.params[1]}, start, end);
            return bezier2(start, q, end, t);
        }
        case CurveKind::CubicBezier: {
            const Vec2 q1 = rel_to_world({spec.params[0], spec.params[1]}, start, end);
            const Vec2 q2 = rel_to_world({spec.params[2], spec.params[3]}, start, end);
            return bezier3(start, q1, q2, end, t);
        }
        case CurveKind::BSpline: {
            const Vec2 q1 = rel_to_world({spec.params[0], spec.params[1]}, start, end);
            const Vec2 q2 = rel_to_world({spec.params[2], spec.params[3]}, start, end);
            const Vec2 c = rel_to_world({spec.params[4], spec.params[5]}, start, end);
            const Vec2 q3 = rel_to_world({spec.params[6], spec.params[7]}, start, end);
            const Vec2 q4 = rel_to_world({spec.params[8], spec.params[9]}, start, end);
            if (t < 0.5) return bezier3(start, q1, q2, c, 2.0 * t);
            return bezier3(c, q3, q4, end, 2.0 * t - 1.0);
        }
    }
    return start;
}

Vec2 edge_start_tangent(const CurvatureSpec& spec, Vec2 start, Vec2 end) {
    const Vec2 chord = normalized(end - start);
    switch (spec.kind) {
        case CurveKind::Straight:
            return chord;
        case CurveKind::CircularArc: {
            const double d = spec.params[1] >= 0.0 ? 1.0 : -1.0;
            return rotate(chord, -d * 0.5 * spec.params[2]);
        }
        case CurveKind::QuadBezier: {
            const Vec2 q = rel_to_world({spec.params[0], spec.params[1]}, start, end);
            const Vec2 t = normalized(q - start);
            return t == Vec2{} ? chord : t;
        }
        case CurveKind::CubicBezier:
        case CurveKind::BSpline: {
            const Vec2 q1 = rel_to_world({spec.params[0], spec.params[1]}, start, end);
            const Vec2 t = normalized(q1 - start);
            return t == Vec2{} ? chord : t;
        }
    }
    return chord;
}

Vec2 edge_end_tangent(const CurvatureSpec& spec, Vec2 start, Vec2 end) {
    const Vec2 chord = normalized(end - start);
    switch (spec.kind) {
        case CurveKind::Straight:
            return chord;
        case CurveKind::CircularArc: {
            const double d = spec.params[1] >= 0.0 ? 1.0 : -1.0;
            return rotate(chord, d * 0.5 * spec.params[2]);
        }
        case CurveKind::QuadBezier: {
            const Vec2 q = rel_to_world({spec.params[0], spec.params[1]}, start, end);
            const Vec2 t = normalized(end - q);
            return t == Vec2{} ? chord : t;
        }
        case CurveKind::CubicBezier: {
            const Vec2 q2 = rel_to_world({spec.params[2], spec.params[3]}, start, end);
            const Vec2 t = normalized(end - q2);
            return t == Vec2{} ? chord : t;
        }
        case CurveKind::BSpline: {
            const Vec2 q4 = rel_to_world({spec.params[8], spec.params[9]}, start, end);
            const Vec2 t = normalized(end - q4);
            return t == Vec2{} ? chord : t;
        }
    }
    return chord;
}

CurvatureSpec reversed_curvature(const CurvatureSpec& spec) {
    // Traversing the same world curve backwards maps edge-local (x, y) to
    // (1-x, -y) and reverses control point order.
    const auto flip = [](Vec2 v) { return Vec2{1.0 - v.x, -v.y}; };
    switch (spec.kind) {
        case CurveKind::Straight:
            return spec;
        case CurveKind::CircularArc:
            return CurvatureSpec::arc(spec.params[0], -spec.params[1], spec.params[2]);
        case CurveKind::QuadBezier:
            return CurvatureSpec::quad(flip({spec.params[0], spec.params[1]}));
        case CurveKind::CubicBezier:
            return CurvatureSpec::cubic(flip({spec.params[2], spec.params[3]}),
                                        flip({spec.params[0], spec.params[1]}));
        case CurveKind::BSpline:
            return CurvatureSpec::bspline(flip({spec.params[8], spec.params[9]}),
                                          flip({spec.params[6], spec.params[7]}),
                                          flip({spec.params[4], spec.params[5]}),
                                          flip({spec.params[2], spec.params[3]}),
                                          flip({spec.params[0], spec.params[1]}));
    }
    return spec;
}

std::pair<Vec2, Vec2> elevate_quadratic(Vec2 p0, Vec2 q, Vec2 p2) {
    return {p0 + (2.0 / 3.0) * (q - p0), p2 + (2.0 / 3.0) * (q - p2)};
}

}  // namespace sewmatch
