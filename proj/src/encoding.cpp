#include "sewmatch/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace sewmatch {

namespace {

constexpr double kDegenerateArea = 1e-12;

std::vector<Vec2> traversal_vertices(const Panel& p) {
    std::vector<Vec2> seq;
    seq.reserve(p.edges.size());
    for (size_t e = 0; e < p.edges.size(); ++e) seq.push_back(p.edge_start(static_cast<int>(e)));
    return seq;
}

Panel reversed_panel(const Panel& p) {
    Panel out;
    out.panel_id = p.panel_id;
    out.vertices = p.vertices;
    const int n = static_cast<int>(p.edges.size());
    out.edges.reserve(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) {
        const PanelEdge& old = p.edges[static_cast<size_t>(n - 1 - t)];
        out.edges.push_back({old.end, old.start, reversed_curvature(old.curvature)});
    }
    return out;
}

}  // namespace

PreprocessedPanel preprocess_panel(const Panel& p) {
    const auto seq = traversal_vertices(p);
    const double area = signed_area(seq);
    if (std::abs(area) < kDegenerateArea)
        throw ValidationError("panel '" + p.panel_id + "' has zero area");

    const int n = static_cast<int>(p.edges.size());
    PreprocessedPanel out;
    out.edge_remap.resize(static_cast<size_t>(n));
    if (area < 0.0) {
        out.panel = reversed_panel(p);
        for (int e = 0; e < n; ++e) out.edge_remap[static_cast<size_t>(e)] = n - 1 - e;
    } else {
        out.panel = p;
        for (int e = 0; e < n; ++e) out.edge_remap[static_cast<size_t>(e)] = e;
    }

    const Bbox box = bbox_of(out.panel.vertices);
    for (Vec2& v : out.panel.vertices) v = v - box.lo;
    return out;
}

Pattern preprocess_pattern(const Pattern& p) {
    Pattern out;
    out.name = p.name;
    std::vector<std::vector<int>> remaps;
    remaps.reserve(p.panels.size());
    for (const Panel& panel : p.panels) {
        PreprocessedPanel pp = preprocess_panel(panel);
        out.panels.push_back(std::move(pp.panel));
        remaps.push_back(std::move(pp.edge_remap));
    }
    out.stitches.reserve(p.stitches.size());
    for (const StitchPair& s : p.stitches) {
        const EdgeRef a{s.a.panel, remaps[static_cast<size_t>(s.a.panel)][static_cast<size_t>(s.a.edge)]};
        const EdgeRef b{s.b.panel, remaps[static_cast<size_t>(s.b.panel)][static_cast<size_t>(s.b.edge)]};
        out.stitches.push_back(StitchPair::canonical(a, b));
    }
    return out;
}

std::vector<RawEdgeFeatures> extract_raw(const Pattern& p) {
    // Panel ids enter as their rank among the sorted ids so that features do
    // not depend on panel list order.
    std::vector<std::string> ids;
    ids.reserve(p.panels.size());
    for (const Panel& panel : p.panels) ids.push_back(panel.panel_id);
    std::sort(ids.begin(), ids.end());
    std::map<std::string, int> rank;
    for (size_t i = 0; i < ids.size(); ++i) rank[ids[i]] = static_cast<int>(i);

    std::vector<RawEdgeFeatures> out;
    out.reserve(static_cast<size_t>(p.total_edge_count()));

    for (const Panel& panel : p.panels) {
        const int n = static_cast<int>(panel.edges.size());
        for (int e = 0; e < n; ++e) {
            const PanelEdge& edge = panel.edges[static_cast<size_t>(e)];
            const Vec2 s = panel.edge_start(e);
            const Vec2 t = panel.edge_end(e);

            RawEdgeFeatures f;
            f.start = s;
            f.end = t;
            f.length = dist(s, t);
            f.orientation = normalized(t - s);
            f.curvature_type = static_cast<int>(edge.curvature.kind);
            f.curvature_params = edge.curvature.params;

            const int prev = (e + n - 1) % n;
            const int next = (e + 1) % n;
            const PanelEdge& pe = panel.edges[static_cast<size_t>(prev)];
            const PanelEdge& ne = panel.edges[static_cast<size_t>(next)];
            f.angle_left = interior_angle(
                edge_end_tangent(pe.curvature, panel.edge_start(prev), panel.edge_end(prev)),
                edge_start_tangent(edge.curvature, s, t));
            f.angle_right = interior_angle(
                edge_end_tangent(edge.curvature, s, t),
                edge_start_tangent(ne.curvature, panel.edge_start(next), panel.edge_end(next)));

            f.edge_count = n;
            f.panel_id = rank.at(panel.panel_id);
            out.push_back(f);
        }
    }
    return out;
}

Eigen::MatrixXd encode(const std::vector<RawEdgeFeatures>& raw, const EncodeOptions& opts) {
    const Eigen::Index m = static_cast<Eigen::Index>(raw.size());
    Eigen::MatrixXd x(m, kEncodedDim);

    int n_min = std::numeric_limits<int>::max();
    int n_max = std::numeric_limits<int>::min();
    for (const auto& f : raw) {
        n_min = std::min(n_min, f.edge_count);
        n_max = std::max(n_max, f.edge_count);
    }
    const double n_span = static_cast<double>(n_max - n_min);

    constexpr double kScale = 0.01;
    for (Eigen::Index i = 0; i < m; ++i) {
        const RawEdgeFeatures& f = raw[static_cast<size_t>(i)];
        x(i, 0) = f.start.x * kScale;
        x(i, 1) = f.start.y * kScale;
        x(i, 2) = f.end.x * kScale;
        x(i, 3) = f.end.y * kScale;
        x(i, 4) = f.length * kScale;
        x(i, 5) = f.orientation.x;
        x(i, 6) = f.orientation.y;
        x(i, 7) = static_cast<double>(f.curvature_type) / static_cast<double>(kCurveKindCount);
        for (int s = 0; s < kCurveParamCount; ++s) {
            double v = f.curvature_params[static_cast<size_t>(s)];
            // Only the arc radius is a cm quantity; control points live in
            // the dimensionless edge-local frame.
            if (f.curvature_type == static_cast<int>(CurveKind::CircularArc) && s == 0) v *= kScale;
            x(i, 8 + s) = v;
        }
        x(i, 18) = std::sin(f.angle_left);
        x(i, 19) = std::cos(f.angle_left);
        x(i, 20) = std::sin(f.angle_right);
        x(i, 21) = std::cos(f.angle_right);
        x(i, 22) = n_span > 0.0 ? (static_cast<double>(f.edge_count - n_min) / n_span) : 0.0;
        x(i, 23) = static_cast<double>(f.panel_id) * kScale;
    }

    if (!opts.use_topology) x.block(0, 18, m, 6).setZero();
    if (!opts.use_panel_id) x.col(23).setZero();
    return x;
}

StitchGraph build_graph(const Pattern& p) {
    StitchGraph g;
    g.node_of.resize(p.panels.size());
    int id = 0;
    for (size_t pi = 0; pi < p.panels.size(); ++pi) {
        const int n = static_cast<int>(p.panels[pi].edges.size());
        g.node_of[pi].resize(static_cast<size_t>(n));
        for (int e = 0; e < n; ++e) {
            g.node_of[pi][static_cast<size_t>(e)] = id;
            g.ref_of_node.push_back({static_cast<int>(pi), e});
            ++id;
        }
    }
    g.node_count = id;
    g.neighbors.resize(static_cast<size_t>(id));
    for (size_t pi = 0; pi < p.panels.size(); ++pi) {
        const int n = static_cast<int>(p.panels[pi].edges.size());
        for (int e = 0; e < n; ++e) {
            const int self = g.node_of[pi][static_cast<size_t>(e)];
            g.neighbors[static_cast<size_t>(self)] = {g.node_of[pi][static_cast<size_t>((e + n - 1) % n)],
                                                      g.node_of[pi][static_cast<size_t>((e + 1) % n)]};
        }
    }
    return g;
}

}  // namespace sewmatch
