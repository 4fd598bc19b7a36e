#include "sewmatch/merge.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace sewmatch {

namespace {

// Curvature of an edge after reflecting the panel and restoring the loop to
// anticlockwise order (which reverses every edge). The two orientation
// flips cancel on the arc direction flag; control points map to (1-x, y)
// with their order reversed.
CurvatureSpec mirror_reversed_curvature(const CurvatureSpec& spec) {
    const auto flip = [](Vec2 v) { return Vec2{1.0 - v.x, v.y}; };
    switch (spec.kind) {
        case CurveKind::Straight:
            return spec;
        case CurveKind::CircularArc:
            return spec;
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

struct BuiltEdge {
    Vec2 start;
    Vec2 end;
    CurvatureSpec spec;
};

Panel panel_from_built_edges(const std::string& id, const std::vector<BuiltEdge>& edges) {
    Panel panel;
    panel.panel_id = id;
    const int n = static_cast<int>(edges.size());
    panel.vertices.reserve(static_cast<size_t>(n));
    for (const BuiltEdge& e : edges) panel.vertices.push_back(e.start);
    panel.edges.reserve(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t)
        panel.edges.push_back({t, (t + 1) % n, edges[static_cast<size_t>(t)].spec});
    return panel;
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const auto orient = [](Vec2 p, Vec2 q, Vec2 r) {
        const double v = cross(q - p, r - p);
        return (v > 0.0) - (v < 0.0);
    };
    const int o1 = orient(a, b, c);
    const int o2 = orient(a, b, d);
    const int o3 = orient(c, d, a);
    const int o4 = orient(c, d, b);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

bool polyline_self_intersects(const std::vector<BuiltEdge>& edges) {
    const size_t n = edges.size();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // adjacent around the wrap
            if (segments_intersect(edges[i].start, edges[i].end, edges[j].start, edges[j].end))
                return true;
        }
    }
    return false;
}

double edge_chord(const Panel& p, int e) { return dist(p.edge_start(e), p.edge_end(e)); }

bool curvature_compatible(const CurvatureSpec& a, const CurvatureSpec& b_reversed, double tol) {
    if (a.kind != b_reversed.kind) return false;
    for (int s = 0; s < kCurveParamCount; ++s)
        if (std::abs(a.params[static_cast<size_t>(s)] - b_reversed.params[static_cast<size_t>(s)]) > tol)
            return false;
    return true;
}

}  // namespace

MirroredPanel mirror_panel(const Panel& p, MirrorAxis axis) {
    const Bbox box = bbox_of(p.vertices);
    MirroredPanel out;
    out.panel.panel_id = p.panel_id;
    out.panel.vertices = p.vertices;
    for (Vec2& v : out.panel.vertices) {
        if (axis == MirrorAxis::Horizontal)
            v.y = (box.lo.y + box.hi.y) - v.y;
        else
            v.x = (box.lo.x + box.hi.x) - v.x;
    }

    const int n = static_cast<int>(p.edges.size());
    out.panel.edges.reserve(static_cast<size_t>(n));
    out.edge_remap.resize(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) {
        const PanelEdge& old = p.edges[static_cast<size_t>(n - 1 - t)];
        out.panel.edges.push_back({old.end, old.start, mirror_reversed_curvature(old.curvature)});
        out.edge_remap[static_cast<size_t>(n - 1 - t)] = t;
    }
    return out;
}

std::optional<RunCorrespondence> panels_mergeable(const Panel& a, const Panel& b,
                                                  std::span<const std::pair<int, int>> seam_pairs,
                                                  double tol) {
    if (seam_pairs.empty()) return std::nullopt;
    const int na = static_cast<int>(a.edges.size());
    const int nb = static_cast<int>(b.edges.size());

    std::map<int, int> b_of_a;
    for (const auto& [ae, be] : seam_pairs) {
        if (ae < 0 || ae >= na || be < 0 || be >= nb) return std::nullopt;
        if (!b_of_a.emplace(ae, be).second) return std::nullopt;  // a-edge stitched twice
    }
    const int k = static_cast<int>(b_of_a.size());
    if (static_cast<size_t>(k) != seam_pairs.size()) return std::nullopt;

    // The a-side must be one cyclically consecutive block; start where the
    // predecessor edge is outside the seam.
    int start = -1;
    for (const auto& [ae, be] : b_of_a) {
        if (!b_of_a.count((ae + na - 1) % na)) {
            start = ae;
            break;
        }
    }
    if (start < 0) {
        if (k != na) return std::nullopt;
        start = 0;  // seam covers the whole contour of a
    }

    RunCorrespondence corr;
    corr.pairs.reserve(static_cast<size_t>(k));
    for (int t = 0; t < k; ++t) {
        const int ae = (start + t) % na;
        const auto it = b_of_a.find(ae);
        if (it == b_of_a.end()) return std::nullopt;  // a-side not consecutive
        corr.pairs.emplace_back(ae, it->second);
    }

    // The b-side must descend cyclically: the two contours traverse the
    // shared seam in opposite directions.
    for (int t = 1; t < k; ++t) {
        if (corr.pairs[static_cast<size_t>(t)].second !=
            (corr.pairs[static_cast<size_t>(t - 1)].second + nb - 1) % nb)
            return std::nullopt;
    }

    for (const auto& [ae, be] : corr.pairs) {
        if (std::abs(edge_chord(a, ae) - edge_chord(b, be)) > tol) return std::nullopt;
        const CurvatureSpec rb = reversed_curvature(b.edges[static_cast<size_t>(be)].curvature);
        if (!curvature_compatible(a.edges[static_cast<size_t>(ae)].curvature, rb, tol))
            return std::nullopt;
    }
    return corr;
}

MergeResult merge_panels(const Panel& a, const Panel& b, const RunCorrespondence& corr, double tol) {
    const int na = static_cast<int>(a.edges.size());
    const int nb = static_cast<int>(b.edges.size());
    const int k = static_cast<int>(corr.pairs.size());
    if (k == 0) throw MergeError("empty seam correspondence");
    if (k >= nb)
        throw MergeError("seam covers every edge of panel '" + b.panel_id + "'");
    if (k >= na)
        throw MergeError("seam covers every edge of panel '" + a.panel_id + "'");

    const int i0 = corr.pairs.front().first;
    const int il = corr.pairs.back().first;
    const int j0 = corr.pairs.front().second;
    const int jl = corr.pairs.back().second;

    const Vec2 p_junction = a.edge_start(i0);
    const Vec2 q_junction = a.edge_end(il);
    const Vec2 b_run_start = b.edge_start(jl);
    const Vec2 b_run_end = b.edge_end(j0);

    if (dist(p_junction, q_junction) < 1e-12 || dist(b_run_start, b_run_end) < 1e-12)
        throw MergeError("seam run endpoints coincide; cannot align panels");

    const Rigid2 t = rigid_from_segment(b_run_end, b_run_start, p_junction, q_junction);
    if (dist(t(b_run_start), q_junction) > tol)
        throw MergeError("seam runs of '" + a.panel_id + "' and '" + b.panel_id +
                         "' are not congruent");
    for (const auto& [ae, be] : corr.pairs) {
        if (dist(t(b.edge_end(be)), a.edge_start(ae)) > tol ||
            dist(t(b.edge_start(be)), a.edge_end(ae)) > tol)
            throw MergeError("seam vertices of '" + a.panel_id + "' and '" + b.panel_id +
                             "' do not coincide after alignment");
    }

    std::set<int> run_a, run_b;
    for (const auto& [ae, be] : corr.pairs) {
        run_a.insert(ae);
        run_b.insert(be);
    }

    MergeResult out;
    out.remap_a.assign(static_cast<size_t>(na), std::nullopt);
    out.remap_b.assign(static_cast<size_t>(nb), std::nullopt);

    std::vector<BuiltEdge> built;
    built.reserve(static_cast<size_t>(na - k + nb - k));
    for (int s = 1; s <= na - k; ++s) {
        const int e = (il + s) % na;
        out.remap_a[static_cast<size_t>(e)] = static_cast<int>(built.size());
        built.push_back({a.edge_start(e), a.edge_end(e), a.edges[static_cast<size_t>(e)].curvature});
    }
    for (int s = 1; s <= nb - k; ++s) {
        const int e = (j0 + s) % nb;
        out.remap_b[static_cast<size_t>(e)] = static_cast<int>(built.size());
        built.push_back({t(b.edge_start(e)), t(b.edge_end(e)), b.edges[static_cast<size_t>(e)].curvature});
    }
    // Snap the two junction vertices to panel a's positions.
    built[static_cast<size_t>(na - k)].start = p_junction;
    built[static_cast<size_t>(na - k - 1)].end = p_junction;
    built.front().start = q_junction;
    built.back().end = q_junction;

    std::vector<Vec2> poly;
    poly.reserve(built.size());
    for (const BuiltEdge& e : built) poly.push_back(e.start);
    if (signed_area(poly) <= 0.0)
        throw MergeError("merge of '" + a.panel_id + "' and '" + b.panel_id +
                         "' does not form an anticlockwise loop");
    if (polyline_self_intersects(built))
        throw MergeError("merge of '" + a.panel_id + "' and '" + b.panel_id +
                         "' produces a self-intersecting loop");

    out.panel = panel_from_built_edges(a.panel_id + "+" + b.panel_id, built);
    return out;
}

CollapseResult collapse_edges(const Panel& p, double angular_tol) {
    const int n0 = static_cast<int>(p.edges.size());
    std::vector<BuiltEdge> edges;
    edges.reserve(static_cast<size_t>(n0));
    std::vector<std::vector<int>> groups(static_cast<size_t>(n0));
    for (int e = 0; e < n0; ++e) {
        edges.push_back({p.edge_start(e), p.edge_end(e), p.edges[static_cast<size_t>(e)].curvature});
        groups[static_cast<size_t>(e)] = {e};
    }

    const auto is_bezier = [](CurveKind k) {
        return k == CurveKind::QuadBezier || k == CurveKind::CubicBezier;
    };

    const auto world_cubic_controls = [](const BuiltEdge& e) -> std::pair<Vec2, Vec2> {
        if (e.spec.kind == CurveKind::QuadBezier) {
            const Vec2 q = rel_to_world({e.spec.params[0], e.spec.params[1]}, e.start, e.end);
            return elevate_quadratic(e.start, q, e.end);
        }
        return {rel_to_world({e.spec.params[0], e.spec.params[1]}, e.start, e.end),
                rel_to_world({e.spec.params[2], e.spec.params[3]}, e.start, e.end)};
    };

    bool changed = true;
    while (changed && edges.size() > 3) {
        changed = false;
        const int n = static_cast<int>(edges.size());
        for (int t = 0; t < n; ++t) {
            const int u = (t + 1) % n;
            const BuiltEdge& e1 = edges[static_cast<size_t>(t)];
            const BuiltEdge& e2 = edges[static_cast<size_t>(u)];

            BuiltEdge merged;
            if (e1.spec.kind == CurveKind::Straight && e2.spec.kind == CurveKind::Straight) {
                const Vec2 d1 = normalized(e1.end - e1.start);
                const Vec2 d2 = normalized(e2.end - e2.start);
                if (angle_between(d1, d2) >= angular_tol) continue;
                merged = {e1.start, e2.end, CurvatureSpec::straight()};
            } else if (is_bezier(e1.spec.kind) && is_bezier(e2.spec.kind)) {
                const Vec2 s = e1.start;
                const Vec2 e = e2.end;
                if (dist(s, e) < 1e-9) continue;  // cannot express in the relative frame
                const auto [c1a, c1b] = world_cubic_controls(e1);
                const auto [c2a, c2b] = world_cubic_controls(e2);
                const Vec2 junction = e1.end;
                merged = {s, e,
                          CurvatureSpec::bspline(world_to_rel(c1a, s, e), world_to_rel(c1b, s, e),
                                                 world_to_rel(junction, s, e), world_to_rel(c2a, s, e),
                                                 world_to_rel(c2b, s, e))};
            } else {
                continue;
            }

            std::vector<int> merged_group = groups[static_cast<size_t>(t)];
            merged_group.insert(merged_group.end(), groups[static_cast<size_t>(u)].begin(),
                                groups[static_cast<size_t>(u)].end());
            if (u == 0) {
                edges.erase(edges.begin() + t);
                edges[0] = merged;
                groups.erase(groups.begin() + t);
                groups[0] = std::move(merged_group);
            } else {
                edges[static_cast<size_t>(t)] = merged;
                edges.erase(edges.begin() + u);
                groups[static_cast<size_t>(t)] = std::move(merged_group);
                groups.erase(groups.begin() + u);
            }
            changed = true;
            break;
        }
    }

    CollapseResult out;
    out.panel = panel_from_built_edges(p.panel_id, edges);
    out.edge_remap.assign(static_cast<size_t>(n0), -1);
    for (size_t t = 0; t < groups.size(); ++t)
        for (int orig : groups[t]) out.edge_remap[static_cast<size_t>(orig)] = static_cast<int>(t);
    return out;
}

namespace {

struct MergeJob {
    std::string front_id;
    std::string back_id;
    std::optional<MirrorAxis> mirror;
};

std::vector<MergeJob> collect_jobs(const Pattern& p, const std::vector<std::string>& patterns,
                                   std::optional<MirrorAxis> mirror) {
    // Half panels are named with an 'f'/'b' marker directly before the role
    // word (e.g. fsleeve/bsleeve, lfsleeve/lbsleeve). Group by the id with
    // the marker removed.
    struct Group {
        std::string front_id;
        std::string back_id;
    };
    std::map<std::string, Group> groups;
    std::vector<std::string> key_order;
    for (const Panel& panel : p.panels) {
        for (const std::string& pat : patterns) {
            if (pat.empty()) continue;
            const size_t pos = panel.panel_id.find(pat);
            if (pos == std::string::npos || pos == 0) continue;
            const char marker = panel.panel_id[pos - 1];
            if (marker != 'f' && marker != 'b') continue;
            std::string key = panel.panel_id;
            key.erase(pos - 1, 1);
            if (!groups.count(key)) key_order.push_back(key);
            if (marker == 'f')
                groups[key].front_id = panel.panel_id;
            else
                groups[key].back_id = panel.panel_id;
            break;
        }
    }
    std::vector<MergeJob> jobs;
    for (const std::string& key : key_order) {
        const Group& g = groups[key];
        if (!g.front_id.empty() && !g.back_id.empty())
            jobs.push_back({g.front_id, g.back_id, mirror});
    }
    return jobs;
}

int panel_index_by_id(const Pattern& p, const std::string& id) {
    for (size_t i = 0; i < p.panels.size(); ++i)
        if (p.panels[i].panel_id == id) return static_cast<int>(i);
    return -1;
}

Pattern apply_job(const Pattern& p, const MergeJob& job, const MergeConfig& config) {
    const int fa = panel_index_by_id(p, job.front_id);
    const int bb = panel_index_by_id(p, job.back_id);
    if (fa < 0 || bb < 0)
        throw MergeError("panels '" + job.front_id + "'/'" + job.back_id + "' not found");

    Panel back = p.panels[static_cast<size_t>(bb)];
    std::vector<int> mirror_remap(back.edges.size());
    for (size_t e = 0; e < mirror_remap.size(); ++e) mirror_remap[e] = static_cast<int>(e);
    if (job.mirror) {
        MirroredPanel mp = mirror_panel(back, *job.mirror);
        back = std::move(mp.panel);
        mirror_remap = std::move(mp.edge_remap);
    }

    std::vector<std::pair<int, int>> seam;
    for (const StitchPair& s : p.stitches) {
        if (s.a.panel == fa && s.b.panel == bb)
            seam.emplace_back(s.a.edge, mirror_remap[static_cast<size_t>(s.b.edge)]);
        else if (s.b.panel == fa && s.a.panel == bb)
            seam.emplace_back(s.b.edge, mirror_remap[static_cast<size_t>(s.a.edge)]);
    }
    if (seam.empty())
        throw MergeError("panels '" + job.front_id + "' and '" + job.back_id +
                         "' share no stitched seam");

    const auto corr = panels_mergeable(p.panels[static_cast<size_t>(fa)], back, seam, config.tol);
    if (!corr)
        throw MergeError("panels '" + job.front_id + "' and '" + job.back_id +
                         "' have an incompatible seam");

    MergeResult mr = merge_panels(p.panels[static_cast<size_t>(fa)], back, *corr, config.tol);
    CollapseResult cr = collapse_edges(mr.panel, config.angular_tol);

    const auto map_front = [&](int e) -> std::optional<int> {
        const auto mid = mr.remap_a[static_cast<size_t>(e)];
        if (!mid) return std::nullopt;
        return cr.edge_remap[static_cast<size_t>(*mid)];
    };
    const auto map_back = [&](int e) -> std::optional<int> {
        const auto mid = mr.remap_b[static_cast<size_t>(mirror_remap[static_cast<size_t>(e)])];
        if (!mid) return std::nullopt;
        return cr.edge_remap[static_cast<size_t>(*mid)];
    };

    Pattern out;
    out.name = p.name;
    std::vector<int> panel_remap(p.panels.size(), -1);
    int merged_slot = -1;
    for (int i = 0; i < static_cast<int>(p.panels.size()); ++i) {
        if (i == std::min(fa, bb)) {
            merged_slot = static_cast<int>(out.panels.size());
            out.panels.push_back(cr.panel);
        }
        if (i != fa && i != bb) {
            panel_remap[static_cast<size_t>(i)] = static_cast<int>(out.panels.size());
            out.panels.push_back(p.panels[static_cast<size_t>(i)]);
        }
    }
    panel_remap[static_cast<size_t>(fa)] = merged_slot;
    panel_remap[static_cast<size_t>(bb)] = merged_slot;

    std::set<StitchPair> seen;
    for (const StitchPair& s : p.stitches) {
        std::optional<EdgeRef> refs[2];
        bool dead[2] = {false, false};
        const EdgeRef sides[2] = {s.a, s.b};
        for (int k = 0; k < 2; ++k) {
            const EdgeRef r = sides[k];
            std::optional<int> edge;
            if (r.panel == fa)
                edge = map_front(r.edge);
            else if (r.panel == bb)
                edge = map_back(r.edge);
            else
                edge = r.edge;
            if (!edge) {
                dead[k] = true;
                continue;
            }
            refs[k] = EdgeRef{panel_remap[static_cast<size_t>(r.panel)], *edge};
        }
        if (dead[0] && dead[1]) continue;  // pair interior to the merged seam
        if (dead[0] || dead[1])
            throw MergeError("stitch between panels " + std::to_string(s.a.panel) + " and " +
                             std::to_string(s.b.panel) + " references the merged seam asymmetrically");
        const StitchPair mapped = StitchPair::canonical(*refs[0], *refs[1]);
        if (seen.insert(mapped).second) out.stitches.push_back(mapped);
    }
    return out;
}

}  // namespace

Pattern transform_pattern(const Pattern& p, const MergeConfig& config) {
    Pattern result = p;

    const std::vector<std::pair<std::vector<std::string>, std::optional<MirrorAxis>>> rules = {
        {{config.sleeve_id_pattern}, MirrorAxis::Horizontal},
        {{config.cuff_id_pattern}, MirrorAxis::Vertical},
        {config.torso_id_patterns, std::nullopt},
    };

    for (const auto& [patterns, mirror] : rules) {
        const auto jobs = collect_jobs(result, patterns, mirror);
        for (const MergeJob& job : jobs) result = apply_job(result, job, config);
    }
    return result;
}

}  // namespace sewmatch
