#include "sewmatch/pattern_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace sewmatch {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string violations_text(const std::vector<Violation>& vs) {
    std::string msg;
    for (const auto& v : vs) {
        if (!msg.empty()) msg += "; ";
        msg += v.message();
    }
    return msg;
}

Pattern validated(Pattern p) {
    const auto vs = validate_pattern(p);
    if (!vs.empty()) throw ValidationError(violations_text(vs));
    return p;
}

double require_number(const json& j, const std::string& ctx) {
    if (!j.is_number()) throw SchemaError(ctx + ": expected a number");
    return j.get<double>();
}

const json& require_field(const json& j, const char* key, const std::string& ctx) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(ctx + ": missing field '" + std::string(key) + "'");
    return j.at(key);
}

Vec2 parse_xy(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.size() != 2) throw SchemaError(ctx + ": expected [x, y]");
    return {require_number(j[0], ctx), require_number(j[1], ctx)};
}

EdgeRef parse_edge_ref(const json& j, const std::string& ctx) {
    EdgeRef r;
    r.panel = static_cast<int>(require_number(require_field(j, "panel", ctx), ctx + ".panel"));
    r.edge = static_cast<int>(require_number(require_field(j, "edge", ctx), ctx + ".edge"));
    return r;
}

}  // namespace

Pattern parse_pattern(std::string_view bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("pattern document is not valid JSON: ") + e.what());
    }

    Pattern p;
    p.name = require_field(doc, "name", "document").get<std::string>();

    const json& panels = require_field(doc, "panels", "document");
    if (!panels.is_array()) throw SchemaError("document.panels: expected an array");
    for (size_t pi = 0; pi < panels.size(); ++pi) {
        const json& jp = panels[pi];
        const std::string ctx = "panels[" + std::to_string(pi) + "]";
        Panel panel;
        panel.panel_id = require_field(jp, "id", ctx).get<std::string>();
        for (const json& jv : require_field(jp, "vertices", ctx))
            panel.vertices.push_back(parse_xy(jv, ctx + ".vertices"));
        const json& jes = require_field(jp, "edges", ctx);
        for (size_t ei = 0; ei < jes.size(); ++ei) {
            const json& je = jes[ei];
            const std::string ectx = ctx + ".edges[" + std::to_string(ei) + "]";
            PanelEdge edge;
            edge.start = static_cast<int>(require_number(require_field(je, "start", ectx), ectx));
            edge.end = static_cast<int>(require_number(require_field(je, "end", ectx), ectx));
            const json& jc = require_field(je, "curvature", ectx);
            const int kind = static_cast<int>(require_number(require_field(jc, "kind", ectx), ectx));
            if (kind < 0 || kind >= kCurveKindCount)
                throw SchemaError(ectx + ": unknown curvature kind " + std::to_string(kind));
            edge.curvature.kind = static_cast<CurveKind>(kind);
            const json& jk = require_field(jc, "params", ectx);
            if (!jk.is_array() || jk.size() != kCurveParamCount)
                throw SchemaError(ectx + ": curvature params must have " +
                                  std::to_string(kCurveParamCount) + " entries");
            for (int s = 0; s < kCurveParamCount; ++s)
                edge.curvature.params[static_cast<size_t>(s)] = require_number(jk[static_cast<size_t>(s)], ectx);
            panel.edges.push_back(edge);
        }
        p.panels.push_back(std::move(panel));
    }

    const json& stitches = require_field(doc, "stitches", "document");
    if (!stitches.is_array()) throw SchemaError("document.stitches: expected an array");
    for (size_t si = 0; si < stitches.size(); ++si) {
        const json& js = stitches[si];
        const std::string ctx = "stitches[" + std::to_string(si) + "]";
        if (!js.is_array() || js.size() != 2) throw SchemaError(ctx + ": expected a pair of edge refs");
        p.stitches.push_back(StitchPair::canonical(parse_edge_ref(js[0], ctx), parse_edge_ref(js[1], ctx)));
    }

    return validated(std::move(p));
}

std::string serialize_pattern(const Pattern& p) {
    ordered_json doc;
    doc["name"] = p.name;
    doc["panels"] = ordered_json::array();
    for (const Panel& panel : p.panels) {
        ordered_json jp;
        jp["id"] = panel.panel_id;
        jp["vertices"] = ordered_json::array();
        for (const Vec2& v : panel.vertices) jp["vertices"].push_back({v.x, v.y});
        jp["edges"] = ordered_json::array();
        for (const PanelEdge& e : panel.edges) {
            ordered_json je;
            je["start"] = e.start;
            je["end"] = e.end;
            je["curvature"]["kind"] = static_cast<int>(e.curvature.kind);
            je["curvature"]["params"] = e.curvature.params;
            jp["edges"].push_back(std::move(je));
        }
        doc["panels"].push_back(std::move(jp));
    }
    doc["stitches"] = ordered_json::array();
    for (const StitchPair& s : p.stitches) {
        ordered_json ja, jb;
        ja["panel"] = s.a.panel;
        ja["edge"] = s.a.edge;
        jb["panel"] = s.b.panel;
        jb["edge"] = s.b.edge;
        doc["stitches"].push_back(ordered_json::array({std::move(ja), std::move(jb)}));
    }
    return doc.dump(2) + "\n";
}

namespace {

// GarmentCodeData stores curvature control points in the edge-local frame
// already; circle arcs carry a radius relative to the chord plus large-arc
// and side flags.
CurvatureSpec ingest_curvature(const json& jc, Vec2 start, Vec2 end, const std::string& ctx) {
    if (jc.is_array()) {
        // Legacy layout: a single [x, y] quadratic control point.
        if (jc.size() == 1) return CurvatureSpec::quad(parse_xy(jc[0], ctx));
        if (jc.size() == 2 && jc[0].is_number()) return CurvatureSpec::quad(parse_xy(jc, ctx));
        throw SchemaError(ctx + ": unsupported construct 'legacy curvature list of size " +
                          std::to_string(jc.size()) + "'");
    }
    const std::string type = require_field(jc, "type", ctx).get<std::string>();
    const json& params = require_field(jc, "params", ctx);
    if (type == "quadratic") {
        if (!params.is_array() || params.size() != 1)
            throw SchemaError(ctx + ": quadratic curvature expects one control point");
        return CurvatureSpec::quad(parse_xy(params[0], ctx));
    }
    if (type == "cubic") {
        if (!params.is_array() || params.size() != 2)
            throw SchemaError(ctx + ": cubic curvature expects two control points");
        return CurvatureSpec::cubic(parse_xy(params[0], ctx), parse_xy(params[1], ctx));
    }
    if (type == "circle") {
        if (!params.is_array() || params.empty() || !params[0].is_array() || params[0].size() != 3)
            throw SchemaError(ctx + ": circle curvature expects [radius, large_arc, right]");
        const double rel_radius = require_number(params[0][0], ctx);
        const bool large_arc = require_number(params[0][1], ctx) != 0.0;
        const bool right = require_number(params[0][2], ctx) != 0.0;
        const double chord = dist(start, end);
        const double radius = rel_radius * chord;
        if (radius <= 0.0 || chord <= 0.0)
            throw SchemaError(ctx + ": degenerate circle arc");
        const double half = std::clamp(chord / (2.0 * radius), -1.0, 1.0);
        double sweep = 2.0 * std::asin(half);
        if (large_arc) sweep = 2.0 * 3.14159265358979323846 - sweep;
        return CurvatureSpec::arc(radius, right ? 1.0 : -1.0, sweep);
    }
    throw SchemaError(ctx + ": unsupported construct 'curvature type " + type + "'");
}

}  // namespace

Pattern ingest_external(std::string_view bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("external specification is not valid JSON: ") + e.what());
    }

    const json& root = doc.contains("pattern") ? doc.at("pattern") : doc;
    const json& jpanels = require_field(root, "panels", "pattern");
    if (!jpanels.is_object()) throw SchemaError("pattern.panels: expected an object keyed by panel name");

    // Honor panel_order when present; otherwise sort names for determinism.
    std::vector<std::string> order;
    if (root.contains("panel_order") && root.at("panel_order").is_array()) {
        for (const json& jn : root.at("panel_order"))
            if (jn.is_string() && jpanels.contains(jn.get<std::string>()))
                order.push_back(jn.get<std::string>());
    }
    for (auto it = jpanels.begin(); it != jpanels.end(); ++it)
        if (std::find(order.begin(), order.end(), it.key()) == order.end())
            order.push_back(it.key());

    Pattern p;
    p.name = doc.contains("name") && doc.at("name").is_string() ? doc.at("name").get<std::string>()
                                                                : std::string("external");
    std::map<std::string, int> panel_index;
    for (const std::string& name : order) {
        const json& jp = jpanels.at(name);
        const std::string ctx = "panel '" + name + "'";
        Panel panel;
        panel.panel_id = name;
        for (const json& jv : require_field(jp, "vertices", ctx))
            panel.vertices.push_back(parse_xy(jv, ctx + ".vertices"));
        const json& jes = require_field(jp, "edges", ctx);
        for (size_t ei = 0; ei < jes.size(); ++ei) {
            const json& je = jes[ei];
            const std::string ectx = ctx + ".edges[" + std::to_string(ei) + "]";
            const json& endpoints = require_field(je, "endpoints", ectx);
            if (!endpoints.is_array() || endpoints.size() != 2)
                throw SchemaError(ectx + ": endpoints must be [start, end]");
            PanelEdge edge;
            edge.start = static_cast<int>(require_number(endpoints[0], ectx));
            edge.end = static_cast<int>(require_number(endpoints[1], ectx));
            if (je.contains("curvature")) {
                const int nv = static_cast<int>(panel.vertices.size());
                if (edge.start < 0 || edge.start >= nv || edge.end < 0 || edge.end >= nv)
                    throw SchemaError(ectx + ": endpoint index out of range");
                edge.curvature =
                    ingest_curvature(je.at("curvature"), panel.vertices[static_cast<size_t>(edge.start)],
                                     panel.vertices[static_cast<size_t>(edge.end)], ectx);
            }
            panel.edges.push_back(edge);
        }
        panel_index[name] = static_cast<int>(p.panels.size());
        p.panels.push_back(std::move(panel));
    }

    if (root.contains("stitches")) {
        const json& jst = root.at("stitches");
        for (size_t si = 0; si < jst.size(); ++si) {
            const json& js = jst[si];
            const std::string ctx = "stitches[" + std::to_string(si) + "]";
            if (!js.is_array()) throw SchemaError(ctx + ": expected a list of sides");
            if (js.size() != 2)
                throw SchemaError(ctx + ": unsupported construct '" + std::to_string(js.size()) +
                                  "-way stitch'");
            EdgeRef sides[2];
            for (int k = 0; k < 2; ++k) {
                const json& jside = js[static_cast<size_t>(k)];
                const std::string pname = require_field(jside, "panel", ctx).get<std::string>();
                const auto it = panel_index.find(pname);
                if (it == panel_index.end())
                    throw SchemaError(ctx + ": stitch references unknown panel '" + pname + "'");
                sides[k].panel = it->second;
                sides[k].edge = static_cast<int>(require_number(require_field(jside, "edge", ctx), ctx));
            }
            p.stitches.push_back(StitchPair::canonical(sides[0], sides[1]));
        }
    }

    return validated(std::move(p));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("write to '" + path + "' failed");
}

Pattern load_pattern_file(const std::string& path) { return parse_pattern(read_file(path)); }

void save_pattern_file(const Pattern& p, const std::string& path) {
    write_file(path, serialize_pattern(p));
}

}  // namespace sewmatch
