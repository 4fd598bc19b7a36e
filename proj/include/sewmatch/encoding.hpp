#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sewmatch/errors.hpp"
#include "sewmatch/pattern.hpp"

namespace sewmatch {

// 22 raw geometric descriptors of one contour edge.
struct RawEdgeFeatures {
    Vec2 start;                                   // cm
    Vec2 end;                                     // cm
    double length = 0.0;                          // chord length, cm
    Vec2 orientation;                             // unit start->end
    int curvature_type = 0;                       // CurveKind code
    std::array<double, kCurveParamCount> curvature_params{};
    double angle_left = 0.0;                      // interior angle at start vertex, rad
    double angle_right = 0.0;                     // interior angle at end vertex, rad
    int edge_count = 0;                           // edges in the owning panel
    int panel_id = 0;                             // rank of the panel id (order-independent)
};

inline constexpr int kEncodedDim = 24;

// Fixed slot order of the encoded vector; checkpoints are tagged with this
// string and refuse to load under any other layout.
inline constexpr const char* kSlotLayoutTag =
    "edge-features/v1:"
    "x0,y0,x1,y1,l,ox,oy,kt,k1,k2,k3,k4,k5,k6,k7,k8,k9,k10,"
    "sin_al,cos_al,sin_ar,cos_ar,n,u";

// Feature ablation switches: disabled groups are zeroed in place so the
// vector dimension (and checkpoint layout) never changes.
struct EncodeOptions {
    bool use_panel_id = true;
    bool use_topology = true;
};

struct PreprocessedPanel {
    Panel panel;
    std::vector<int> edge_remap;  // old edge index -> new edge index
};

// Translates the bounding box to the origin and normalizes traversal to
// anticlockwise. Throws ValidationError for degenerate (zero-area) panels.
PreprocessedPanel preprocess_panel(const Panel& p);

// Applies preprocess_panel to every panel and re-addresses stitches.
Pattern preprocess_pattern(const Pattern& p);

// One RawEdgeFeatures per edge, node order (panel-major, edge-minor).
// Expects a preprocessed pattern.
std::vector<RawEdgeFeatures> extract_raw(const Pattern& p);

// M x 24 matrix in slot order. Scales cm values by 1/100, expands angles to
// sin/cos, min-max normalizes the per-panel edge count over the pattern.
Eigen::MatrixXd encode(const std::vector<RawEdgeFeatures>& raw, const EncodeOptions& opts = {});

// Ring graph over contour edges: every node is adjacent to its predecessor
// and successor on the owning panel contour.
struct StitchGraph {
    int node_count = 0;
    std::vector<EdgeRef> ref_of_node;
    std::vector<std::vector<int>> node_of;          // [panel][edge] -> node id
    std::vector<std::array<int, 2>> neighbors;      // {prev, next}

    int node_id(EdgeRef r) const { return node_of[static_cast<size_t>(r.panel)][static_cast<size_t>(r.edge)]; }
};

StitchGraph build_graph(const Pattern& p);

}  // namespace sewmatch
