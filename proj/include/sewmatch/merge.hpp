#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sewmatch/errors.hpp"
#include "sewmatch/pattern.hpp"

namespace sewmatch {

enum class MirrorAxis { Horizontal, Vertical };

// Maps old edge indices of one panel to new ones; dead edges map to nullopt.
using EdgeRemap = std::vector<std::optional<int>>;

// Matched seam edges, ordered along panel a's contour. Pair t matches
// a-edge pairs[t].first against the reverse traversal of b-edge
// pairs[t].second; a indices ascend cyclically while b indices descend.
struct RunCorrespondence {
    std::vector<std::pair<int, int>> pairs;
};

struct MergeConfig {
    std::string sleeve_id_pattern = "sleeve";
    std::string cuff_id_pattern = "cuff";
    std::vector<std::string> torso_id_patterns = {"torso"};
    double tol = 1e-3;          // cm, per-edge length/param compatibility
    double angular_tol = 1e-4;  // rad, straight-edge collinearity
};

// Reflects the panel about its bounding-box center line (Horizontal flips y,
// Vertical flips x), then restores anticlockwise traversal. The returned
// remap sends old edge indices to new ones.
struct MirroredPanel {
    Panel panel;
    std::vector<int> edge_remap;
};
MirroredPanel mirror_panel(const Panel& p, MirrorAxis axis);

// Decides whether the stitched seam between a and b is geometrically
// compatible: the seam edge pairs must form one consecutive run on both
// contours (opposite traversal) and match per edge in chord length,
// curvature kind and reversed curvature params within tol.
std::optional<RunCorrespondence> panels_mergeable(const Panel& a, const Panel& b,
                                                  std::span<const std::pair<int, int>> seam_pairs,
                                                  double tol);

struct MergeResult {
    Panel panel;
    EdgeRemap remap_a;
    EdgeRemap remap_b;
};

// Glues b onto a along the correspondence run: b is rigidly aligned so the
// runs coincide, the shared edges vanish and the union boundary forms a
// single closed anticlockwise loop. Throws MergeError when the run covers a
// whole panel, the runs are not congruent, or the result self-intersects.
MergeResult merge_panels(const Panel& a, const Panel& b, const RunCorrespondence& corr,
                         double tol = 1e-3);

struct CollapseResult {
    Panel panel;
    std::vector<int> edge_remap;  // old edge index -> new edge index
};

// Fixpoint pass joining consecutive straight edges whose directions differ
// by less than angular_tol, and consecutive quadratic/cubic Bezier edges
// into one B-spline (quadratics are degree-elevated first, which is exact).
CollapseResult collapse_edges(const Panel& p, double angular_tol = 1e-4);

// Full dataset transform: mirrors and merges sleeve/cuff half-panels,
// merges torso halves in place, collapses seam-adjacent edges, and
// re-addresses every stitch through the composed remaps. Pairs interior to
// a merged seam are dropped; pairs landing on a collapsed edge produce
// multi-edge annotations.
Pattern transform_pattern(const Pattern& p, const MergeConfig& config);

}  // namespace sewmatch
