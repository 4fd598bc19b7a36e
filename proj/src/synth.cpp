#include "sewmatch/synth.hpp"

#include <cmath>

#include "sewmatch/errors.hpp"
#include "sewmatch/merge.hpp"
#include "sewmatch/rng.hpp"

namespace sewmatch {

namespace {

double jittered(Rng& rng, double base, double jitter) {
    return base * (1.0 + jitter * (2.0 * rng.next_double() - 1.0));
}

Panel rectangle(const std::string& id, double w, double h) {
    Panel p;
    p.panel_id = id;
    p.vertices = {{0, 0}, {w, 0}, {w, h}, {0, h}};
    p.edges = {{0, 1, {}}, {1, 2, {}}, {2, 3, {}}, {3, 0, {}}};
    return p;
}

Pattern make_tube(Rng& rng, double jitter) {
    const double h = jittered(rng, 60.0, jitter);
    const double wf = jittered(rng, 40.0, jitter);
    const double wb = jittered(rng, 44.0, jitter);

    Pattern p;
    p.name = "tube";
    p.panels.push_back(rectangle("front", wf, h));
    p.panels.push_back(rectangle("back", wb, h));
    // Edge order: 0 bottom, 1 right, 2 top, 3 left.
    p.stitches.push_back(StitchPair::canonical({0, 1}, {1, 1}));
    p.stitches.push_back(StitchPair::canonical({0, 3}, {1, 3}));
    return p;
}

Pattern make_skirt(Rng& rng, double jitter) {
    const double h = jittered(rng, 50.0, jitter);
    const double seam_offsets[4] = {jittered(rng, 3.0, jitter), jittered(rng, 5.0, jitter),
                                    jittered(rng, 7.0, jitter), jittered(rng, 9.0, jitter)};

    Pattern p;
    p.name = "skirt";
    for (int i = 0; i < 4; ++i) {
        const double b = jittered(rng, 42.0, jitter);
        const double dl = seam_offsets[i];
        const double dr = seam_offsets[(i + 1) % 4];
        Panel panel;
        panel.panel_id = "panel_" + std::to_string(i);
        panel.vertices = {{0, 0}, {b, 0}, {b - dr, h}, {dl, h}};
        panel.edges = {{0, 1, {}}, {1, 2, {}}, {2, 3, {}}, {3, 0, {}}};
        p.panels.push_back(std::move(panel));
    }
    // Right slant of panel i and left slant of panel i+1 share seam length
    // sqrt(h^2 + seam_offsets[i+1]^2) by construction.
    for (int i = 0; i < 4; ++i)
        p.stitches.push_back(StitchPair::canonical({i, 1}, {(i + 1) % 4, 3}));
    return p;
}

Panel torso_half(const std::string& id, double width, double height, double armhole_chord,
                 double bulge) {
    // Pentagon with the armhole cut from the upper right corner:
    // 0 bottom, 1 side, 2 armhole (quadratic), 3 top, 4 other side.
    const double dx = 0.6 * armhole_chord;
    const double dy = 0.8 * armhole_chord;
    Panel p;
    p.panel_id = id;
    p.vertices = {{0, 0}, {width, 0}, {width, height - dy}, {width - dx, height}, {0, height}};
    p.edges = {{0, 1, {}},
               {1, 2, {}},
               {2, 3, CurvatureSpec::quad({0.5, bulge})},
               {3, 4, {}},
               {4, 0, {}}};
    return p;
}

Panel sleeve_half(const std::string& id, double fold_len, double wrist_half, double cap_chord,
                  double bulge) {
    // 0 wrist half, 1 underarm, 2 cap half (quadratic), 3 fold seam.
    Panel p;
    p.panel_id = id;
    p.vertices = {{0, 0}, {0, -wrist_half}, {fold_len, -cap_chord}, {fold_len, 0}};
    p.edges = {{0, 1, {}}, {1, 2, {}}, {2, 3, CurvatureSpec::quad({0.5, -bulge})}, {3, 0, {}}};
    return p;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::Tube: return "tube";
        case Family::FourPanelSkirt: return "four_panel_skirt";
        case Family::BodiceWithSleeve: return "bodice_with_sleeve";
    }
    return "unknown";
}

Pattern split_bodice_fixture(std::uint64_t seed, double jitter) {
    if (jitter < 0.0 || jitter > 0.3) throw ConfigError("jitter must lie in [0, 0.3]");
    Rng rng(substream(seed, 2));

    const double torso_w = jittered(rng, 44.0, jitter);
    const double torso_h = jittered(rng, 55.0, jitter);
    const double armhole = jittered(rng, 22.0, jitter);  // chord, shared by both torsos
    const double bulge_f = jittered(rng, 0.12, jitter);
    const double bulge_b = jittered(rng, 0.16, jitter);
    const double fold_len = jittered(rng, 48.0, jitter);
    const double wrist_f = jittered(rng, 13.0, jitter);
    const double wrist_b = jittered(rng, 15.0, jitter);

    Pattern p;
    p.name = "bodice_split";
    p.panels.push_back(torso_half("ftorso", torso_w, torso_h, armhole, bulge_f));
    p.panels.push_back(torso_half("btorso", torso_w, torso_h, armhole, bulge_b));
    p.panels.push_back(sleeve_half("fsleeve", fold_len, wrist_f, armhole, bulge_f));
    p.panels.push_back(sleeve_half("bsleeve", fold_len, wrist_b, armhole, bulge_b));

    p.stitches.push_back(StitchPair::canonical({0, 2}, {2, 2}));  // front armhole - front cap half
    p.stitches.push_back(StitchPair::canonical({1, 2}, {3, 2}));  // back armhole - back cap half
    p.stitches.push_back(StitchPair::canonical({2, 3}, {3, 3}));  // artificial fold seam
    p.stitches.push_back(StitchPair::canonical({0, 1}, {1, 1}));  // side seam
    p.stitches.push_back(StitchPair::canonical({0, 4}, {1, 4}));  // other side seam
    return p;
}

Pattern generate(std::uint64_t seed, Family family, double jitter) {
    if (jitter < 0.0 || jitter > 0.3) throw ConfigError("jitter must lie in [0, 0.3]");
    switch (family) {
        case Family::Tube: {
            Rng rng(substream(seed, 0));
            return make_tube(rng, jitter);
        }
        case Family::FourPanelSkirt: {
            Rng rng(substream(seed, 1));
            return make_skirt(rng, jitter);
        }
        case Family::BodiceWithSleeve: {
            // The merged sleeve is produced by the same transform that the
            // dataset extension uses, so its cap is a genuine collapsed
            // B-spline stitched to both armholes.
            MergeConfig cfg;
            cfg.cuff_id_pattern.clear();
            cfg.torso_id_patterns.clear();
            Pattern merged = transform_pattern(split_bodice_fixture(seed, jitter), cfg);
            merged.name = "bodice_with_sleeve";
            return merged;
        }
    }
    throw ConfigError("unknown family");
}

Corpus generate_corpus(std::uint64_t seed, FamilyCounts counts, double jitter) {
    const int total = counts.total();
    if (total < 10) throw ConfigError("corpus needs at least 10 patterns for an 80-10-10 split");

    Corpus corpus;
    corpus.patterns.reserve(static_cast<size_t>(total));
    int index = 0;
    const auto emit = [&](Family f, int n) {
        for (int i = 0; i < n; ++i, ++index) {
            Pattern p = generate(substream(seed, static_cast<std::uint64_t>(index)), f, jitter);
            p.name = family_name(f) + "_" + std::to_string(index);
            corpus.patterns.push_back(std::move(p));
        }
    };
    emit(Family::Tube, counts.tube);
    emit(Family::FourPanelSkirt, counts.skirt);
    emit(Family::BodiceWithSleeve, counts.bodice);

    std::vector<int> order(static_cast<size_t>(total));
    for (int i = 0; i < total; ++i) order[static_cast<size_t>(i)] = i;
    Rng rng(substream(seed, 0x5E11ED));
    rng.shuffle(order);

    const int n_val = static_cast<int>(std::lround(0.1 * total));
    const int n_test = static_cast<int>(std::lround(0.1 * total));
    corpus.val.assign(order.begin(), order.begin() + n_val);
    corpus.test.assign(order.begin() + n_val, order.begin() + n_val + n_test);
    corpus.train.assign(order.begin() + n_val + n_test, order.end());
    return corpus;
}

}  // namespace sewmatch
