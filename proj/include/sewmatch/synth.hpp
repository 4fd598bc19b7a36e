#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sewmatch/pattern.hpp"

namespace sewmatch {

enum class Family {
    Tube,             // two rectangles stitched along both vertical sides
    FourPanelSkirt,   // four trapezoids stitched in a ring
    BodiceWithSleeve, // torsos plus a merged sleeve with a multi-edge cap
};

std::string family_name(Family f);

// Deterministic per (seed, family, jitter). Jitter is a relative amplitude
// in [0, 0.3]; stitched edges keep exactly equal chord lengths, and the
// bodice sleeve cap chord equals the sum of both armhole chords.
Pattern generate(std::uint64_t seed, Family family, double jitter);

// Pre-merge bodice with mirrored sleeve halves and the artificial fold
// seam; transform_pattern turns it into the merged multi-edge version.
Pattern split_bodice_fixture(std::uint64_t seed, double jitter);

struct FamilyCounts {
    int tube = 0;
    int skirt = 0;
    int bodice = 0;

    int total() const { return tube + skirt + bodice; }
};

struct Corpus {
    std::vector<Pattern> patterns;
    std::vector<int> train;
    std::vector<int> val;
    std::vector<int> test;
};

// Seeded corpus with a disjoint, exhaustive 80-10-10 split (val and test
// sizes round to nearest; train takes the remainder).
Corpus generate_corpus(std::uint64_t seed, FamilyCounts counts, double jitter);

}  // namespace sewmatch
