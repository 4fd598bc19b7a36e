#pragma once

#include <string>
#include <string_view>

#include "sewmatch/errors.hpp"
#include "sewmatch/pattern.hpp"

namespace sewmatch {

// Canonical pattern document: UTF-8 JSON with top-level keys `name`,
// `panels` (id, vertices as [x,y] cm, edges as {start,end,curvature}) and
// `stitches` as [[{panel,edge},{panel,edge}], ...].
//
// parse_pattern throws ParseError on malformed text, SchemaError on
// missing/mistyped fields and ValidationError when the decoded pattern
// breaks a structural invariant. Stitch pairs are canonicalized to
// smaller-ref-first on load.
Pattern parse_pattern(std::string_view bytes);

// Deterministic; parse_pattern(serialize_pattern(p)) == p.
std::string serialize_pattern(const Pattern& p);

// Reads a GarmentCodeData-style specification document and normalizes it
// into the canonical model. Unknown curvature types and non-binary
// stitches raise SchemaError naming the construct.
Pattern ingest_external(std::string_view bytes);

Pattern load_pattern_file(const std::string& path);
void save_pattern_file(const Pattern& p, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace sewmatch
