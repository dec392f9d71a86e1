#pragma once

#include <string>

#include "carpetlab/adjacency.hpp"
#include "carpetlab/census.hpp"
#include "carpetlab/classifier.hpp"
#include "carpetlab/core.hpp"
#include "carpetlab/grid.hpp"

namespace carpetlab {

enum class InputFormat { Auto, GridText, Json };

// Grid text (d = 2): optional header "N <int>", then N rows of N characters
// from {0,1} (also '.' for 0 and '#' for 1). The first text row is the TOP row
// of the unit square (axis-2 index N-1).
//
// JSON: {"dims":[N_1..N_d],"digits":[[j_1..j_d],...],"p":[["1/3",...],...]}
// with optional per-axis ratio rows that must sum to exactly 1.
//
// Malformed input throws input_error with a line/column diagnostic.
DigitSet parse_digit_set(const std::string& input, InputFormat fmt = InputFormat::Auto);

// Canonical JSON document for a digit set; parse(emit(ds)) is the identity.
std::string emit_digit_set_json(const DigitSet& ds);

// Grid text round-trip (d = 2 square grids), top row first.
std::string emit_grid_text(const DigitSet& ds);

// Deterministic DOT: vertices in key order, ids are dash-joined digit tuples
// ("(2,1)-(0,2)"), singleton edges carry label="x=(p/q,r/s)".
std::string emit_dot(const DigitSet& ds, const HataGraph& g);

// JSON edge-list document for a Hata graph.
std::string emit_hata_json(const DigitSet& ds, const HataGraph& g);

// Classification report as a JSON document with stable field order.
std::string report_to_json(const DigitSet& ds, const ClassificationReport& rep);

// Human-readable report summary (one line per stage).
std::string report_to_text(const DigitSet& ds, const ClassificationReport& rep);

// Binary PGM (P5), row 0 on top, filled cells black.
std::string emit_pgm(const Raster& raster);

// 8-bit grayscale PNG via zlib, same pixel convention as the PGM.
std::string emit_png(const Raster& raster);

}  // namespace carpetlab
