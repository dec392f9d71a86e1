#pragma once

#include <optional>
#include <string>
#include <vector>

#include "carpetlab/core.hpp"
#include "carpetlab/intersections.hpp"

namespace carpetlab {

struct ClassifyOptions {
    int kmax = 4;
    int jobs = 1;
    // Accept HasCutPoints when every chi(Gamma_k) up to kmax clears its
    // threshold. Heuristic: the exact criterion quantifies over all k.
    bool assume_bounded_criterion = false;
};

// Fragility: D splits into two parts whose level-1 cell unions meet in exactly
// one point. Decided on the labelled level-1 Hata graph: for each distinct
// singleton label x, delete exactly the edges labelled x and test connectivity.
struct FragilityReport {
    bool fragile = false;
    ExactPoint point;                            // the disconnecting label
    std::vector<Digit> part1, part2;             // the decomposition of D
};

enum class CutStatus { HasCutPoints, NoCutPoints, Inconclusive };

struct ChiEntry {
    int k = 0;
    std::uint64_t chi = 0;
    std::uint64_t threshold = 0;  // chi < threshold establishes NoCutPoints at k
};

struct CutVerdict {
    CutStatus status = CutStatus::Inconclusive;
    std::optional<ExactPoint> witness;  // fragility cut point when available
    bool heuristic = false;             // set when assume_bounded_criterion fired
    int level = 0;                      // k that established NoCutPoints
    std::uint64_t chi_value = 0;
    std::uint64_t threshold = 0;
    std::vector<ChiEntry> ladder;       // all levels computed, ascending k
};

struct LocalCutReport {
    bool found = false;
    int level = 0;  // n in {1,2}
    ExactPoint point;
    std::vector<Word> part_i, part_j;   // disjoint, union = omega_cells
    std::vector<Word> omega_cells;      // Omega_n(x), size in {2,3}
};

// One accepted local-cut witness (tests and the census enumerate all of them).
struct LocalCutWitness {
    int level = 0;
    ExactPoint point;
    std::vector<Word> part_i, part_j;
    std::vector<Word> omega_cells;
};

enum class Verdict {
    Disconnected,
    HasCutPoints,
    HasLocalCutPointsOnly,
    HomeomorphicToStandardCarpet,
    Inconclusive,
};

std::string verdict_tag(Verdict v);

struct ClassificationReport {
    bool connected = false;
    std::optional<FragilityReport> fragility;
    std::optional<CutVerdict> cut;
    std::optional<LocalCutReport> localcut;
    Verdict verdict = Verdict::Inconclusive;
};

// Gamma_1 connectivity through the contact sets (any d).
bool is_connected(const DigitSet& ds, int jobs = 1);

// d == 2 and connected input required.
FragilityReport fragility(const DigitSet& ds, int jobs = 1);

// (a) fragile -> HasCutPoints with the fragility point as witness;
// (b) otherwise walk k = 2..kmax with thresholds T_2 = |D| and
//     T_k = |D|^{k-1} + |D|^{k-3} for k >= 3; chi(Gamma_k) < T_k ends the
//     walk with NoCutPoints at level k;
// (c) otherwise Inconclusive (or heuristic HasCutPoints under the flag),
//     carrying the full chi ladder.
CutVerdict cut_point_verdict(const DigitSet& ds, const ClassifyOptions& opt = {});

// All accepted witnesses at level n, ordered by (point, partition).
// Precondition: connected, non-fragile.
std::vector<LocalCutWitness> local_cut_witnesses(const DigitSet& ds, int n, int jobs = 1);

// Searches n = 1 then n = 2; the first witness under the
// (smallest point, smallest partition) tie-break is reported.
// Preconditions: d == 2, connected, cut verdict NoCutPoints.
LocalCutReport local_cut_verdict(const DigitSet& ds, int jobs = 1);

// The full pipeline. d >= 3 runs connectedness only (verdict Disconnected or
// Inconclusive); d == 2 runs connectedness, fragility, cut and local-cut
// stages and derives the homeomorphism verdict.
ClassificationReport classify(const DigitSet& ds, const ClassifyOptions& opt = {});

}  // namespace carpetlab
