#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "carpetlab/classifier.hpp"

namespace carpetlab {

struct CensusOptions {
    int n = 3;
    bool symmetry_reduce = false;
    int jobs = 1;
    int kmax = 4;
    bool assume_bounded_criterion = false;
    bool timings = false;           // real per-set ms; breaks byte-determinism
    std::string out_path;           // empty = stdout
};

struct CensusRecord {
    std::vector<Digit> digits;      // canonical form (sorted)
    int size = 0;
    bool connected = false;
    std::optional<bool> fragile;
    std::string cut;                // "", "has", "none", "inconclusive"
    std::string localcut;           // "", "found", "not-found"
    std::vector<ChiEntry> chi;
    std::optional<long long> ms;
    std::optional<std::string> error;  // internal violation, run continues
};

// All digit sets of the n x n grid with 1 < |D| < n^2, optionally filtered by
// cardinality and reduced to one representative per dihedral orbit. Ordered by
// digit list (the canonical census key). Exhaustive enumeration is capped at n <= 4.
std::vector<DigitSet> enumerate_digit_sets(int n, std::optional<int> size_filter,
                                           bool symmetry_reduce);

struct GapReport {
    int n = 0;
    bool ok = false;
    std::uint64_t sets_checked = 0;
    std::uint64_t connected_count = 0;
    std::vector<int> connected_sizes;       // distinct |D| with a connected set
    std::uint64_t gap_violations = 0;       // connected with N < |D| < 2N-1
    std::uint64_t line_form_mismatches = 0; // size-N connected that is not a line form
    std::string failure;                    // first offending set, when not ok
};

// Classifies connectedness of every digit set and checks:
//   (a) every connected set has |D| = N and is a line form, or |D| >= 2N-1;
//   (b) every size in {N} u [2N-1, N^2-1] admits a connected set.
GapReport verify_gap(int n, int jobs = 1);

// The 2N+2 line-form digit sets of size N (columns, rows, two diagonals).
std::vector<DigitSet> line_forms(int n);

struct CensusSummary {
    std::uint64_t records = 0;
    std::uint64_t connected = 0;
    std::uint64_t fragile = 0;
    std::uint64_t violations = 0;
    std::uint64_t resumed_from = 0;
};

// Classifies every enumerated set, asserts the cross-module consistency
// invariants, and appends one JSON line per record in canonical order.
// Restartable: existing complete records in the output file are kept and
// skipped; a partial trailing line is truncated.
CensusSummary census_run(const CensusOptions& opt);

// Serialization of one record (a single JSON line, no trailing newline).
std::string census_record_to_json(const CensusRecord& rec, int n);

}  // namespace carpetlab
