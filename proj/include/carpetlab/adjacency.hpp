#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "carpetlab/core.hpp"

namespace carpetlab {

// The recursive contact sets E_0 .. E_{d-1} over admissible nonzero deltas:
//   alpha in E_0  iff ((N_1-1)alpha_1, ..., (N_d-1)alpha_d) in D - D,
//   alpha in E_t  iff some e in D - D has (N*alpha + e) in E_0 u ... u E_{t-1}.
// Two same-level cells with difference delta intersect (as attractor cells,
// not just boxes) iff delta is in E_{d - |delta|}.
struct ESets {
    int d = 0;
    std::vector<int> subdiv;
    std::vector<std::vector<Delta>> levels;  // E_0 .. E_{d-1}, each sorted

    // Memoized verdict per delta code; the answer depends only on delta.
    std::vector<std::int8_t> table;  // 3^d entries

    // delta must be nonzero and admissible, else input_error.
    bool intersects(const Delta& delta) const;

    static int code_of(const Delta& delta);
    Delta delta_of_code(int code) const;
};

ESets compute_esets(const DigitSet& ds);

// The four-case level-1 contact rule for uniform square grids (d = 2):
//   +-(1,1):  (N-1,N-1) in D-D
//   +-(1,-1): (N-1,-(N-1)) in D-D
//   +-(1,0):  one of {(N-1,0)}, {(N-1,-1),(N-1,N-1)}, {(N-1,1),(N-1,-(N-1))} in D-D
//   +-(0,1):  the transposed conditions
// Kept alongside the E_t algorithm as an independently derived oracle.
bool level1_edge_rule_gsc(const DigitSet& ds, const Digit& i, const Digit& j);

// A pair of child digits whose cells stay in contact one level down, with the
// resulting child delta N*delta + pi(u) - pi(v).
struct ChildPair {
    int u = 0;  // digit index on the delta-positive side
    int v = 0;  // digit index on the other side
    Delta child;
};

// All child pairs of an intersecting delta. Non-intersecting delta -> input_error.
std::vector<ChildPair> touching_child_pairs(const DigitSet& ds, const ESets& es,
                                            const Delta& delta);

// Level-k Hata graph: vertices are the |D|^k level-k cells (stored as packed
// pi-vectors, words recoverable), an edge joins two cells iff they intersect.
struct HataGraph {
    int level = 0;
    std::vector<int> subdiv;
    std::vector<long long> axis_range;
    std::vector<std::uint64_t> strides;
    std::vector<std::uint64_t> keys;  // sorted ascending = lexicographic pi order

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // a < b, sorted
    bool labelled = false;
    // Parallel to edges when labelled: the exact point for singleton
    // intersections, nullopt for non-singleton ones.
    std::vector<std::optional<ExactPoint>> labels;

    // CSR adjacency, neighbor lists ascending.
    std::vector<std::uint32_t> adj_offset;
    std::vector<std::uint32_t> adj;

    std::size_t vertex_count() const { return keys.size(); }
    PiVec pivec_of(std::size_t v) const;
};

// O(|D|^k * 3^d): per vertex the <= 3^d - 1 admissible neighbor offsets are
// looked up in the key index and filtered through the contact sets.
// with_labels requires d == 2. jobs == 1 is the serial reference path.
HataGraph build_hata(const DigitSet& ds, int k, bool with_labels = false, int jobs = 1);

// Recovers the word of a vertex from its packed pi-vector.
Word word_of_vertex(const DigitSet& ds, const HataGraph& g, std::size_t v);

}  // namespace carpetlab
