#pragma once

#include <optional>
#include <vector>

#include "carpetlab/adjacency.hpp"
#include "carpetlab/core.hpp"

namespace carpetlab {

// Pairwise cell intersections for carpets (d = 2 only).
//
// Whether a pair of intersecting same-level cells meets in a single point is
// determined by their index difference alone: the cells are a singleton pair
// iff exactly one child pair stays in contact. The chase of that unique child
// pair is delta-determined at every level; the level-1 statement is the proven
// one and the level-n use relies on this delta determinism (checked in tests
// against a geometric box-refinement oracle).

// True iff |touching_child_pairs(delta)| == 1.
// Preconditions: d == 2, delta nonzero admissible and intersecting.
bool is_singleton(const DigitSet& ds, const ESets& es, const Delta& delta);

// One deterministic step of the unique-child chase with the digit pair taken.
struct ChainStep {
    int u = 0;
    int v = 0;
    Delta delta_after;
};

// The unique-child chain of a singleton pair, the two resulting addresses
// (rooted at w and at w2) and their common exact point.
struct SingletonWitness {
    Word w, w2;
    std::vector<ChainStep> chain;  // up to and including cycle closure
    std::size_t cycle_start = 0;   // index into chain where the period begins
    PointAddress addr_w, addr_w2;
    ExactPoint point;
};

// Follows the unique child pairs with cycle detection on the delta value
// (at most 8 distinct deltas in the plane). Throws input_error when the pair
// is not a singleton pair, internal_error if uniqueness breaks mid-chain or
// the two addresses disagree.
SingletonWitness singleton_witness(const DigitSet& ds, const ESets& es,
                                   const Word& w, const Word& w2);

// The explicit level-1 singleton classification for uniform square grids,
// with the closed-form point for each case. Returns the singleton point when
// the intersection is a single point, nullopt when it is larger.
// Serves as an independently derived oracle for is_singleton/singleton_witness.
// Preconditions: uniform square grid, the two cells intersect.
std::optional<ExactPoint> level1_singleton_cases_gsc(const DigitSet& ds,
                                                     const Digit& i, const Digit& j);

// Decides x in cell(c) for |c| == level of x's base, by searching for an
// infinite digit stream inside c that stays index-adjacent to x's stream:
// reachability of a cycle in the finite product automaton with state
// (delta, position in x's preperiod/period). Exact and deterministic.
bool contains_point(const DigitSet& ds, const Word& c, const PointAddress& x);

// Omega_n(x): the level-n cells whose attractor part contains x. Candidates
// are the <= 4 cells whose closed box contains the point, filtered through
// contains_point. Result sorted by pi-vector; always includes the cells the
// address was produced from.
std::vector<Word> omega(const DigitSet& ds, const PointAddress& x, int n);

}  // namespace carpetlab
