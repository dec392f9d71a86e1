#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "carpetlab/rational.hpp"

namespace carpetlab {

// A digit is one selected grid cell, given by its per-axis indices
// (axis 1 horizontal, axis 2 vertical, digit (0,0) = bottom-left cell).
using Digit = std::vector<int>;

// Per-axis cell index of a level-k word, 0 <= pi_i < N_i^k.
using PiVec = std::vector<long long>;

// Integer offset between two same-level cells. Admissible iff every
// component is in {-1,0,1}; two closed grid boxes meet iff their index
// difference is admissible.
using Delta = std::vector<int>;

bool delta_admissible(const Delta& d);
int delta_weight(const Delta& d);  // sum of |components|

// The subdivided unit cube: dimension, per-axis subdivision counts, and
// per-axis contraction ratios (uniform 1/N_i unless given explicitly).
struct GridSpec {
    int d = 0;
    std::vector<int> subdiv;                     // N_i >= 2
    std::vector<std::vector<Rational>> ratios;   // per axis, length N_i, positive, sums to 1
    std::vector<std::vector<Rational>> offsets;  // per axis, prefix sums, length N_i + 1

    static GridSpec uniform(std::vector<int> subdiv);
    static GridSpec square(int n);  // d = 2, uniform n x n
    static GridSpec with_ratios(std::vector<int> subdiv,
                                std::vector<std::vector<Rational>> ratios);

    bool is_uniform() const;
    bool is_square_uniform() const;  // d == 2, N_1 == N_2, uniform ratios
    std::uint64_t total_cells() const;

    bool operator==(const GridSpec& o) const;
};

// The selected digits; the entire input of a classification run.
// Digits are stored sorted lexicographically and deduplicated; construction
// validates 1 < |D| < prod N_i and per-axis ranges.
struct DigitSet {
    GridSpec grid;
    std::vector<Digit> digits;

    static DigitSet create(GridSpec grid, std::vector<Digit> digits);

    int dim() const { return grid.d; }
    std::size_t size() const { return digits.size(); }
    // Index of a digit tuple, -1 if absent.
    int index_of(const Digit& dig) const;
    bool contains(const Digit& dig) const { return index_of(dig) >= 0; }

    bool operator==(const DigitSet& o) const;

  private:
    std::unordered_map<std::uint64_t, int> index_;
    std::uint64_t hash_digit(const Digit& dig) const;
    friend DigitSet make_digit_set_unchecked(GridSpec, std::vector<Digit>);
    void build_index();
};

// A finite word: sequence of indices into DigitSet::digits. Level = length.
// The empty word is allowed where stated.
using Word = std::vector<int>;

// Component-wise Horner evaluation pi_i(wu) = N_i * pi_i(w) + u_i.
// Injective over words of equal length. Empty word -> input_error.
PiVec pi(const DigitSet& ds, const Word& w);

Delta pi_difference(const PiVec& a, const PiVec& b);

// Eventually periodic address of an attractor point: the base cell, a finite
// preperiod and a non-empty period of digits.
struct PointAddress {
    Word base;
    std::vector<int> preperiod;
    std::vector<int> period;
};

// Reduces the period to its primitive root and strips absorbable preperiod
// digits (idempotent). Throws input_error on an empty period.
PointAddress canonicalize(const DigitSet& ds, PointAddress addr);

// Moves the base/stream boundary so the base has exactly `level` digits.
PointAddress reroot(const DigitSet& ds, PointAddress addr, int level);

// Exact coordinates: per axis the periodic tail solves v = (period maps)(v),
// then preperiod and base maps are applied. Result lies in [0,1]^d.
ExactPoint evaluate(const DigitSet& ds, const PointAddress& addr);

// Closed box of the cell addressed by a word: lower corner and edge lengths.
struct CellBox {
    ExactPoint lower;
    std::vector<Rational> size;
    bool contains(const ExactPoint& p) const;
};
CellBox box_of_word(const DigitSet& ds, const Word& w);

// The 8 dihedral symmetries of the square grid, d = 2 with N_1 == N_2 only.
// sym in [0,8): bit 2 = transpose, bit 1 = flip axis 2, bit 0 = flip axis 1.
Digit apply_square_symmetry(int sym, int n, const Digit& dig);

// Distinct images of D under the dihedral group; size divides 8.
// Non-square or d != 2 grids -> input_error.
std::vector<DigitSet> symmetry_orbit(const DigitSet& ds);

// Lexicographically least member of the symmetry orbit (census canonical form).
DigitSet canonical_representative(const DigitSet& ds);

}  // namespace carpetlab
