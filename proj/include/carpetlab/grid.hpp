#pragma once

#include <cstdint>
#include <vector>

#include "carpetlab/core.hpp"

namespace carpetlab {

// Occupied cells of the level-n prefractal Q_n as packed integer indices.
// Key = sum pi_i * stride_i with axis 0 most significant, so ascending key
// order is lexicographic order on pi-vectors.
struct LevelGrid {
    int level = 0;
    std::vector<int> subdiv;
    std::vector<long long> axis_range;       // N_i^level
    std::vector<std::uint64_t> strides;
    std::vector<std::uint64_t> cells;        // sorted

    bool contains(std::uint64_t key) const;
    PiVec unpack(std::uint64_t key) const;
    std::uint64_t pack(const PiVec& p) const;
};

// N_i^level per axis plus packing strides; refuses index spaces beyond 62 bits.
void level_geometry(const std::vector<int>& subdiv, int level, std::vector<long long>& axis_range,
                    std::vector<std::uint64_t>& strides);

// Iterated expansion P_{t+1} = N*P_t + pi(D). |cells| = |D|^n exactly.
// jobs > 1 uses the OpenMP kernel; jobs == 1 the serial reference.
LevelGrid build_level_grid(const DigitSet& ds, int n, int jobs = 1);

// BFS over occupied cells with Chebyshev-distance-1 adjacency (corner contact
// counts: closed boxes sharing only a corner still connect the union).
bool grid_connected(const LevelGrid& grid);

// Attractor connectedness via the prefractal criterion: Q_{d+1} connected.
bool connected_via_Q(const DigitSet& ds, int jobs = 1);

// Whether some pair of level-(|w|+depth) descendants of w and w' has an
// admissible index difference. Searches only the facing boundary slabs of the
// two cells, never the full descendant sets.
bool boxes_intersect_at_depth(const DigitSet& ds, const Word& w, const Word& w2, int depth);

// Binary raster of Q_n, row 0 = top of the unit square. d = 2 only.
struct Raster {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> filled;  // row-major, 1 = occupied

    std::size_t filled_count() const;
};
Raster render_raster(const DigitSet& ds, int n);

}  // namespace carpetlab
