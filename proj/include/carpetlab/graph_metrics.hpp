#pragma once

#include <cstdint>
#include <vector>

#include "carpetlab/adjacency.hpp"

namespace carpetlab {

// A cut vertex together with the component sizes of G - {v}, descending.
struct CutVertexRecord {
    std::uint32_t vertex = 0;
    std::vector<std::uint32_t> component_sizes;  // sum = |V| - 1, count >= 2

    std::uint32_t second_largest() const {
        return component_sizes.size() > 1 ? component_sizes[1] : 0;
    }
};

bool graph_connected(const HataGraph& g);

// Single-pass lowlink DFS (iterative). Records are ordered by vertex id.
// Disconnected input -> input_error.
std::vector<CutVertexRecord> articulation(const HataGraph& g);

// chi(G) = max over cut vertices of the second-largest component size of
// G - {v}; 0 when the graph is 2-connected. Disconnected input -> input_error.
std::uint64_t chi(const HataGraph& g);

}  // namespace carpetlab
