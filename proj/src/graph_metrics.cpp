#include "carpetlab/graph_metrics.hpp"

#include <algorithm>

#include "carpetlab/errors.hpp"

namespace carpetlab {

bool graph_connected(const HataGraph& g) {
    std::size_t n = g.vertex_count();
    if (n == 0) return true;
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        std::uint32_t v = stack.back();
        stack.pop_back();
        for (std::uint32_t i = g.adj_offset[v]; i < g.adj_offset[v + 1]; ++i) {
            std::uint32_t u = g.adj[i];
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
        }
    }
    return reached == n;
}

std::vector<CutVertexRecord> articulation(const HataGraph& g) {
    if (!graph_connected(g)) throw input_error("articulation needs a connected graph");
    std::size_t n = g.vertex_count();
    std::vector<CutVertexRecord> records;
    if (n <= 1) return records;

    constexpr std::uint32_t kNone = 0xffffffffu;
    std::vector<std::uint32_t> disc(n, 0), low(n, 0), parent(n, kNone), subtree(n, 1);
    // Sizes of child subtrees split off at each vertex.
    std::vector<std::vector<std::uint32_t>> splits(n);
    std::uint32_t timer = 1;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack;
    stack.emplace_back(0, g.adj_offset[0]);
    disc[0] = low[0] = timer++;

    while (!stack.empty()) {
        std::uint32_t v = stack.back().first;
        std::uint32_t i = stack.back().second;
        if (i < g.adj_offset[v + 1]) {
            ++stack.back().second;
            std::uint32_t u = g.adj[i];
            if (disc[u] == 0) {
                parent[u] = v;
                disc[u] = low[u] = timer++;
                stack.emplace_back(u, g.adj_offset[u]);
            } else if (u != parent[v]) {
                low[v] = std::min(low[v], disc[u]);
            }
        } else {
            stack.pop_back();
            std::uint32_t p = parent[v];
            if (p == kNone) continue;
            low[p] = std::min(low[p], low[v]);
            subtree[p] += subtree[v];
            if (low[v] >= disc[p]) splits[p].push_back(subtree[v]);
        }
    }

    for (std::uint32_t v = 0; v < n; ++v) {
        bool root = parent[v] == kNone;
        if (root && splits[v].size() < 2) continue;
        if (!root && splits[v].empty()) continue;
        CutVertexRecord rec;
        rec.vertex = v;
        rec.component_sizes = splits[v];
        if (!root) {
            std::uint32_t rest = static_cast<std::uint32_t>(n) - 1;
            for (std::uint32_t s : rec.component_sizes) rest -= s;
            rec.component_sizes.push_back(rest);  // the side holding the root
        }
        std::sort(rec.component_sizes.begin(), rec.component_sizes.end(),
                  std::greater<std::uint32_t>());
        records.push_back(std::move(rec));
    }
    return records;
}

std::uint64_t chi(const HataGraph& g) {
    std::uint64_t best = 0;
    for (const CutVertexRecord& rec : articulation(g))
        best = std::max<std::uint64_t>(best, rec.second_largest());
    return best;
}

}  // namespace carpetlab
