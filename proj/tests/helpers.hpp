#pragma once

#include <random>
#include <set>
#include <vector>

#include "carpetlab/adjacency.hpp"
#include "carpetlab/core.hpp"
#include "carpetlab/graph_metrics.hpp"

namespace carpetlab::testing {

// --- fixtures ---------------------------------------------------------------

inline DigitSet standard_carpet() {
    std::vector<Digit> digits;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (!(a == 1 && b == 1)) digits.push_back({a, b});
    return DigitSet::create(GridSpec::square(3), digits);
}

inline DigitSet gasket() {
    return DigitSet::create(GridSpec::square(2), {{0, 0}, {1, 0}, {1, 1}});
}

inline DigitSet segment() {
    return DigitSet::create(GridSpec::square(3), {{0, 0}, {0, 1}, {0, 2}});
}

// Q_2 connected but the attractor disconnected.
inline DigitSet ex23() {
    return DigitSet::create(GridSpec::square(3), {{0, 0}, {1, 0}, {1, 1}, {1, 2}, {2, 1}});
}

inline DigitSet seven_cell() {
    std::vector<Digit> digits{{0, 0}};
    for (int a = 0; a < 3; ++a)
        for (int b = 1; b < 3; ++b) digits.push_back({a, b});
    return DigitSet::create(GridSpec::square(3), digits);
}

// Column 0 full, columns 1..3 rows 0..1, plus (1,2); N=4, |D|=11, connected.
inline DigitSet wide_comb() {
    std::vector<Digit> digits;
    for (int j = 0; j < 4; ++j) digits.push_back({0, j});
    for (int i = 1; i < 4; ++i)
        for (int j = 0; j < 2; ++j) digits.push_back({i, j});
    digits.push_back({1, 2});
    return DigitSet::create(GridSpec::square(4), digits);
}

// Connected, non-fragile, chi(Gamma_k) above every cut threshold up to k=4:
// the pipeline's honest Inconclusive case.
inline DigitSet pinched() {
    return DigitSet::create(GridSpec::square(3),
                            {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 1}, {2, 2}});
}

// Three corners of a 2x2 grid with uneven column/row widths.
inline DigitSet baranski_gasket() {
    GridSpec grid = GridSpec::with_ratios(
        {2, 2}, {{Rational(1, 3), Rational(2, 3)}, {Rational(1, 2), Rational(1, 2)}});
    return DigitSet::create(grid, {{0, 0}, {1, 0}, {1, 1}});
}

// --- deterministic random digit sets ----------------------------------------

inline std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline DigitSet random_digit_set(std::mt19937_64& rng, const std::vector<int>& dims) {
    int total = 1;
    for (int n : dims) total *= n;
    int size = 2 + static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(total - 2)));
    std::vector<int> order(total);
    for (int i = 0; i < total; ++i) order[i] = i;
    for (int i = total - 1; i > 0; --i)
        std::swap(order[i], order[rng_below(rng, static_cast<std::uint64_t>(i + 1))]);
    std::vector<Digit> digits;
    for (int i = 0; i < size; ++i) {
        int cell = order[i];
        Digit dig(dims.size());
        for (int a = static_cast<int>(dims.size()) - 1; a >= 0; --a) {
            dig[a] = cell % dims[a];
            cell /= dims[a];
        }
        digits.push_back(dig);
    }
    return DigitSet::create(GridSpec::uniform(dims), digits);
}

// --- independent oracles ------------------------------------------------

// chi by deletion: remove each vertex, recount components. Test scale only.
inline std::uint64_t naive_chi(const HataGraph& g) {
    std::size_t n = g.vertex_count();
    std::uint64_t best = 0;
    for (std::size_t drop = 0; drop < n; ++drop) {
        std::vector<std::uint32_t> comp(n, 0);
        std::uint32_t comps = 0;
        std::vector<std::uint64_t> sizes;
        for (std::size_t s = 0; s < n; ++s) {
            if (s == drop || comp[s]) continue;
            ++comps;
            std::uint64_t size = 0;
            std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(s)};
            comp[s] = comps;
            while (!stack.empty()) {
                std::uint32_t v = stack.back();
                stack.pop_back();
                ++size;
                for (std::uint32_t i = g.adj_offset[v]; i < g.adj_offset[v + 1]; ++i) {
                    std::uint32_t u = g.adj[i];
                    if (u == drop || comp[u]) continue;
                    comp[u] = comps;
                    stack.push_back(u);
                }
            }
            sizes.push_back(size);
        }
        if (sizes.size() < 2) continue;
        std::sort(sizes.begin(), sizes.end(), std::greater<>());
        best = std::max(best, sizes[1]);
    }
    return best;
}

// Depth-limited brute force: enumerate every descendant pair.
inline bool brute_boxes_intersect(const DigitSet& ds, const Word& w, const Word& w2, int depth) {
    PiVec a = pi(ds, w), b = pi(ds, w2);
    std::vector<PiVec> left{a}, right{b};
    for (int t = 0; t < depth; ++t) {
        auto grow = [&](std::vector<PiVec>& side) {
            std::vector<PiVec> next;
            for (const PiVec& p : side)
                for (const Digit& dig : ds.digits) {
                    PiVec child(p.size());
                    for (std::size_t ax = 0; ax < p.size(); ++ax)
                        child[ax] = static_cast<long long>(ds.grid.subdiv[ax]) * p[ax] + dig[ax];
                    next.push_back(std::move(child));
                }
            side.swap(next);
        };
        grow(left);
        grow(right);
    }
    for (const PiVec& p : left)
        for (const PiVec& q : right) {
            bool touch = true;
            for (std::size_t ax = 0; ax < p.size() && touch; ++ax)
                if (p[ax] - q[ax] > 1 || q[ax] - p[ax] > 1) touch = false;
            if (touch) return true;
        }
    return false;
}

// Geometric box-refinement proxy for singleton detection: track touching box
// pairs level by level, prune branches that die before the horizon, and ask
// whether exactly one pair survives at every depth.
inline bool refinement_says_singleton(const DigitSet& ds, const Word& w, const Word& w2,
                                      int horizon) {
    struct Node {
        PiVec a, b;
        std::size_t parent;
        bool alive = false;
    };
    std::vector<std::vector<Node>> levels(horizon + 1);
    levels[0].push_back({pi(ds, w), pi(ds, w2), 0, false});
    for (int t = 1; t <= horizon; ++t) {
        for (std::size_t i = 0; i < levels[t - 1].size(); ++i) {
            const Node& node = levels[t - 1][i];
            for (const Digit& du : ds.digits)
                for (const Digit& dv : ds.digits) {
                    PiVec a(node.a.size()), b(node.b.size());
                    bool touch = true;
                    for (std::size_t ax = 0; ax < a.size() && touch; ++ax) {
                        a[ax] = static_cast<long long>(ds.grid.subdiv[ax]) * node.a[ax] + du[ax];
                        b[ax] = static_cast<long long>(ds.grid.subdiv[ax]) * node.b[ax] + dv[ax];
                        if (a[ax] - b[ax] > 1 || b[ax] - a[ax] > 1) touch = false;
                    }
                    if (touch) levels[t].push_back({std::move(a), std::move(b), i, false});
                }
        }
    }
    for (Node& node : levels[horizon]) node.alive = true;
    for (int t = horizon; t >= 1; --t)
        for (const Node& node : levels[t])
            if (node.alive) levels[t - 1][node.parent].alive = true;
    for (int t = 1; t < horizon; ++t) {
        std::size_t alive = 0;
        for (const Node& node : levels[t]) alive += node.alive ? 1 : 0;
        if (alive != 1) return false;
    }
    return true;
}

// Point image under the square's dihedral symmetries, consistent with
// apply_square_symmetry (transpose first, then the axis flips).
inline ExactPoint apply_square_symmetry_point(int sym, const ExactPoint& p) {
    Rational x = p[0], y = p[1];
    if (sym & 4) std::swap(x, y);
    if (sym & 1) x = Rational(1) - x;
    if (sym & 2) y = Rational(1) - y;
    return {x, y};
}

}  // namespace carpetlab::testing
