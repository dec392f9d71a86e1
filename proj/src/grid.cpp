#include "carpetlab/grid.hpp"

#include <algorithm>
#include <set>

#include "carpetlab/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace carpetlab {

void level_geometry(const std::vector<int>& subdiv, int level, std::vector<long long>& axis_range,
                    std::vector<std::uint64_t>& strides) {
    int d = static_cast<int>(subdiv.size());
    axis_range.assign(d, 1);
    for (int a = 0; a < d; ++a)
        for (int t = 0; t < level; ++t) {
            if (axis_range[a] > (1LL << 62) / subdiv[a]) throw resource_error("grid level too deep to index");
            axis_range[a] *= subdiv[a];
        }
    strides.assign(d, 1);
    for (int a = d - 2; a >= 0; --a) {
        std::uint64_t range = static_cast<std::uint64_t>(axis_range[a + 1]);
        if (strides[a + 1] > (std::uint64_t{1} << 62) / range)
            throw resource_error("grid level too deep to index");
        strides[a] = strides[a + 1] * range;
    }
    if (static_cast<std::uint64_t>(axis_range[0]) > (std::uint64_t{1} << 62) / strides[0])
        throw resource_error("grid level too deep to index");
}

namespace {

std::uint64_t pow_u64(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > (std::uint64_t{1} << 62) / base) throw resource_error("cell count overflow");
        r *= base;
    }
    return r;
}

// Flat pi-vectors (stride d) of every length-n word, in lexicographic word
// order. The expansion is duplicate-free: each child determines its parent
// and final letter uniquely.
std::vector<long long> expand_pis(const DigitSet& ds, int n, int jobs) {
    int d = ds.grid.d;
    std::size_t m = ds.digits.size();
    require_cells(pow_u64(m, n), "level grid");

    std::vector<long long> flat(m * d);
    for (std::size_t j = 0; j < m; ++j)
        for (int a = 0; a < d; ++a) flat[j * d + a] = ds.digits[j][a];

    for (int t = 1; t < n; ++t) {
        std::size_t count = flat.size() / d;
        std::vector<long long> next(count * m * d);
        auto emit = [&](std::size_t i) {
            for (std::size_t j = 0; j < m; ++j)
                for (int a = 0; a < d; ++a)
                    next[(i * m + j) * d + a] =
                        static_cast<long long>(ds.grid.subdiv[a]) * flat[i * d + a] +
                        ds.digits[j][a];
        };
        if (jobs > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(jobs)
            for (long long i = 0; i < static_cast<long long>(count); ++i)
                emit(static_cast<std::size_t>(i));
#else
            for (std::size_t i = 0; i < count; ++i) emit(i);
#endif
        } else {
            // Serial reference path.
            for (std::size_t i = 0; i < count; ++i) emit(i);
        }
        flat.swap(next);
    }
    return flat;
}

}  // namespace

bool LevelGrid::contains(std::uint64_t key) const {
    return std::binary_search(cells.begin(), cells.end(), key);
}

PiVec LevelGrid::unpack(std::uint64_t key) const {
    PiVec p(subdiv.size());
    for (std::size_t a = 0; a < subdiv.size(); ++a) {
        p[a] = static_cast<long long>(key / strides[a]);
        key %= strides[a];
    }
    return p;
}

std::uint64_t LevelGrid::pack(const PiVec& p) const {
    std::uint64_t key = 0;
    for (std::size_t a = 0; a < p.size(); ++a) key += static_cast<std::uint64_t>(p[a]) * strides[a];
    return key;
}

LevelGrid build_level_grid(const DigitSet& ds, int n, int jobs) {
    if (n < 1) throw input_error("level must be >= 1");
    LevelGrid g;
    g.level = n;
    g.subdiv = ds.grid.subdiv;
    level_geometry(g.subdiv, n, g.axis_range, g.strides);

    std::vector<long long> flat = expand_pis(ds, n, jobs);
    int d = ds.grid.d;
    std::size_t count = flat.size() / d;
    g.cells.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t key = 0;
        for (int a = 0; a < d; ++a) key += static_cast<std::uint64_t>(flat[i * d + a]) * g.strides[a];
        g.cells[i] = key;
    }
    std::sort(g.cells.begin(), g.cells.end());
    return g;
}

bool grid_connected(const LevelGrid& grid) {
    if (grid.cells.empty()) throw input_error("grid connectivity needs a non-empty grid");
    std::size_t n = grid.cells.size();
    int d = static_cast<int>(grid.subdiv.size());

    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;

    // All nonzero Chebyshev-1 offsets.
    std::vector<Delta> offsets;
    Delta cur(d, -1);
    while (true) {
        if (std::any_of(cur.begin(), cur.end(), [](int c) { return c != 0; })) offsets.push_back(cur);
        int a = d - 1;
        while (a >= 0 && cur[a] == 1) cur[a--] = -1;
        if (a < 0) break;
        ++cur[a];
    }

    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        PiVec p = grid.unpack(grid.cells[v]);
        for (const Delta& off : offsets) {
            std::uint64_t key = 0;
            bool in_range = true;
            for (int a = 0; a < d && in_range; ++a) {
                long long c = p[a] + off[a];
                if (c < 0 || c >= grid.axis_range[a]) in_range = false;
                else key += static_cast<std::uint64_t>(c) * grid.strides[a];
            }
            if (!in_range) continue;
            auto it = std::lower_bound(grid.cells.begin(), grid.cells.end(), key);
            if (it == grid.cells.end() || *it != key) continue;
            std::size_t u = static_cast<std::size_t>(it - grid.cells.begin());
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                stack.push_back(u);
            }
        }
    }
    return reached == n;
}

bool connected_via_Q(const DigitSet& ds, int jobs) {
    return grid_connected(build_level_grid(ds, ds.grid.d + 1, jobs));
}

namespace {

// Descendant pi-vectors of one cell restricted to the faces named by `pin`:
// pin[a] = -1 pins axis a at index 0, +1 at index N_a^depth - 1, 0 leaves it
// free. Pruned level by level, so only the slab is ever materialized.
std::vector<PiVec> slab_descendants(const DigitSet& ds, const Delta& pin, int depth) {
    int d = ds.grid.d;
    std::vector<PiVec> cur{PiVec(d, 0)};
    std::vector<long long> range(d, 1);  // N_a^t for the current level t
    for (int t = 1; t <= depth && !cur.empty(); ++t) {
        for (int a = 0; a < d; ++a) range[a] *= ds.grid.subdiv[a];
        std::vector<PiVec> next;
        for (const PiVec& p : cur)
            for (const Digit& dig : ds.digits) {
                PiVec child(d);
                bool keep = true;
                for (int a = 0; a < d && keep; ++a) {
                    child[a] = static_cast<long long>(ds.grid.subdiv[a]) * p[a] + dig[a];
                    if (pin[a] == -1 && child[a] != 0) keep = false;
                    if (pin[a] == +1 && child[a] != range[a] - 1) keep = false;
                }
                if (keep) next.push_back(std::move(child));
            }
        cur.swap(next);
    }
    return cur;
}

}  // namespace

bool boxes_intersect_at_depth(const DigitSet& ds, const Word& w, const Word& w2, int depth) {
    if (w.size() != w2.size()) throw input_error("boxes_intersect_at_depth needs equal-level words");
    if (depth < 0) throw input_error("depth must be >= 0");
    if (w == w2) return true;
    int d = ds.grid.d;
    Delta base = pi_difference(pi(ds, w), pi(ds, w2));
    if (!delta_admissible(base)) return false;
    if (depth == 0) return true;

    // On an axis where the parents differ by +-1 the descendants must sit on
    // the two facing boundary faces; on the other axes they stay within
    // Chebyshev distance 1.
    Delta pin_w(d, 0), pin_w2(d, 0);
    for (int a = 0; a < d; ++a) {
        if (base[a] == 1) { pin_w[a] = -1; pin_w2[a] = +1; }
        if (base[a] == -1) { pin_w[a] = +1; pin_w2[a] = -1; }
    }
    std::vector<PiVec> side_w = slab_descendants(ds, pin_w, depth);
    std::vector<PiVec> side_w2 = slab_descendants(ds, pin_w2, depth);
    if (side_w.empty() || side_w2.empty()) return false;

    std::vector<int> free_axes;
    for (int a = 0; a < d; ++a)
        if (base[a] == 0) free_axes.push_back(a);
    if (free_axes.empty()) return true;

    std::set<std::vector<long long>> seen;
    for (const PiVec& p : side_w) {
        std::vector<long long> proj;
        proj.reserve(free_axes.size());
        for (int a : free_axes) proj.push_back(p[a]);
        seen.insert(std::move(proj));
    }
    // Chebyshev-1 probe around every cell on the other side.
    std::vector<long long> probe(free_axes.size());
    for (const PiVec& p : side_w2) {
        std::vector<int> off(free_axes.size(), -1);
        while (true) {
            for (std::size_t i = 0; i < free_axes.size(); ++i) probe[i] = p[free_axes[i]] + off[i];
            if (seen.count(probe)) return true;
            std::size_t a = free_axes.size();
            while (a > 0 && off[a - 1] == 1) off[--a] = -1;
            if (a == 0) break;
            ++off[a - 1];
        }
    }
    return false;
}

std::size_t Raster::filled_count() const {
    std::size_t n = 0;
    for (std::uint8_t p : filled) n += p;
    return n;
}

Raster render_raster(const DigitSet& ds, int n) {
    if (ds.grid.d != 2) throw input_error("rasterization supports d = 2 only");
    LevelGrid g = build_level_grid(ds, n);
    Raster r;
    r.width = static_cast<int>(g.axis_range[0]);
    r.height = static_cast<int>(g.axis_range[1]);
    r.filled.assign(static_cast<std::size_t>(r.width) * r.height, 0);
    for (std::uint64_t key : g.cells) {
        PiVec p = g.unpack(key);
        int col = static_cast<int>(p[0]);
        int row = r.height - 1 - static_cast<int>(p[1]);  // row 0 = top
        r.filled[static_cast<std::size_t>(row) * r.width + col] = 1;
    }
    return r;
}

}  // namespace carpetlab
