#include "carpetlab/adjacency.hpp"

#include <algorithm>
#include <set>

#include "carpetlab/errors.hpp"
#include "carpetlab/grid.hpp"
#include "carpetlab/intersections.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace carpetlab {

namespace {

int pow3(int d) {
    int r = 1;
    for (int i = 0; i < d; ++i) r *= 3;
    return r;
}

std::vector<Delta> all_admissible_nonzero(int d) {
    std::vector<Delta> out;
    Delta cur(d, -1);
    while (true) {
        if (delta_weight(cur) > 0) out.push_back(cur);
        int a = d - 1;
        while (a >= 0 && cur[a] == 1) cur[a--] = -1;
        if (a < 0) break;
        ++cur[a];
    }
    return out;
}

}  // namespace

int ESets::code_of(const Delta& delta) {
    int code = 0;
    for (std::size_t a = 0; a < delta.size(); ++a) code = code * 3 + (delta[a] + 1);
    return code;
}

Delta ESets::delta_of_code(int code) const {
    Delta delta(d);
    for (int a = d - 1; a >= 0; --a) {
        delta[a] = code % 3 - 1;
        code /= 3;
    }
    return delta;
}

bool ESets::intersects(const Delta& delta) const {
    if (static_cast<int>(delta.size()) != d) throw input_error("delta dimension mismatch");
    if (!delta_admissible(delta)) throw input_error("intersects needs an admissible delta");
    if (delta_weight(delta) == 0) throw input_error("intersects needs a nonzero delta");
    return table[static_cast<std::size_t>(code_of(delta))] != 0;
}

ESets compute_esets(const DigitSet& ds) {
    ESets es;
    es.d = ds.grid.d;
    es.subdiv = ds.grid.subdiv;

    std::set<std::vector<int>> diffs;
    for (const Digit& u : ds.digits)
        for (const Digit& v : ds.digits) {
            std::vector<int> e(es.d);
            for (int a = 0; a < es.d; ++a) e[a] = u[a] - v[a];
            diffs.insert(std::move(e));
        }

    std::vector<Delta> candidates = all_admissible_nonzero(es.d);
    es.levels.resize(es.d);
    std::set<std::vector<int>> accumulated;  // E_0 u ... u E_{t-1}

    for (const Delta& alpha : candidates) {
        std::vector<int> scaled(es.d);
        for (int a = 0; a < es.d; ++a) scaled[a] = (es.subdiv[a] - 1) * alpha[a];
        if (diffs.count(scaled)) es.levels[0].push_back(alpha);
    }
    for (const Delta& alpha : es.levels[0]) accumulated.insert(alpha);

    for (int t = 1; t < es.d; ++t) {
        for (const Delta& alpha : candidates) {
            bool member = false;
            for (const std::vector<int>& e : diffs) {
                std::vector<int> shifted(es.d);
                for (int a = 0; a < es.d; ++a) shifted[a] = es.subdiv[a] * alpha[a] + e[a];
                if (accumulated.count(shifted)) {
                    member = true;
                    break;
                }
            }
            if (member) es.levels[t].push_back(alpha);
        }
        for (const Delta& alpha : es.levels[t]) accumulated.insert(alpha);
    }

    es.table.assign(static_cast<std::size_t>(pow3(es.d)), 0);
    for (const Delta& alpha : candidates) {
        int t = es.d - delta_weight(alpha);
        const std::vector<Delta>& level = es.levels[t];
        if (std::binary_search(level.begin(), level.end(), alpha))
            es.table[static_cast<std::size_t>(ESets::code_of(alpha))] = 1;
    }
    return es;
}

bool level1_edge_rule_gsc(const DigitSet& ds, const Digit& i, const Digit& j) {
    if (!ds.grid.is_square_uniform())
        throw input_error("the level-1 edge rule needs a uniform square d=2 grid");
    if (ds.index_of(i) < 0 || ds.index_of(j) < 0)
        throw input_error("edge rule digits must belong to the digit set");
    if (i == j) throw input_error("edge rule needs two distinct digits");
    int n = ds.grid.subdiv[0];

    auto has_diff = [&](int dx, int dy) {
        for (const Digit& v : ds.digits)
            if (ds.contains({v[0] + dx, v[1] + dy})) return true;
        return false;
    };

    int ex = i[0] - j[0], ey = i[1] - j[1];
    if (ex < -1 || ex > 1 || ey < -1 || ey > 1) return false;
    int m = n - 1;
    if ((ex == 1 && ey == 1) || (ex == -1 && ey == -1)) return has_diff(m, m);
    if ((ex == 1 && ey == -1) || (ex == -1 && ey == 1)) return has_diff(m, -m);
    if (ey == 0)
        return has_diff(m, 0) || (has_diff(m, -1) && has_diff(m, m)) ||
               (has_diff(m, 1) && has_diff(m, -m));
    return has_diff(0, m) || (has_diff(-1, m) && has_diff(m, m)) ||
           (has_diff(1, m) && has_diff(m, -m));
}

std::vector<ChildPair> touching_child_pairs(const DigitSet& ds, const ESets& es,
                                            const Delta& delta) {
    if (!es.intersects(delta)) throw input_error("touching_child_pairs needs an intersecting delta");
    std::vector<ChildPair> out;
    int d = es.d;
    std::size_t m = ds.digits.size();
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = 0; v < m; ++v) {
            Delta child(d);
            bool ok = true;
            for (int a = 0; a < d && ok; ++a) {
                int c = es.subdiv[a] * delta[a] + ds.digits[u][a] - ds.digits[v][a];
                if (c < -1 || c > 1) ok = false;
                child[a] = c;
            }
            if (ok && es.intersects(child))
                out.push_back({static_cast<int>(u), static_cast<int>(v), std::move(child)});
        }
    return out;
}

// ---------------------------------------------------------------------------
// Hata graphs
// ---------------------------------------------------------------------------

PiVec HataGraph::pivec_of(std::size_t v) const {
    std::uint64_t key = keys[v];
    PiVec p(subdiv.size());
    for (std::size_t a = 0; a < subdiv.size(); ++a) {
        p[a] = static_cast<long long>(key / strides[a]);
        key %= strides[a];
    }
    return p;
}

Word word_of_vertex(const DigitSet& ds, const HataGraph& g, std::size_t v) {
    PiVec p = g.pivec_of(v);
    int d = ds.grid.d;
    std::vector<std::vector<int>> comp(d, std::vector<int>(g.level));
    for (int a = 0; a < d; ++a) {
        long long rest = p[a];
        for (int t = g.level - 1; t >= 0; --t) {
            comp[a][t] = static_cast<int>(rest % ds.grid.subdiv[a]);
            rest /= ds.grid.subdiv[a];
        }
    }
    Word w(g.level);
    Digit dig(d);
    for (int t = 0; t < g.level; ++t) {
        for (int a = 0; a < d; ++a) dig[a] = comp[a][t];
        int idx = ds.index_of(dig);
        if (idx < 0) throw internal_error("hata vertex decodes to a digit outside the set");
        w[t] = idx;
    }
    return w;
}

namespace {

void connect_vertices(const ESets& es, HataGraph& g, int jobs) {
    std::vector<Delta> probes;
    for (const Delta& delta : all_admissible_nonzero(es.d))
        if (es.table[static_cast<std::size_t>(ESets::code_of(delta))] != 0) probes.push_back(delta);

    std::size_t n = g.keys.size();
    auto scan = [&](std::size_t v, std::vector<std::pair<std::uint32_t, std::uint32_t>>& out) {
        PiVec p = g.pivec_of(v);
        for (const Delta& delta : probes) {
            std::uint64_t key = 0;
            bool in_range = true;
            for (int a = 0; a < es.d && in_range; ++a) {
                long long c = p[a] + delta[a];
                if (c < 0 || c >= g.axis_range[a]) in_range = false;
                else key += static_cast<std::uint64_t>(c) * g.strides[a];
            }
            if (!in_range || key <= g.keys[v]) continue;
            auto it = std::lower_bound(g.keys.begin(), g.keys.end(), key);
            if (it != g.keys.end() && *it == key)
                out.emplace_back(static_cast<std::uint32_t>(v),
                                 static_cast<std::uint32_t>(it - g.keys.begin()));
        }
    };

    if (jobs > 1) {
#ifdef _OPENMP
        std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> parts(jobs);
#pragma omp parallel num_threads(jobs)
        {
            int tid = omp_get_thread_num();
#pragma omp for schedule(static)
            for (long long v = 0; v < static_cast<long long>(n); ++v)
                scan(static_cast<std::size_t>(v), parts[tid]);
        }
        for (auto& part : parts)
            g.edges.insert(g.edges.end(), part.begin(), part.end());
#else
        for (std::size_t v = 0; v < n; ++v) scan(v, g.edges);
#endif
    } else {
        // Serial reference path.
        for (std::size_t v = 0; v < n; ++v) scan(v, g.edges);
    }
    std::sort(g.edges.begin(), g.edges.end());
}

void build_csr(HataGraph& g) {
    std::size_t n = g.keys.size();
    g.adj_offset.assign(n + 1, 0);
    for (const auto& e : g.edges) {
        ++g.adj_offset[e.first + 1];
        ++g.adj_offset[e.second + 1];
    }
    for (std::size_t v = 0; v < n; ++v) g.adj_offset[v + 1] += g.adj_offset[v];
    g.adj.resize(g.edges.size() * 2);
    std::vector<std::uint32_t> cursor(g.adj_offset.begin(), g.adj_offset.end() - 1);
    for (const auto& e : g.edges) {
        g.adj[cursor[e.first]++] = e.second;
        g.adj[cursor[e.second]++] = e.first;
    }
}

}  // namespace

HataGraph build_hata(const DigitSet& ds, int k, bool with_labels, int jobs) {
    if (k < 1) throw input_error("hata graph level must be >= 1");
    if (with_labels && ds.grid.d != 2)
        throw input_error("edge labels are defined for d = 2 only");

    HataGraph g;
    g.level = k;
    g.subdiv = ds.grid.subdiv;
    {
        LevelGrid lg = build_level_grid(ds, k, jobs);
        g.axis_range = std::move(lg.axis_range);
        g.strides = std::move(lg.strides);
        g.keys = std::move(lg.cells);
    }

    ESets es = compute_esets(ds);
    connect_vertices(es, g, jobs);
    build_csr(g);

    if (with_labels) {
        g.labelled = true;
        g.labels.assign(g.edges.size(), std::nullopt);
        std::vector<std::int8_t> singleton_by_code(es.table.size(), -1);
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            auto [a, b] = g.edges[e];
            Delta delta = pi_difference(g.pivec_of(a), g.pivec_of(b));
            int code = ESets::code_of(delta);
            if (singleton_by_code[code] < 0)
                singleton_by_code[code] = is_singleton(ds, es, delta) ? 1 : 0;
            if (singleton_by_code[code] == 1) {
                SingletonWitness wit = singleton_witness(ds, es, word_of_vertex(ds, g, a),
                                                         word_of_vertex(ds, g, b));
                g.labels[e] = wit.point;
            }
        }
    }
    return g;
}

}  // namespace carpetlab
