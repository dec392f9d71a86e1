#include "carpetlab/classifier.hpp"

#include <algorithm>
#include <map>

#include "carpetlab/errors.hpp"
#include "carpetlab/graph_metrics.hpp"
#include "carpetlab/grid.hpp"

namespace carpetlab {

std::string verdict_tag(Verdict v) {
    switch (v) {
        case Verdict::Disconnected: return "disconnected";
        case Verdict::HasCutPoints: return "has-cut-points";
        case Verdict::HasLocalCutPointsOnly: return "has-local-cut-points-only";
        case Verdict::HomeomorphicToStandardCarpet: return "homeomorphic-to-standard-carpet";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

bool is_connected(const DigitSet& ds, int jobs) {
    return graph_connected(build_hata(ds, 1, false, jobs));
}

FragilityReport fragility(const DigitSet& ds, int jobs) {
    if (ds.grid.d != 2) throw input_error("fragility is defined for d = 2 only");
    HataGraph g = build_hata(ds, 1, true, jobs);
    if (!graph_connected(g)) throw input_error("fragility needs a connected digit set");

    std::map<ExactPoint, std::vector<std::size_t>> by_label;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (g.labels[e]) by_label[*g.labels[e]].push_back(e);

    std::size_t n = g.vertex_count();
    FragilityReport rep;
    for (const auto& [point, edges] : by_label) {
        // Drop exactly the edges labelled by this point, keep everything else.
        std::vector<std::uint8_t> dropped(g.edges.size(), 0);
        for (std::size_t e : edges) dropped[e] = 1;

        std::vector<std::vector<std::uint32_t>> adj(n);
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            if (dropped[e]) continue;
            adj[g.edges[e].first].push_back(g.edges[e].second);
            adj[g.edges[e].second].push_back(g.edges[e].first);
        }
        std::vector<std::uint8_t> seen(n, 0);
        std::vector<std::uint32_t> stack{0};
        seen[0] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            for (std::uint32_t u : adj[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    ++reached;
                    stack.push_back(u);
                }
        }
        if (reached == n) continue;

        rep.fragile = true;
        rep.point = point;
        // Vertex 0 is the lexicographically smallest digit; its component is
        // one side of the decomposition.
        for (std::size_t v = 0; v < n; ++v)
            (seen[v] ? rep.part1 : rep.part2).push_back(ds.digits[v]);
        return rep;
    }
    return rep;
}

namespace {

std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

CutVerdict cut_verdict_with_fragility(const DigitSet& ds, const FragilityReport& frag,
                                      const ClassifyOptions& opt) {
    CutVerdict verdict;
    if (frag.fragile) {
        verdict.status = CutStatus::HasCutPoints;
        verdict.witness = frag.point;
        return verdict;
    }
    std::uint64_t size = ds.size();
    for (int k = 2; k <= opt.kmax; ++k) {
        std::uint64_t chi_k = chi(build_hata(ds, k, false, opt.jobs));
        std::uint64_t threshold = k == 2 ? size : ipow(size, k - 1) + ipow(size, k - 3);
        verdict.ladder.push_back({k, chi_k, threshold});
        if (chi_k < threshold) {
            verdict.status = CutStatus::NoCutPoints;
            verdict.level = k;
            verdict.chi_value = chi_k;
            verdict.threshold = threshold;
            return verdict;
        }
    }
    if (opt.assume_bounded_criterion) {
        verdict.status = CutStatus::HasCutPoints;
        verdict.heuristic = true;
        return verdict;
    }
    verdict.status = CutStatus::Inconclusive;
    return verdict;
}

}  // namespace

CutVerdict cut_point_verdict(const DigitSet& ds, const ClassifyOptions& opt) {
    if (ds.grid.d != 2) throw input_error("cut point analysis is defined for d = 2 only");
    if (opt.kmax < 2) throw input_error("kmax must be >= 2");
    return cut_verdict_with_fragility(ds, fragility(ds, opt.jobs), opt);
}

// ---------------------------------------------------------------------------
// Local cut points
// ---------------------------------------------------------------------------

namespace {

// Every unordered pair of distinct cells in omega contains x, so a partition
// is accepted iff each cross pair meets in exactly {x}.
bool partition_accepted(const DigitSet& ds, const ESets& es, const ExactPoint& x,
                        const std::vector<Word>& side_i, const std::vector<Word>& side_j) {
    for (const Word& a : side_i)
        for (const Word& b : side_j) {
            Delta delta = pi_difference(pi(ds, a), pi(ds, b));
            if (!delta_admissible(delta) || delta_weight(delta) == 0)
                throw internal_error("omega cells with non-adjacent boxes");
            if (!es.intersects(delta)) return false;
            if (!is_singleton(ds, es, delta)) return false;
            if (singleton_witness(ds, es, a, b).point != x) return false;
        }
    return true;
}

}  // namespace

std::vector<LocalCutWitness> local_cut_witnesses(const DigitSet& ds, int n, int jobs) {
    if (ds.grid.d != 2) throw input_error("local cut analysis is defined for d = 2 only");
    if (n < 1) throw input_error("local cut level must be >= 1");
    require_cells(ipow(ds.size(), n), "local cut search");
    (void)jobs;

    ESets es = compute_esets(ds);
    HataGraph g = build_hata(ds, n, false, jobs);

    // Candidate points: one witness address per distinct singleton point.
    std::map<ExactPoint, PointAddress> candidates;
    std::vector<std::int8_t> singleton_by_code(es.table.size(), -1);
    for (const auto& [a, b] : g.edges) {
        Delta delta = pi_difference(g.pivec_of(a), g.pivec_of(b));
        int code = ESets::code_of(delta);
        if (singleton_by_code[code] < 0)
            singleton_by_code[code] = is_singleton(ds, es, delta) ? 1 : 0;
        if (singleton_by_code[code] != 1) continue;
        SingletonWitness wit =
            singleton_witness(ds, es, word_of_vertex(ds, g, a), word_of_vertex(ds, g, b));
        candidates.emplace(wit.point, wit.addr_w);
    }

    std::vector<LocalCutWitness> accepted;
    for (const auto& [x, addr] : candidates) {
        std::vector<Word> cells = omega(ds, addr, n);
        std::size_t m = cells.size();
        if (m < 2) continue;
        if (m > 4) throw internal_error("more than four cells share a point in the plane");

        // All unordered partitions into non-empty I, J with cells[0] in I,
        // ordered lexicographically by I.
        std::vector<std::vector<std::size_t>> i_sides;
        for (std::uint32_t mask = 0; mask + 1 < (1u << (m - 1)); ++mask) {
            std::vector<std::size_t> side{0};
            for (std::size_t t = 1; t < m; ++t)
                if (mask & (1u << (t - 1))) side.push_back(t);
            i_sides.push_back(std::move(side));
        }
        std::sort(i_sides.begin(), i_sides.end());

        for (const auto& side : i_sides) {
            std::vector<std::uint8_t> in_i(m, 0);
            for (std::size_t t : side) in_i[t] = 1;
            std::vector<Word> part_i, part_j;
            for (std::size_t t = 0; t < m; ++t) (in_i[t] ? part_i : part_j).push_back(cells[t]);
            if (!partition_accepted(ds, es, x, part_i, part_j)) continue;
            if (m == 4)
                throw internal_error("four-cell point accepted as a local cut decomposition");
            if (ipow(ds.size(), n) == m && !fragility(ds, jobs).fragile)
                throw internal_error("full-level decomposition accepted on a non-fragile set");
            accepted.push_back({n, x, part_i, part_j, cells});
        }
    }
    return accepted;
}

LocalCutReport local_cut_verdict(const DigitSet& ds, int jobs) {
    if (ds.grid.d != 2) throw input_error("local cut analysis is defined for d = 2 only");
    if (!is_connected(ds, jobs)) throw input_error("local cut analysis needs a connected set");
    if (fragility(ds, jobs).fragile)
        throw input_error("local cut analysis needs a non-fragile set (fragile sets have cut points)");

    LocalCutReport rep;
    for (int n = 1; n <= 2; ++n) {
        std::vector<LocalCutWitness> found = local_cut_witnesses(ds, n, jobs);
        if (!found.empty()) {
            rep.found = true;
            rep.level = n;
            rep.point = found[0].point;
            rep.part_i = found[0].part_i;
            rep.part_j = found[0].part_j;
            rep.omega_cells = found[0].omega_cells;
            return rep;
        }
    }
    return rep;
}

ClassificationReport classify(const DigitSet& ds, const ClassifyOptions& opt) {
    ClassificationReport rep;
    rep.connected = is_connected(ds, opt.jobs);
    if (!rep.connected) {
        rep.verdict = Verdict::Disconnected;
        return rep;
    }
    if (ds.grid.d != 2) {
        // Sponges: the pipeline past connectedness is planar-only.
        rep.verdict = Verdict::Inconclusive;
        return rep;
    }

    FragilityReport frag = fragility(ds, opt.jobs);
    rep.fragility = frag;
    CutVerdict cut = cut_verdict_with_fragility(ds, frag, opt);
    rep.cut = cut;

    if (cut.status == CutStatus::HasCutPoints) {
        // A cut point is in particular a local cut point.
        rep.verdict = Verdict::HasCutPoints;
        return rep;
    }
    if (cut.status == CutStatus::Inconclusive) {
        rep.verdict = Verdict::Inconclusive;
        return rep;
    }
    LocalCutReport local = local_cut_verdict(ds, opt.jobs);
    rep.localcut = local;
    rep.verdict = local.found ? Verdict::HasLocalCutPointsOnly
                              : Verdict::HomeomorphicToStandardCarpet;
    return rep;
}

}  // namespace carpetlab
