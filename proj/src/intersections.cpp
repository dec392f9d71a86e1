#include "carpetlab/intersections.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "carpetlab/errors.hpp"

namespace carpetlab {

namespace {

void require_carpet(const DigitSet& ds, const char* what) {
    if (ds.grid.d != 2) throw input_error(std::string(what) + " is defined for d = 2 only");
}

bool is_corner_digit(const DigitSet& ds, int idx) {
    const Digit& dig = ds.digits[idx];
    for (int a = 0; a < ds.grid.d; ++a)
        if (dig[a] != 0 && dig[a] != ds.grid.subdiv[a] - 1) return false;
    return true;
}

}  // namespace

bool is_singleton(const DigitSet& ds, const ESets& es, const Delta& delta) {
    require_carpet(ds, "is_singleton");
    return touching_child_pairs(ds, es, delta).size() == 1;
}

SingletonWitness singleton_witness(const DigitSet& ds, const ESets& es, const Word& w,
                                   const Word& w2) {
    require_carpet(ds, "singleton_witness");
    if (w.size() != w2.size() || w.empty())
        throw input_error("singleton_witness needs two non-empty words of the same level");
    if (w == w2) throw input_error("singleton_witness needs two distinct cells");

    SingletonWitness wit;
    wit.w = w;
    wit.w2 = w2;

    Delta cur = pi_difference(pi(ds, w), pi(ds, w2));
    if (!delta_admissible(cur) || !is_singleton(ds, es, cur))
        throw input_error("singleton_witness called on a non-singleton pair");

    std::map<Delta, std::size_t> seen;
    while (!seen.count(cur)) {
        seen.emplace(cur, wit.chain.size());
        std::vector<ChildPair> pairs = touching_child_pairs(ds, es, cur);
        if (pairs.size() != 1)
            throw internal_error("unique-child chase lost uniqueness mid-chain");
        const ChildPair& p = pairs[0];
        // A corner digit on one side of the unique pair forces one on the other.
        if (is_corner_digit(ds, p.u) != is_corner_digit(ds, p.v))
            throw internal_error("corner digit propagation violated in witness chain");
        wit.chain.push_back({p.u, p.v, p.child});
        cur = p.child;
        if (wit.chain.size() > 9) throw internal_error("witness chain failed to cycle");
    }
    wit.cycle_start = seen.at(cur);

    auto build = [&](const Word& base, bool first_side) {
        PointAddress addr;
        addr.base = base;
        for (std::size_t t = 0; t < wit.chain.size(); ++t) {
            int dig = first_side ? wit.chain[t].u : wit.chain[t].v;
            if (t < wit.cycle_start) addr.preperiod.push_back(dig);
            else addr.period.push_back(dig);
        }
        return canonicalize(ds, addr);
    };
    wit.addr_w = build(w, true);
    wit.addr_w2 = build(w2, false);
    wit.point = evaluate(ds, wit.addr_w);
    if (evaluate(ds, wit.addr_w2) != wit.point)
        throw internal_error("witness addresses disagree on the intersection point");
    return wit;
}

// ---------------------------------------------------------------------------
// Level-1 singleton case analysis (uniform square grids)
// ---------------------------------------------------------------------------

namespace {

ExactPoint map_into_cell(const DigitSet& ds, const Digit& cell, const Rational& x,
                         const Rational& y) {
    int n = ds.grid.subdiv[0];
    return {(Rational(cell[0]) + x) / n, (Rational(cell[1]) + y) / n};
}

// The side case with the crossing axis parameterized: digit `i` sits on the
// positive side (i - j = +1 on `cross`).
std::optional<ExactPoint> side_case(const DigitSet& ds, const Digit& i, int cross) {
    int n = ds.grid.subdiv[0];
    int along = 1 - cross;
    auto make = [&](int cross_val, int along_val) {
        Digit dig(2);
        dig[cross] = cross_val;
        dig[along] = along_val;
        return dig;
    };
    std::vector<int> straight, down, up;  // I, J, J'
    for (int a = 0; a < n; ++a) {
        if (!ds.contains(make(0, a))) continue;
        if (ds.contains(make(n - 1, a))) straight.push_back(a);
        if (a - 1 >= 0 && ds.contains(make(n - 1, a - 1))) down.push_back(a);
        if (a + 1 < n && ds.contains(make(n - 1, a + 1))) up.push_back(a);
    }
    bool corner_main = ds.contains({0, 0}) && ds.contains({n - 1, n - 1});
    bool corner_anti = ds.contains({0, n - 1}) && ds.contains({n - 1, 0});

    Rational along_coord;
    if (straight.size() == 1 && (down.empty() || !corner_main) && (up.empty() || !corner_anti)) {
        along_coord = Rational(straight[0], n - 1);
    } else if (straight.empty() && down.size() == 1 && corner_main &&
               (up.empty() || !corner_anti)) {
        along_coord = Rational(down[0], n);
    } else if (straight.empty() && (down.empty() || !corner_main) && up.size() == 1 &&
               corner_anti) {
        along_coord = Rational(up[0] + 1, n);
    } else {
        return std::nullopt;
    }
    Rational z[2];
    z[cross] = 0;
    z[along] = along_coord;
    return map_into_cell(ds, i, z[0], z[1]);
}

}  // namespace

std::optional<ExactPoint> level1_singleton_cases_gsc(const DigitSet& ds, const Digit& i,
                                                     const Digit& j) {
    if (!ds.grid.is_square_uniform())
        throw input_error("the level-1 singleton cases need a uniform square d=2 grid");
    if (ds.index_of(i) < 0 || ds.index_of(j) < 0)
        throw input_error("singleton case digits must belong to the digit set");
    if (!level1_edge_rule_gsc(ds, i, j))
        throw input_error("singleton cases need an intersecting cell pair");

    int ex = i[0] - j[0], ey = i[1] - j[1];
    if (ex < 0 || (ex == 0 && ey < 0)) return level1_singleton_cases_gsc(ds, j, i);

    if (ex == 1 && ey == 1) {
        // Corner contact through (0,0) and (N-1,N-1); always a single point.
        return map_into_cell(ds, i, 0, 0);
    }
    if (ex == 1 && ey == -1) {
        return map_into_cell(ds, i, 0, 1);
    }
    if (ex == 1 && ey == 0) return side_case(ds, i, 0);
    return side_case(ds, i, 1);  // ex == 0, ey == 1
}

// ---------------------------------------------------------------------------
// Point membership automaton and Omega_n
// ---------------------------------------------------------------------------

bool contains_point(const DigitSet& ds, const Word& c, const PointAddress& x) {
    if (c.size() != x.base.size())
        throw input_error("contains_point needs a cell at the level of the address base");
    if (x.period.empty()) throw input_error("point address needs a non-empty period");
    if (c.empty()) throw input_error("contains_point needs a non-empty cell word");

    Delta start = pi_difference(pi(ds, c), pi(ds, x.base));
    if (!delta_admissible(start)) return false;
    if (delta_weight(start) == 0) return true;  // c is the address's own base cell

    int d = ds.grid.d;
    std::size_t pre = x.preperiod.size(), per = x.period.size();
    std::size_t positions = pre + per;
    auto stream_digit = [&](std::size_t pos) {
        return pos < pre ? x.preperiod[pos] : x.period[pos - pre];
    };
    auto next_pos = [&](std::size_t pos) { return pos + 1 < positions ? pos + 1 : pre; };

    auto state_id = [&](const Delta& delta, std::size_t pos) {
        return static_cast<std::uint64_t>(ESets::code_of(delta)) * positions + pos;
    };

    // Forward-reachable part of the product automaton.
    std::unordered_map<std::uint64_t, std::uint32_t> id_of;
    std::vector<std::vector<std::uint32_t>> succ;
    std::vector<std::pair<Delta, std::size_t>> states;
    auto intern = [&](const Delta& delta, std::size_t pos) {
        auto [it, fresh] = id_of.emplace(state_id(delta, pos), static_cast<std::uint32_t>(states.size()));
        if (fresh) {
            states.emplace_back(delta, pos);
            succ.emplace_back();
        }
        return it->second;
    };
    intern(start, 0);
    for (std::size_t v = 0; v < states.size(); ++v) {
        auto [delta, pos] = states[v];
        const Digit& s = ds.digits[stream_digit(pos)];
        for (std::size_t u = 0; u < ds.digits.size(); ++u) {
            Delta child(d);
            bool ok = true;
            for (int a = 0; a < d && ok; ++a) {
                int cc = ds.grid.subdiv[a] * delta[a] + ds.digits[u][a] - s[a];
                if (cc < -1 || cc > 1) ok = false;
                child[a] = cc;
            }
            if (ok) {
                std::uint32_t target = intern(child, next_pos(pos));  // may grow succ
                succ[v].push_back(target);
            }
        }
    }

    // x lies in the cell iff some infinite run exists = a cycle is reachable.
    std::vector<std::uint8_t> color(states.size(), 0);
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
    color[0] = 1;
    while (!stack.empty()) {
        std::uint32_t v = stack.back().first;
        std::size_t edge = stack.back().second;
        if (edge >= succ[v].size()) {
            color[v] = 2;
            stack.pop_back();
            continue;
        }
        ++stack.back().second;
        std::uint32_t u = succ[v][edge];
        if (color[u] == 1) return true;  // back edge: cycle
        if (color[u] == 0) {
            color[u] = 1;
            stack.emplace_back(u, 0);
        }
    }
    return false;
}

std::vector<Word> omega(const DigitSet& ds, const PointAddress& x, int n) {
    require_carpet(ds, "omega");
    if (n < 1) throw input_error("omega needs level >= 1");
    PointAddress addr = reroot(ds, x, n);
    ExactPoint p = evaluate(ds, addr);

    int d = ds.grid.d;
    // Per axis: the level-n interval indices whose closed interval contains
    // the coordinate (two when it sits exactly on an interior boundary).
    std::vector<std::vector<long long>> axis_candidates(d);
    for (int a = 0; a < d; ++a) {
        struct Walk {
            long long index;
            Rational t;
        };
        std::vector<Walk> cur{{0, p[a]}};
        for (int lvl = 0; lvl < n; ++lvl) {
            std::vector<Walk> next;
            for (const Walk& walk : cur)
                for (int j = 0; j < ds.grid.subdiv[a]; ++j) {
                    const Rational& lo = ds.grid.offsets[a][j];
                    const Rational& hi = ds.grid.offsets[a][j + 1];
                    if (walk.t < lo || walk.t > hi) continue;
                    next.push_back({walk.index * ds.grid.subdiv[a] + j,
                                    (walk.t - lo) / ds.grid.ratios[a][j]});
                }
            if (next.size() > 2) throw internal_error("coordinate matched more than two cells");
            cur = std::move(next);
        }
        for (const Walk& walk : cur) axis_candidates[a].push_back(walk.index);
    }

    // Candidate pi-vectors, kept when they decode to a word over D.
    std::vector<std::pair<PiVec, Word>> found;
    std::vector<std::size_t> pick(d, 0);
    while (true) {
        PiVec cand(d);
        for (int a = 0; a < d; ++a) cand[a] = axis_candidates[a][pick[a]];
        std::vector<std::vector<int>> comp(d, std::vector<int>(n));
        for (int a = 0; a < d; ++a) {
            long long rest = cand[a];
            for (int t = n - 1; t >= 0; --t) {
                comp[a][t] = static_cast<int>(rest % ds.grid.subdiv[a]);
                rest /= ds.grid.subdiv[a];
            }
        }
        Word w(n);
        bool in_set = true;
        Digit dig(d);
        for (int t = 0; t < n && in_set; ++t) {
            for (int a = 0; a < d; ++a) dig[a] = comp[a][t];
            int idx = ds.index_of(dig);
            if (idx < 0) in_set = false;
            else w[t] = idx;
        }
        if (in_set && contains_point(ds, w, addr)) found.emplace_back(cand, w);

        int a = d - 1;
        while (a >= 0 && pick[a] + 1 >= axis_candidates[a].size()) pick[a--] = 0;
        if (a < 0) break;
        ++pick[a];
    }

    std::sort(found.begin(), found.end(),
              [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });
    std::vector<Word> cells;
    cells.reserve(found.size());
    for (auto& f : found) cells.push_back(std::move(f.second));
    if (cells.empty()) throw internal_error("omega lost the generating cell");
    return cells;
}

}  // namespace carpetlab
