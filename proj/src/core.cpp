#include "carpetlab/core.hpp"

#include <algorithm>
#include <set>

#include "carpetlab/errors.hpp"

namespace carpetlab {

bool delta_admissible(const Delta& d) {
    for (int c : d)
        if (c < -1 || c > 1) return false;
    return true;
}

int delta_weight(const Delta& d) {
    int w = 0;
    for (int c : d) w += (c < 0 ? -c : c);
    return w;
}

// ---------------------------------------------------------------------------
// GridSpec
// ---------------------------------------------------------------------------

namespace {

void validate_grid(const GridSpec& g) {
    if (g.d < 2) throw input_error("grid dimension must be >= 2");
    if (static_cast<int>(g.subdiv.size()) != g.d) throw input_error("grid subdivision list size mismatch");
    for (int n : g.subdiv)
        if (n < 2) throw input_error("every per-axis subdivision count must be >= 2");
    if (static_cast<int>(g.ratios.size()) != g.d) throw input_error("ratio rows size mismatch");
    for (int a = 0; a < g.d; ++a) {
        if (static_cast<int>(g.ratios[a].size()) != g.subdiv[a])
            throw input_error("axis " + std::to_string(a + 1) + " needs " +
                              std::to_string(g.subdiv[a]) + " contraction ratios");
        Rational sum = 0;
        for (const Rational& r : g.ratios[a]) {
            if (r <= 0) throw input_error("contraction ratios must be positive rationals");
            sum += r;
        }
        if (sum != 1)
            throw input_error("axis " + std::to_string(a + 1) +
                              " contraction ratios must sum to exactly 1");
    }
}

void fill_offsets(GridSpec& g) {
    g.offsets.assign(g.d, {});
    for (int a = 0; a < g.d; ++a) {
        g.offsets[a].resize(g.subdiv[a] + 1);
        g.offsets[a][0] = 0;
        for (int j = 0; j < g.subdiv[a]; ++j) g.offsets[a][j + 1] = g.offsets[a][j] + g.ratios[a][j];
    }
}

}  // namespace

GridSpec GridSpec::uniform(std::vector<int> subdiv) {
    GridSpec g;
    g.d = static_cast<int>(subdiv.size());
    g.subdiv = std::move(subdiv);
    g.ratios.resize(g.d);
    for (int a = 0; a < g.d; ++a)
        g.ratios[a].assign(g.subdiv[a], Rational(1, g.subdiv[a]));
    validate_grid(g);
    fill_offsets(g);
    return g;
}

GridSpec GridSpec::square(int n) { return uniform({n, n}); }

GridSpec GridSpec::with_ratios(std::vector<int> subdiv, std::vector<std::vector<Rational>> ratios) {
    GridSpec g;
    g.d = static_cast<int>(subdiv.size());
    g.subdiv = std::move(subdiv);
    g.ratios = std::move(ratios);
    validate_grid(g);
    fill_offsets(g);
    return g;
}

bool GridSpec::is_uniform() const {
    for (int a = 0; a < d; ++a) {
        Rational u(1, subdiv[a]);
        for (const Rational& r : ratios[a])
            if (r != u) return false;
    }
    return true;
}

bool GridSpec::is_square_uniform() const {
    return d == 2 && subdiv[0] == subdiv[1] && is_uniform();
}

std::uint64_t GridSpec::total_cells() const {
    std::uint64_t total = 1;
    for (int n : subdiv) {
        if (total > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(n))
            throw resource_error("grid too large to index");
        total *= static_cast<std::uint64_t>(n);
    }
    return total;
}

bool GridSpec::operator==(const GridSpec& o) const {
    return d == o.d && subdiv == o.subdiv && ratios == o.ratios;
}

// ---------------------------------------------------------------------------
// DigitSet
// ---------------------------------------------------------------------------

std::uint64_t DigitSet::hash_digit(const Digit& dig) const {
    std::uint64_t key = 0;
    for (int a = 0; a < grid.d; ++a)
        key = key * static_cast<std::uint64_t>(grid.subdiv[a]) + static_cast<std::uint64_t>(dig[a]);
    return key;
}

void DigitSet::build_index() {
    index_.clear();
    index_.reserve(digits.size() * 2);
    for (std::size_t i = 0; i < digits.size(); ++i)
        index_.emplace(hash_digit(digits[i]), static_cast<int>(i));
}

DigitSet DigitSet::create(GridSpec grid, std::vector<Digit> digits) {
    DigitSet ds;
    ds.grid = std::move(grid);
    for (const Digit& dig : digits) {
        if (static_cast<int>(dig.size()) != ds.grid.d)
            throw input_error("digit arity does not match grid dimension");
        for (int a = 0; a < ds.grid.d; ++a)
            if (dig[a] < 0 || dig[a] >= ds.grid.subdiv[a])
                throw input_error("digit component out of range on axis " + std::to_string(a + 1));
    }
    std::sort(digits.begin(), digits.end());
    if (std::adjacent_find(digits.begin(), digits.end()) != digits.end())
        throw input_error("duplicate digit tuple");
    std::uint64_t total = ds.grid.total_cells();
    if (digits.size() < 2 || static_cast<std::uint64_t>(digits.size()) >= total)
        throw input_error("need 1 < |D| < " + std::to_string(total) + " digits, got " +
                          std::to_string(digits.size()));
    ds.digits = std::move(digits);
    ds.build_index();
    return ds;
}

int DigitSet::index_of(const Digit& dig) const {
    if (static_cast<int>(dig.size()) != grid.d) return -1;
    for (int a = 0; a < grid.d; ++a)
        if (dig[a] < 0 || dig[a] >= grid.subdiv[a]) return -1;
    auto it = index_.find(hash_digit(dig));
    return it == index_.end() ? -1 : it->second;
}

bool DigitSet::operator==(const DigitSet& o) const {
    return grid == o.grid && digits == o.digits;
}

// ---------------------------------------------------------------------------
// Words and pi-vectors
// ---------------------------------------------------------------------------

PiVec pi(const DigitSet& ds, const Word& w) {
    if (w.empty()) throw input_error("pi is undefined on the empty word");
    PiVec p(ds.grid.d, 0);
    for (int idx : w) {
        if (idx < 0 || idx >= static_cast<int>(ds.digits.size()))
            throw input_error("word refers to a digit outside the digit set");
        const Digit& dig = ds.digits[idx];
        for (int a = 0; a < ds.grid.d; ++a)
            p[a] = static_cast<long long>(ds.grid.subdiv[a]) * p[a] + dig[a];
    }
    return p;
}

Delta pi_difference(const PiVec& a, const PiVec& b) {
    // Components beyond +-1 are equally inadmissible; clamp so the value
    // always fits an int regardless of word length.
    Delta d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        long long diff = a[i] - b[i];
        if (diff > 2) diff = 2;
        if (diff < -2) diff = -2;
        d[i] = static_cast<int>(diff);
    }
    return d;
}

// ---------------------------------------------------------------------------
// Point addresses
// ---------------------------------------------------------------------------

namespace {

void check_stream(const DigitSet& ds, const std::vector<int>& digits, const char* what) {
    for (int idx : digits)
        if (idx < 0 || idx >= static_cast<int>(ds.digits.size()))
            throw input_error(std::string(what) + " refers to a digit outside the digit set");
}

}  // namespace

PointAddress canonicalize(const DigitSet& ds, PointAddress addr) {
    if (addr.period.empty()) throw input_error("point address needs a non-empty period");
    check_stream(ds, addr.base, "address base");
    check_stream(ds, addr.preperiod, "address preperiod");
    check_stream(ds, addr.period, "address period");

    // Primitive period root.
    std::size_t q = addr.period.size();
    for (std::size_t len = 1; len < q; ++len) {
        if (q % len != 0) continue;
        bool repeats = true;
        for (std::size_t t = len; t < q && repeats; ++t)
            repeats = addr.period[t] == addr.period[t % len];
        if (repeats) {
            addr.period.resize(len);
            break;
        }
    }
    // Absorb preperiod digits that merely restate the period's tail.
    while (!addr.preperiod.empty() && addr.preperiod.back() == addr.period.back()) {
        addr.preperiod.pop_back();
        std::rotate(addr.period.begin(), addr.period.end() - 1, addr.period.end());
    }
    return addr;
}

PointAddress reroot(const DigitSet& ds, PointAddress addr, int level) {
    if (addr.period.empty()) throw input_error("point address needs a non-empty period");
    if (level < 0) throw input_error("address level must be non-negative");
    while (static_cast<int>(addr.base.size()) > level) {
        addr.preperiod.insert(addr.preperiod.begin(), addr.base.back());
        addr.base.pop_back();
    }
    while (static_cast<int>(addr.base.size()) < level) {
        if (!addr.preperiod.empty()) {
            addr.base.push_back(addr.preperiod.front());
            addr.preperiod.erase(addr.preperiod.begin());
        } else {
            addr.base.push_back(addr.period.front());
            std::rotate(addr.period.begin(), addr.period.begin() + 1, addr.period.end());
        }
    }
    (void)ds;
    return addr;
}

namespace {

// x -> ratio*x + offset, the axis component of one digit map.
struct AxisMap {
    Rational ratio;
    Rational offset;
    Rational operator()(const Rational& x) const { return ratio * x + offset; }
};

AxisMap axis_map(const DigitSet& ds, int digit_index, int axis) {
    int j = ds.digits[digit_index][axis];
    return {ds.grid.ratios[axis][j], ds.grid.offsets[axis][j]};
}

}  // namespace

ExactPoint evaluate(const DigitSet& ds, const PointAddress& addr) {
    if (addr.period.empty()) throw input_error("point address needs a non-empty period");
    check_stream(ds, addr.base, "address base");
    check_stream(ds, addr.preperiod, "address preperiod");
    check_stream(ds, addr.period, "address period");

    ExactPoint p(ds.grid.d);
    for (int a = 0; a < ds.grid.d; ++a) {
        // Compose the period maps innermost-first: G = f_1 o f_2 o ... o f_q.
        Rational scale = 1, shift = 0;
        for (auto it = addr.period.rbegin(); it != addr.period.rend(); ++it) {
            AxisMap f = axis_map(ds, *it, a);
            scale *= f.ratio;
            shift = f.ratio * shift + f.offset;
        }
        Rational v = shift / (Rational(1) - scale);  // fixed point of the period
        for (auto it = addr.preperiod.rbegin(); it != addr.preperiod.rend(); ++it)
            v = axis_map(ds, *it, a)(v);
        for (auto it = addr.base.rbegin(); it != addr.base.rend(); ++it)
            v = axis_map(ds, *it, a)(v);
        p[a] = v;
    }
    return p;
}

bool CellBox::contains(const ExactPoint& p) const {
    for (std::size_t a = 0; a < lower.size(); ++a)
        if (p[a] < lower[a] || p[a] > lower[a] + size[a]) return false;
    return true;
}

CellBox box_of_word(const DigitSet& ds, const Word& w) {
    CellBox box;
    box.lower.assign(ds.grid.d, Rational(0));
    box.size.assign(ds.grid.d, Rational(1));
    for (int a = 0; a < ds.grid.d; ++a)
        for (int idx : w) {
            AxisMap f = axis_map(ds, idx, a);
            box.lower[a] = box.lower[a] + box.size[a] * f.offset;
            box.size[a] = box.size[a] * f.ratio;
        }
    return box;
}

// ---------------------------------------------------------------------------
// Square symmetries
// ---------------------------------------------------------------------------

Digit apply_square_symmetry(int sym, int n, const Digit& dig) {
    int a = dig[0], b = dig[1];
    if (sym & 4) std::swap(a, b);
    if (sym & 1) a = n - 1 - a;
    if (sym & 2) b = n - 1 - b;
    return {a, b};
}

std::vector<DigitSet> symmetry_orbit(const DigitSet& ds) {
    if (ds.grid.d != 2 || ds.grid.subdiv[0] != ds.grid.subdiv[1])
        throw input_error("symmetry orbit requires a square d=2 grid");
    int n = ds.grid.subdiv[0];
    std::set<std::vector<Digit>> seen;
    std::vector<DigitSet> orbit;
    for (int sym = 0; sym < 8; ++sym) {
        std::vector<Digit> image;
        image.reserve(ds.digits.size());
        for (const Digit& dig : ds.digits) image.push_back(apply_square_symmetry(sym, n, dig));
        std::sort(image.begin(), image.end());
        if (seen.insert(image).second) orbit.push_back(DigitSet::create(ds.grid, image));
    }
    return orbit;
}

DigitSet canonical_representative(const DigitSet& ds) {
    std::vector<DigitSet> orbit = symmetry_orbit(ds);
    const DigitSet* best = &orbit[0];
    for (const DigitSet& cand : orbit)
        if (cand.digits < best->digits) best = &cand;
    return *best;
}

}  // namespace carpetlab
