#include "carpetlab/census.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include <iostream>

#include "carpetlab/errors.hpp"
#include "carpetlab/graph_metrics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace carpetlab {

using ordered_json = nlohmann::ordered_json;

std::vector<DigitSet> enumerate_digit_sets(int n, std::optional<int> size_filter,
                                           bool symmetry_reduce) {
    if (n < 2) throw input_error("grid size must be >= 2");
    if (n > 4) throw input_error("exhaustive enumeration is capped at N = 4");
    GridSpec grid = GridSpec::square(n);
    int total = n * n;

    std::vector<DigitSet> out;
    for (std::uint32_t mask = 1; mask < (1u << total); ++mask) {
        int size = __builtin_popcount(mask);
        if (size < 2 || size > total - 1) continue;
        if (size_filter && size != *size_filter) continue;
        std::vector<Digit> digits;
        digits.reserve(size);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (mask & (1u << (a * n + b))) digits.push_back({a, b});
        DigitSet ds = DigitSet::create(grid, std::move(digits));
        if (symmetry_reduce && canonical_representative(ds).digits != ds.digits) continue;
        out.push_back(std::move(ds));
    }
    std::sort(out.begin(), out.end(),
              [](const DigitSet& a, const DigitSet& b) { return a.digits < b.digits; });
    return out;
}

std::vector<DigitSet> line_forms(int n) {
    GridSpec grid = GridSpec::square(n);
    std::set<std::vector<Digit>> seen;
    std::vector<DigitSet> out;
    auto add = [&](std::vector<Digit> digits) {
        std::sort(digits.begin(), digits.end());
        if (seen.insert(digits).second) out.push_back(DigitSet::create(grid, digits));
    };
    for (int i = 0; i < n; ++i) {
        std::vector<Digit> col, row;
        for (int j = 0; j < n; ++j) {
            col.push_back({i, j});
            row.push_back({j, i});
        }
        add(col);
        add(row);
    }
    std::vector<Digit> diag, anti;
    for (int i = 0; i < n; ++i) {
        diag.push_back({i, i});
        anti.push_back({i, n - 1 - i});
    }
    add(diag);
    add(anti);
    return out;
}

namespace {

std::string describe(const DigitSet& ds) {
    std::string s = "{";
    for (std::size_t i = 0; i < ds.digits.size(); ++i) {
        if (i) s += ',';
        s += '(' + std::to_string(ds.digits[i][0]) + ',' + std::to_string(ds.digits[i][1]) + ')';
    }
    return s + '}';
}

template <typename F>
void for_each_indexed(std::size_t count, int jobs, F&& body) {
    if (jobs > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs)
        for (long long i = 0; i < static_cast<long long>(count); ++i)
            body(static_cast<std::size_t>(i));
#else
        for (std::size_t i = 0; i < count; ++i) body(i);
#endif
    } else {
        for (std::size_t i = 0; i < count; ++i) body(i);
    }
}

}  // namespace

GapReport verify_gap(int n, int jobs) {
    GapReport rep;
    rep.n = n;
    std::vector<DigitSet> sets = enumerate_digit_sets(n, std::nullopt, false);
    rep.sets_checked = sets.size();

    std::vector<std::uint8_t> connected(sets.size(), 0);
    for_each_indexed(sets.size(), jobs,
                     [&](std::size_t i) { connected[i] = is_connected(sets[i], 1) ? 1 : 0; });

    std::set<std::vector<Digit>> lines;
    for (const DigitSet& lf : line_forms(n)) lines.insert(lf.digits);

    std::set<int> sizes_seen;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        int size = static_cast<int>(sets[i].size());
        bool is_line = lines.count(sets[i].digits) > 0;
        if (connected[i]) {
            ++rep.connected_count;
            sizes_seen.insert(size);
            if (size > n && size < 2 * n - 1) {
                ++rep.gap_violations;
                if (rep.failure.empty())
                    rep.failure = "connected set in the gap range: " + describe(sets[i]);
            }
            if (size == n && !is_line) {
                ++rep.line_form_mismatches;
                if (rep.failure.empty())
                    rep.failure = "connected size-N set that is not a line form: " + describe(sets[i]);
            }
            if (size < n) {
                ++rep.gap_violations;
                if (rep.failure.empty())
                    rep.failure = "connected set smaller than N: " + describe(sets[i]);
            }
        } else if (size == n && is_line) {
            ++rep.line_form_mismatches;
            if (rep.failure.empty())
                rep.failure = "disconnected line form: " + describe(sets[i]);
        }
    }
    rep.connected_sizes.assign(sizes_seen.begin(), sizes_seen.end());

    bool coverage = sizes_seen.count(n) > 0;
    for (int k = 2 * n - 1; k <= n * n - 1; ++k)
        if (!sizes_seen.count(k)) coverage = false;
    if (!coverage && rep.failure.empty())
        rep.failure = "missing a connected set for some admissible cardinality";
    rep.ok = coverage && rep.gap_violations == 0 && rep.line_form_mismatches == 0;
    return rep;
}

// ---------------------------------------------------------------------------
// Census
// ---------------------------------------------------------------------------

namespace {

std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Leading letter of a level-k vertex (the level-1 cell that contains it).
int leading_digit_index(const DigitSet& ds, const HataGraph& g, std::size_t v) {
    PiVec p = g.pivec_of(v);
    Digit dig(ds.grid.d);
    for (int a = 0; a < ds.grid.d; ++a) {
        long long scale = 1;
        for (int t = 1; t < g.level; ++t) scale *= ds.grid.subdiv[a];
        dig[a] = static_cast<int>(p[a] / scale);
    }
    return ds.index_of(dig);
}

CensusRecord classify_one(const DigitSet& ds, const CensusOptions& opt) {
    CensusRecord rec;
    rec.digits = ds.digits;
    rec.size = static_cast<int>(ds.size());

    auto started = std::chrono::steady_clock::now();
    try {
        ClassifyOptions copt;
        copt.kmax = opt.kmax;
        copt.jobs = 1;  // parallelism lives at the set level
        copt.assume_bounded_criterion = opt.assume_bounded_criterion;
        ClassificationReport rep = classify(ds, copt);

        rec.connected = rep.connected;
        if (rep.connected) {
            rec.fragile = rep.fragility ? rep.fragility->fragile : std::optional<bool>();
            if (rep.cut) {
                switch (rep.cut->status) {
                    case CutStatus::HasCutPoints: rec.cut = "has"; break;
                    case CutStatus::NoCutPoints: rec.cut = "none"; break;
                    case CutStatus::Inconclusive: rec.cut = "inconclusive"; break;
                }
            }
            if (rep.localcut) rec.localcut = rep.localcut->found ? "found" : "not-found";

            // chi(Gamma_2) and chi(Gamma_3) always recorded; they feed the
            // fragility bound checks below. Deeper classifier entries kept.
            std::uint64_t size = ds.size();
            HataGraph g3 = build_hata(ds, 3, false, 1);
            std::uint64_t chi2 = chi(build_hata(ds, 2, false, 1));
            std::uint64_t chi3 = chi(g3);
            rec.chi.push_back({2, chi2, size});
            rec.chi.push_back({3, chi3, ipow(size, 2) + 1});
            if (rep.cut)
                for (const ChiEntry& entry : rep.cut->ladder)
                    if (entry.k > 3) rec.chi.push_back(entry);

            bool fragile = rec.fragile.value_or(false);
            if (fragile && (chi2 < size - 1 || chi3 < ipow(size, 2) - 1))
                throw internal_error("fragile set below the fragile chi lower bound");
            if (!fragile && (chi3 == ipow(size, 2) - 1 || chi3 == ipow(size, 2)))
                throw internal_error("non-fragile set with a fragility-forcing chi(Gamma_3)");

            // A level-1 cell whose contact with the rest happens through a
            // single level-3 cell forces fragility.
            std::vector<std::set<std::uint32_t>> boundary(ds.size());
            for (const auto& [a, b] : g3.edges) {
                int la = leading_digit_index(ds, g3, a);
                int lb = leading_digit_index(ds, g3, b);
                if (la != lb) {
                    boundary[la].insert(a);
                    boundary[lb].insert(b);
                }
            }
            for (std::size_t i = 0; i < ds.size(); ++i)
                if (boundary[i].size() == 1 && !fragile)
                    throw internal_error("single boundary level-3 cell on a non-fragile set");
        }
    } catch (const internal_error& e) {
        rec.error = e.what();
    }
    if (opt.timings) {
        auto elapsed = std::chrono::steady_clock::now() - started;
        rec.ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    return rec;
}

}  // namespace

std::string census_record_to_json(const CensusRecord& rec, int n) {
    ordered_json j;
    j["schema"] = "carpetlab-census-1";
    j["n"] = n;
    j["digits"] = rec.digits;
    j["size"] = rec.size;
    j["connected"] = rec.connected;
    if (rec.fragile) j["fragile"] = *rec.fragile;
    else j["fragile"] = nullptr;
    j["cut"] = rec.cut.empty() ? ordered_json(nullptr) : ordered_json(rec.cut);
    j["localcut"] = rec.localcut.empty() ? ordered_json(nullptr) : ordered_json(rec.localcut);
    ordered_json ladder = ordered_json::array();
    for (const ChiEntry& entry : rec.chi) ladder.push_back({entry.k, entry.chi});
    j["chi"] = ladder;
    if (rec.ms) j["ms"] = *rec.ms;
    else j["ms"] = nullptr;
    if (rec.error) j["error"] = *rec.error;
    return j.dump();
}

CensusSummary census_run(const CensusOptions& opt) {
    std::vector<DigitSet> sets = enumerate_digit_sets(opt.n, std::nullopt, opt.symmetry_reduce);

    CensusSummary summary;
    std::ofstream file;
    std::ostream* out = &std::cout;
    std::size_t skip = 0;

    if (!opt.out_path.empty()) {
        // Resume: keep complete records matching this run's prefix, drop a
        // partial trailing line.
        std::ifstream existing(opt.out_path, std::ios::binary);
        std::string keep;
        if (existing) {
            std::string content((std::istreambuf_iterator<char>(existing)),
                                std::istreambuf_iterator<char>());
            std::size_t pos = 0;
            while (true) {
                std::size_t nl = content.find('\n', pos);
                if (nl == std::string::npos) break;  // no newline: partial tail, dropped
                std::string line = content.substr(pos, nl - pos);
                bool valid = false;
                try {
                    ordered_json j = ordered_json::parse(line);
                    valid = j.value("schema", "") == "carpetlab-census-1" &&
                            j.value("n", -1) == opt.n && skip < sets.size() &&
                            j.at("digits").get<std::vector<Digit>>() == sets[skip].digits;
                    if (valid) {
                        if (j.value("connected", false)) ++summary.connected;
                        if (j.contains("fragile") && j["fragile"].is_boolean() &&
                            j["fragile"].get<bool>())
                            ++summary.fragile;
                        if (j.contains("error")) ++summary.violations;
                    }
                } catch (...) {
                    valid = false;
                }
                if (!valid)
                    throw input_error("existing census file does not match this run: " +
                                      opt.out_path);
                keep.append(line).push_back('\n');
                ++skip;
                pos = nl + 1;
            }
        }
        existing.close();
        file.open(opt.out_path, std::ios::binary | std::ios::trunc);
        if (!file) throw input_error("cannot open census output file: " + opt.out_path);
        file << keep;
        out = &file;
        summary.resumed_from = skip;
        summary.records = skip;
    }

    const std::size_t chunk = 128;
    std::vector<CensusRecord> records;
    for (std::size_t base = skip; base < sets.size(); base += chunk) {
        std::size_t count = std::min(chunk, sets.size() - base);
        records.assign(count, CensusRecord{});
        for_each_indexed(count, opt.jobs,
                         [&](std::size_t i) { records[i] = classify_one(sets[base + i], opt); });
        for (std::size_t i = 0; i < count; ++i) {
            const CensusRecord& rec = records[i];
            ++summary.records;
            if (rec.connected) ++summary.connected;
            if (rec.fragile.value_or(false)) ++summary.fragile;
            if (rec.error) ++summary.violations;
            (*out) << census_record_to_json(rec, opt.n) << '\n';
        }
        out->flush();
    }
    return summary;
}

}  // namespace carpetlab
