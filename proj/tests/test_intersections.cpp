#include <doctest.h>

#include <random>

#include "carpetlab/census.hpp"
#include "carpetlab/errors.hpp"
#include "carpetlab/intersections.hpp"
#include "helpers.hpp"

using namespace carpetlab;
using namespace carpetlab::testing;

namespace {

Word word_of(const DigitSet& ds, const std::vector<Digit>& digits) {
    Word w;
    for (const Digit& dig : digits) {
        int idx = ds.index_of(dig);
        REQUIRE(idx >= 0);
        w.push_back(idx);
    }
    return w;
}

}  // namespace

TEST_CASE("singleton detection by unique child pairs") {
    DigitSet g = gasket();
    ESets eg = compute_esets(g);
    CHECK(is_singleton(g, eg, {1, 0}));
    CHECK(is_singleton(g, eg, {1, 1}));

    DigitSet carpet = standard_carpet();
    ESets ec = compute_esets(carpet);
    CHECK(!is_singleton(carpet, ec, {1, 0}));
    CHECK(is_singleton(carpet, ec, {1, 1}));  // corner contact
}

TEST_CASE("singleton witnesses and their chains") {
    DigitSet g = gasket();
    ESets eg = compute_esets(g);
    SingletonWitness w1 = singleton_witness(g, eg, word_of(g, {{1, 0}}), word_of(g, {{0, 0}}));
    CHECK(w1.point == ExactPoint{Rational(1, 2), Rational(0)});
    CHECK(evaluate(g, w1.addr_w) == w1.point);
    CHECK(evaluate(g, w1.addr_w2) == w1.point);

    DigitSet seg = segment();
    ESets es = compute_esets(seg);
    SingletonWitness w2 = singleton_witness(seg, es, word_of(seg, {{0, 1}}), word_of(seg, {{0, 0}}));
    CHECK(w2.point == ExactPoint{Rational(0), Rational(1, 3)});

    // Anti-diagonal corner pair in a 4x4 grid.
    DigitSet quarters = DigitSet::create(GridSpec::square(4), {{3, 0}, {2, 1}, {0, 3}});
    ESets eq = compute_esets(quarters);
    SingletonWitness w3 =
        singleton_witness(quarters, eq, word_of(quarters, {{3, 0}}), word_of(quarters, {{2, 1}}));
    CHECK(w3.point == ExactPoint{Rational(3, 4), Rational(1, 4)});

    CHECK_THROWS_AS(singleton_witness(standard_carpet(), compute_esets(standard_carpet()),
                                      {0, 0}, {0, 0}),
                    input_error);
}

TEST_CASE("witness chains lock onto box corners with a corner-digit period") {
    // With a single corner digit as period, the point is the matching vertex
    // of the box of base + preperiod.
    DigitSet carpet = standard_carpet();
    ESets ec = compute_esets(carpet);
    SingletonWitness wit =
        singleton_witness(carpet, ec, word_of(carpet, {{1, 0}}), word_of(carpet, {{2, 1}}));
    REQUIRE(wit.addr_w.period.size() == 1);
    const Digit& alpha = carpet.digits[wit.addr_w.period[0]];
    CHECK(alpha == Digit{2, 2});
    Word prefix = wit.addr_w.base;
    prefix.insert(prefix.end(), wit.addr_w.preperiod.begin(), wit.addr_w.preperiod.end());
    CellBox box = box_of_word(carpet, prefix);
    ExactPoint vertex{box.lower[0] + (alpha[0] == 2 ? box.size[0] : Rational(0)),
                      box.lower[1] + (alpha[1] == 2 ? box.size[1] : Rational(0))};
    CHECK(wit.point == vertex);
}

TEST_CASE("level-1 case analysis agrees with child counting") {
    // Exhaustive over every 3x3 digit set, then random 4..5 grids; when both
    // sides say singleton, the closed-form point matches the chased witness.
    auto check_set = [](const DigitSet& ds) {
        ESets es = compute_esets(ds);
        for (std::size_t i = 0; i < ds.size(); ++i)
            for (std::size_t j = i + 1; j < ds.size(); ++j) {
                if (!level1_edge_rule_gsc(ds, ds.digits[i], ds.digits[j])) continue;
                Delta delta = pi_difference(pi(ds, {static_cast<int>(i)}),
                                            pi(ds, {static_cast<int>(j)}));
                std::optional<ExactPoint> cases =
                    level1_singleton_cases_gsc(ds, ds.digits[i], ds.digits[j]);
                bool chased = is_singleton(ds, es, delta);
                REQUIRE(cases.has_value() == chased);
                if (chased) {
                    SingletonWitness wit = singleton_witness(
                        ds, es, {static_cast<int>(i)}, {static_cast<int>(j)});
                    REQUIRE(*cases == wit.point);
                }
            }
    };
    for (const DigitSet& ds : enumerate_digit_sets(3, std::nullopt, false)) check_set(ds);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10000; ++trial) {
        int n = 4 + static_cast<int>(rng_below(rng, 2));
        check_set(random_digit_set(rng, {n, n}));
    }
}

TEST_CASE("named level-1 case values") {
    DigitSet g = gasket();
    std::optional<ExactPoint> p = level1_singleton_cases_gsc(g, {1, 0}, {0, 0});
    REQUIRE(p.has_value());
    CHECK(*p == ExactPoint{Rational(1, 2), Rational(0)});

    DigitSet carpet = standard_carpet();
    CHECK(!level1_singleton_cases_gsc(carpet, {0, 0}, {1, 0}).has_value());

    std::optional<ExactPoint> corner = level1_singleton_cases_gsc(carpet, {1, 0}, {2, 1});
    REQUIRE(corner.has_value());
    CHECK(*corner == ExactPoint{Rational(2, 3), Rational(1, 3)});
}

TEST_CASE("is_singleton matches the geometric refinement proxy at level 2") {
    std::mt19937_64 rng(31);
    int sampled = 0;
    while (sampled < 120) {
        DigitSet ds = random_digit_set(rng, {3, 3});
        ESets es = compute_esets(ds);
        HataGraph g2 = build_hata(ds, 2);
        if (g2.edges.empty()) continue;
        const auto& [a, b] = g2.edges[rng_below(rng, g2.edges.size())];
        Word wa = word_of_vertex(ds, g2, a), wb = word_of_vertex(ds, g2, b);
        Delta delta = pi_difference(g2.pivec_of(a), g2.pivec_of(b));
        CHECK(is_singleton(ds, es, delta) == refinement_says_singleton(ds, wa, wb, 6));
        ++sampled;
    }
}

TEST_CASE("point membership automaton") {
    DigitSet g = gasket();
    ESets eg = compute_esets(g);
    SingletonWitness wit = singleton_witness(g, eg, word_of(g, {{1, 0}}), word_of(g, {{0, 0}}));
    // The point (1/2, 0) seen from each level-1 cell.
    CHECK(contains_point(g, word_of(g, {{0, 0}}), wit.addr_w));
    CHECK(contains_point(g, word_of(g, {{1, 0}}), wit.addr_w));
    CHECK(!contains_point(g, word_of(g, {{1, 1}}), wit.addr_w));

    // (1/3, 1/3) is not in the (0,1) cell of the 7-cell carpet: the stream
    // would need the missing digit (2,0) forever.
    DigitSet seven = seven_cell();
    ESets e7 = compute_esets(seven);
    SingletonWitness w7 =
        singleton_witness(seven, e7, word_of(seven, {{1, 1}}), word_of(seven, {{0, 0}}));
    CHECK(w7.point == ExactPoint{Rational(1, 3), Rational(1, 3)});
    CHECK(!contains_point(seven, word_of(seven, {{0, 1}}), w7.addr_w));
    CHECK(contains_point(seven, word_of(seven, {{0, 0}}), w7.addr_w));
}

TEST_CASE("omega collects the cells containing a point") {
    DigitSet g = gasket();
    ESets eg = compute_esets(g);
    SingletonWitness side = singleton_witness(g, eg, word_of(g, {{1, 0}}), word_of(g, {{0, 0}}));
    std::vector<Word> cells = omega(g, side.addr_w, 1);
    REQUIRE(cells.size() == 2);
    CHECK(g.digits[cells[0][0]] == Digit{0, 0});
    CHECK(g.digits[cells[1][0]] == Digit{1, 0});

    SingletonWitness diag = singleton_witness(g, eg, word_of(g, {{1, 1}}), word_of(g, {{0, 0}}));
    CHECK(diag.point == ExactPoint{Rational(1, 2), Rational(1, 2)});
    std::vector<Word> diag_cells = omega(g, diag.addr_w, 1);
    REQUIRE(diag_cells.size() == 2);  // (1,0) does not contain the centre point
    CHECK(g.digits[diag_cells[0][0]] == Digit{0, 0});
    CHECK(g.digits[diag_cells[1][0]] == Digit{1, 1});

    DigitSet seven = seven_cell();
    ESets e7 = compute_esets(seven);
    SingletonWitness w7 =
        singleton_witness(seven, e7, word_of(seven, {{1, 1}}), word_of(seven, {{0, 0}}));
    std::vector<Word> seven_cells = omega(seven, w7.addr_w, 1);
    REQUIRE(seven_cells.size() == 2);
    CHECK(seven.digits[seven_cells[0][0]] == Digit{0, 0});
    CHECK(seven.digits[seven_cells[1][0]] == Digit{1, 1});
}

TEST_CASE("omega invariants on random singleton pairs") {
    std::mt19937_64 rng(37);
    int sampled = 0;
    while (sampled < 150) {
        DigitSet ds = random_digit_set(rng, {3, 3});
        ESets es = compute_esets(ds);
        HataGraph g1 = build_hata(ds, 1);
        if (g1.edges.empty()) continue;
        const auto& [a, b] = g1.edges[rng_below(rng, g1.edges.size())];
        Delta delta = pi_difference(g1.pivec_of(a), g1.pivec_of(b));
        if (!is_singleton(ds, es, delta)) continue;
        SingletonWitness wit = singleton_witness(ds, es, word_of_vertex(ds, g1, a),
                                                 word_of_vertex(ds, g1, b));
        std::vector<Word> cells = omega(ds, wit.addr_w, 1);
        CHECK(cells.size() >= 2);
        CHECK(cells.size() <= 4);
        bool has_a = false, has_b = false;
        for (const Word& w : cells) {
            CHECK(box_of_word(ds, w).contains(wit.point));
            if (w == wit.w) has_a = true;
            if (w == wit.w2) has_b = true;
        }
        CHECK(has_a);
        CHECK(has_b);
        ++sampled;
    }
}

TEST_CASE("witness points for non-uniform column widths stay exact") {
    DigitSet bg = baranski_gasket();
    ESets es = compute_esets(bg);
    SingletonWitness wit = singleton_witness(bg, es, word_of(bg, {{1, 0}}), word_of(bg, {{0, 0}}));
    CHECK(wit.point == ExactPoint{Rational(1, 3), Rational(0)});
    std::vector<Word> cells = omega(bg, wit.addr_w, 1);
    CHECK(cells.size() == 2);
}
