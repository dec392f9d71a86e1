#include <doctest.h>

#include <random>
#include <set>

#include "carpetlab/core.hpp"
#include "carpetlab/errors.hpp"
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

TEST_CASE("pi evaluates the Horner recursion") {
    DigitSet carpet = standard_carpet();
    CHECK(pi(carpet, word_of(carpet, {{2, 1}, {0, 2}})) == PiVec{6, 5});
    for (std::size_t i = 0; i < carpet.size(); ++i) {
        PiVec p = pi(carpet, {static_cast<int>(i)});
        CHECK(p[0] == carpet.digits[i][0]);
        CHECK(p[1] == carpet.digits[i][1]);
    }
    CHECK_THROWS_AS(pi(carpet, {}), input_error);
}

TEST_CASE("pi is injective on words of a fixed length") {
    DigitSet carpet = standard_carpet();
    std::set<PiVec> seen;
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) CHECK(seen.insert(pi(carpet, {a, b})).second);
    CHECK(seen.size() == 64);

    DigitSet mixed = ex23();
    std::set<PiVec> seen3;
    std::size_t total = 0;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            for (int c = 0; c < 5; ++c) {
                CHECK(seen3.insert(pi(mixed, {a, b, c})).second);
                ++total;
            }
    CHECK(seen3.size() == total);
}

TEST_CASE("evaluate resolves eventually periodic addresses exactly") {
    DigitSet g = gasket();
    PointAddress corner{word_of(g, {{1, 0}}), {}, word_of(g, {{0, 0}})};
    CHECK(evaluate(g, corner) == ExactPoint{Rational(1, 2), Rational(0)});

    DigitSet seg = segment();
    PointAddress low{word_of(seg, {{0, 1}}), {}, word_of(seg, {{0, 0}})};
    CHECK(evaluate(seg, low) == ExactPoint{Rational(0), Rational(1, 3)});

    DigitSet quarters = DigitSet::create(GridSpec::square(4), {{3, 0}, {0, 3}});
    PointAddress ex14{word_of(quarters, {{3, 0}}), {}, word_of(quarters, {{0, 3}})};
    CHECK(evaluate(quarters, ex14) == ExactPoint{Rational(3, 4), Rational(1, 4)});
}

TEST_CASE("evaluate stays in every truncation box") {
    std::mt19937_64 rng(7);
    for (const DigitSet& ds : {standard_carpet(), gasket(), ex23(), baranski_gasket()}) {
        for (int trial = 0; trial < 20; ++trial) {
            PointAddress addr;
            addr.base = {static_cast<int>(rng_below(rng, ds.size()))};
            for (int t = 0; t < 2; ++t)
                addr.preperiod.push_back(static_cast<int>(rng_below(rng, ds.size())));
            for (int t = 0; t < 1 + static_cast<int>(rng_below(rng, 3)); ++t)
                addr.period.push_back(static_cast<int>(rng_below(rng, ds.size())));
            ExactPoint p = evaluate(ds, addr);
            Word prefix = addr.base;
            prefix.insert(prefix.end(), addr.preperiod.begin(), addr.preperiod.end());
            for (int reps = 0; reps <= 10; ++reps) {
                CHECK(box_of_word(ds, prefix).contains(p));
                prefix.insert(prefix.end(), addr.period.begin(), addr.period.end());
            }
        }
    }
}

TEST_CASE("uniform grids give base-N denominators") {
    // Denominator of each coordinate divides N^(a+1) (N^b - 1) for preperiod
    // length a, period length b (the base letter adds one more scale).
    std::mt19937_64 rng(11);
    DigitSet carpet = standard_carpet();
    for (int trial = 0; trial < 50; ++trial) {
        PointAddress addr;
        addr.base = {static_cast<int>(rng_below(rng, carpet.size()))};
        int a = static_cast<int>(rng_below(rng, 3));
        int b = 1 + static_cast<int>(rng_below(rng, 3));
        for (int t = 0; t < a; ++t)
            addr.preperiod.push_back(static_cast<int>(rng_below(rng, carpet.size())));
        for (int t = 0; t < b; ++t)
            addr.period.push_back(static_cast<int>(rng_below(rng, carpet.size())));
        ExactPoint p = evaluate(carpet, addr);
        BigInt modulus = 1;
        for (int t = 0; t < a + 1; ++t) modulus *= 3;
        BigInt period_part = 1;
        for (int t = 0; t < b; ++t) period_part *= 3;
        modulus *= period_part - 1;
        for (const Rational& coord : p)
            CHECK(modulus % boost::multiprecision::denominator(coord) == 0);
    }
}

TEST_CASE("canonicalize reduces periods and is idempotent") {
    DigitSet g = gasket();
    PointAddress addr;
    addr.base = {0};
    addr.preperiod = {1, 2, 2};
    addr.period = {2, 2};  // one-cycle written twice
    PointAddress canon = canonicalize(g, addr);
    CHECK(canon.period == std::vector<int>{2});
    CHECK(canon.preperiod == std::vector<int>{1});
    CHECK(evaluate(g, addr) == evaluate(g, canon));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        PointAddress random;
        random.base = {static_cast<int>(rng_below(rng, g.size()))};
        for (int t = 0; t < static_cast<int>(rng_below(rng, 4)); ++t)
            random.preperiod.push_back(static_cast<int>(rng_below(rng, g.size())));
        for (int t = 0; t < 1 + static_cast<int>(rng_below(rng, 4)); ++t)
            random.period.push_back(static_cast<int>(rng_below(rng, g.size())));
        PointAddress once = canonicalize(g, random);
        PointAddress twice = canonicalize(g, once);
        CHECK(once.base == twice.base);
        CHECK(once.preperiod == twice.preperiod);
        CHECK(once.period == twice.period);
        CHECK(evaluate(g, random) == evaluate(g, once));
    }
}

TEST_CASE("reroot moves the base boundary without moving the point") {
    DigitSet g = gasket();
    PointAddress addr{word_of(g, {{1, 0}}), {0}, {2, 1}};
    ExactPoint p = evaluate(g, addr);
    for (int level = 0; level <= 4; ++level) {
        PointAddress moved = reroot(g, addr, level);
        CHECK(static_cast<int>(moved.base.size()) == level);
        CHECK(evaluate(g, moved) == p);
    }
}

TEST_CASE("symmetry orbits") {
    CHECK(symmetry_orbit(standard_carpet()).size() == 1);
    CHECK(symmetry_orbit(segment()).size() == 4);
    CHECK(symmetry_orbit(gasket()).size() == 4);
    DigitSet canon = canonical_representative(segment());
    for (const DigitSet& member : symmetry_orbit(segment()))
        CHECK(canon.digits <= member.digits);
    CHECK_THROWS_AS(symmetry_orbit(DigitSet::create(GridSpec::uniform({2, 3}), {{0, 0}, {1, 2}})),
                    input_error);
}

TEST_CASE("digit set validation") {
    CHECK_THROWS_AS(DigitSet::create(GridSpec::square(3), {{0, 0}}), input_error);
    CHECK_THROWS_AS(DigitSet::create(GridSpec::square(2), {{0, 0}, {0, 1}, {1, 0}, {1, 1}}),
                    input_error);
    CHECK_THROWS_AS(DigitSet::create(GridSpec::square(3), {{0, 0}, {0, 0}, {1, 1}}), input_error);
    CHECK_THROWS_AS(DigitSet::create(GridSpec::square(3), {{0, 3}, {0, 0}}), input_error);
    CHECK_THROWS_AS(GridSpec::with_ratios({2, 2}, {{Rational(1, 3), Rational(1, 3)},
                                                   {Rational(1, 2), Rational(1, 2)}}),
                    input_error);
    DigitSet ds = DigitSet::create(GridSpec::square(3), {{2, 1}, {0, 0}, {1, 2}});
    CHECK(ds.digits == std::vector<Digit>{{0, 0}, {1, 2}, {2, 1}});
}
