#include <doctest.h>

#include <random>

#include "carpetlab/errors.hpp"
#include "carpetlab/graph_metrics.hpp"
#include "helpers.hpp"

using namespace carpetlab;
using namespace carpetlab::testing;

TEST_CASE("articulation on small fixture graphs") {
    // Path on three vertices: the middle splits 1|1.
    HataGraph path = build_hata(segment(), 1);
    std::vector<CutVertexRecord> recs = articulation(path);
    REQUIRE(recs.size() == 1);
    CHECK(path.pivec_of(recs[0].vertex) == PiVec{0, 1});
    CHECK(recs[0].component_sizes == std::vector<std::uint32_t>{1, 1});

    // Triangle: 2-connected.
    CHECK(articulation(build_hata(gasket(), 1)).empty());

    // Path on nine vertices: seven cut vertices, middle splits 4|4.
    HataGraph path9 = build_hata(segment(), 2);
    std::vector<CutVertexRecord> recs9 = articulation(path9);
    REQUIRE(recs9.size() == 7);
    bool middle_seen = false;
    for (const CutVertexRecord& rec : recs9) {
        CHECK(rec.component_sizes.size() == 2);
        if (path9.pivec_of(rec.vertex) == PiVec{0, 4}) {
            middle_seen = true;
            CHECK(rec.component_sizes == std::vector<std::uint32_t>{4, 4});
        }
    }
    CHECK(middle_seen);

    CHECK_THROWS_AS(articulation(build_hata(ex23(), 1)), input_error);
}

TEST_CASE("chi on fixtures") {
    CHECK(chi(build_hata(segment(), 2)) == 4);
    CHECK(chi(build_hata(standard_carpet(), 2)) == 0);
    CHECK(chi(build_hata(gasket(), 2)) == 0);
}

TEST_CASE("record invariants and the deletion oracle") {
    std::mt19937_64 rng(41);
    std::vector<HataGraph> graphs;
    graphs.push_back(build_hata(segment(), 2));
    graphs.push_back(build_hata(gasket(), 2));
    graphs.push_back(build_hata(standard_carpet(), 1));
    graphs.push_back(build_hata(seven_cell(), 2));
    graphs.push_back(build_hata(pinched(), 2));
    int added = 0;
    while (added < 25) {
        DigitSet ds = random_digit_set(rng, {3, 3});
        HataGraph g = build_hata(ds, 2);
        if (!graph_connected(g) || g.vertex_count() > 200) continue;
        graphs.push_back(std::move(g));
        ++added;
    }
    for (const HataGraph& g : graphs) {
        std::vector<CutVertexRecord> recs = articulation(g);
        for (const CutVertexRecord& rec : recs) {
            CHECK(rec.component_sizes.size() >= 2);
            std::uint64_t total = 0;
            for (std::uint32_t s : rec.component_sizes) total += s;
            CHECK(total == g.vertex_count() - 1);
        }
        CHECK(chi(g) == naive_chi(g));
    }
}
