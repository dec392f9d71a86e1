#include <doctest.h>

#include <zlib.h>

#include "carpetlab/classifier.hpp"
#include "carpetlab/errors.hpp"
#include "carpetlab/io.hpp"
#include "helpers.hpp"

using namespace carpetlab;
using namespace carpetlab::testing;

TEST_CASE("grid text parses with the top row first") {
    DigitSet ds = parse_digit_set("010\n011\n110\n");
    CHECK(ds == ex23());
    CHECK(parse_digit_set("N 3\n010\n011\n110\n", InputFormat::GridText) == ex23());
    CHECK(parse_digit_set(".#.\n.##\n##.\n") == ex23());
}

TEST_CASE("grid text diagnostics carry line and column") {
    CHECK_THROWS_WITH_AS(parse_digit_set("010\n0x1\n110\n"),
                         "grid text line 2 column 2: bad character 'x'", input_error);
    CHECK_THROWS_AS(parse_digit_set("N 3\n010\n011\n"), input_error);
    CHECK_THROWS_AS(parse_digit_set("01\n011\n110\n"), input_error);
    CHECK_THROWS_AS(parse_digit_set("000\n000\n000\n"), input_error);  // |D| < 2
}

TEST_CASE("grid text round-trips") {
    for (const DigitSet& ds : {standard_carpet(), gasket(), segment(), ex23(), seven_cell()}) {
        std::string text = emit_grid_text(ds);
        CHECK(parse_digit_set(text, InputFormat::GridText) == ds);
    }
    CHECK(emit_grid_text(ex23()) == "010\n011\n110\n");
}

TEST_CASE("json digit sets round-trip") {
    for (const DigitSet& ds :
         {standard_carpet(), gasket(), ex23(), baranski_gasket(), wide_comb()}) {
        CHECK(parse_digit_set(emit_digit_set_json(ds)) == ds);
    }
    CHECK(parse_digit_set("{\"dims\":[3,3],\"digits\":[[0,0],[1,0],[1,1],[1,2],[2,1]]}") ==
          ex23());
}

TEST_CASE("json validation") {
    CHECK_THROWS_AS(parse_digit_set("{\"dims\":[3,3]"), input_error);  // truncated
    CHECK_THROWS_AS(
        parse_digit_set("{\"dims\":[2,2],\"digits\":[[0,0],[1,1]],"
                        "\"p\":[[\"1/3\",\"1/2\"],[\"1/2\",\"1/2\"]]}"),
        input_error);  // ratios sum to 5/6
    CHECK_THROWS_AS(parse_digit_set("{\"dims\":[2,2],\"digits\":[[0,0],[0,0],[1,1]]}"),
                    input_error);  // duplicate digit
    CHECK_THROWS_AS(parse_digit_set("{\"dims\":[2,2],\"digits\":[[0,2],[0,0]]}"),
                    input_error);  // out of range
}

TEST_CASE("dot output is deterministic and labelled") {
    DigitSet seg = segment();
    HataGraph g = build_hata(seg, 1, true);
    CHECK(emit_dot(seg, g) ==
          "graph hata {\n"
          "  \"(0,0)\";\n"
          "  \"(0,1)\";\n"
          "  \"(0,2)\";\n"
          "  \"(0,0)\" -- \"(0,1)\" [label=\"x=(0/1,1/3)\"];\n"
          "  \"(0,1)\" -- \"(0,2)\" [label=\"x=(0/1,2/3)\"];\n"
          "}\n");

    // Level-2 ids join the digit tuples with dashes.
    HataGraph g2 = build_hata(seg, 2);
    std::string dot = emit_dot(seg, g2);
    CHECK(dot.find("\"(0,0)-(0,0)\"") != std::string::npos);
    CHECK(dot.find("\"(0,2)-(0,2)\"") != std::string::npos);
}

TEST_CASE("hata json lists vertices in key order") {
    DigitSet g = gasket();
    std::string doc = emit_hata_json(g, build_hata(g, 1, true));
    CHECK(doc.find("\"schema\":\"carpetlab-hata-1\"") != std::string::npos);
    CHECK(doc.find("\"vertices\":[[[0,0]],[[1,0]],[[1,1]]]") != std::string::npos);
    CHECK(doc.find("\"label\":[\"1/2\",\"0/1\"]") != std::string::npos);
}

TEST_CASE("classification reports serialize with stable field order") {
    DigitSet g = gasket();
    std::string doc = report_to_json(g, classify(g));
    CHECK(doc.find("\"schema\":\"carpetlab-report-1\"") == 1);
    CHECK(doc.find("\"verdict\":\"has-local-cut-points-only\"") != std::string::npos);
    CHECK(doc.find("\"point\":[\"1/2\",\"0/1\"]") != std::string::npos);
    // Two runs, same bytes.
    CHECK(doc == report_to_json(g, classify(g)));

    std::string text = report_to_text(g, classify(g));
    CHECK(text.find("local cut points: found at n=1, x=(1/2,0/1)") != std::string::npos);
}

TEST_CASE("pgm bytes") {
    Raster r = render_raster(standard_carpet(), 1);
    std::string pgm = emit_pgm(r);
    CHECK(pgm.rfind("P5\n3 3\n255\n", 0) == 0);
    REQUIRE(pgm.size() == 11 + 9);
    CHECK(static_cast<unsigned char>(pgm[11 + 4]) == 255);  // empty centre
    CHECK(static_cast<unsigned char>(pgm[11 + 0]) == 0);    // filled corner

    Raster r3 = render_raster(standard_carpet(), 3);
    CHECK(r3.width == 27);
    CHECK(r3.filled_count() == 512);
}

TEST_CASE("png structure decodes back to the raster") {
    Raster r = render_raster(gasket(), 2);
    std::string png = emit_png(r);
    REQUIRE(png.size() > 8);
    CHECK(png.compare(0, 8, "\x89PNG\r\n\x1a\n", 8) == 0);
    CHECK(png.find("IHDR") == 12);
    CHECK(png.find("IEND") != std::string::npos);

    // Inflate the IDAT payload and compare pixels.
    std::size_t idat = png.find("IDAT");
    REQUIRE(idat != std::string::npos);
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i)
        len = (len << 8) | static_cast<unsigned char>(png[idat - 4 + i]);
    std::string compressed = png.substr(idat + 4, len);
    std::vector<unsigned char> raw(static_cast<std::size_t>(r.height) * (r.width + 1));
    uLongf out_len = raw.size();
    REQUIRE(::uncompress(raw.data(), &out_len,
                         reinterpret_cast<const Bytef*>(compressed.data()),
                         static_cast<uLong>(compressed.size())) == Z_OK);
    REQUIRE(out_len == raw.size());
    for (int row = 0; row < r.height; ++row) {
        CHECK(raw[static_cast<std::size_t>(row) * (r.width + 1)] == 0);  // filter byte
        for (int col = 0; col < r.width; ++col) {
            unsigned char pixel = raw[static_cast<std::size_t>(row) * (r.width + 1) + 1 + col];
            CHECK(pixel == (r.filled[static_cast<std::size_t>(row) * r.width + col] ? 0 : 255));
        }
    }
}
