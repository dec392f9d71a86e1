#include "carpetlab/io.hpp"

#include <zlib.h>

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "carpetlab/errors.hpp"

namespace carpetlab {

using ordered_json = nlohmann::ordered_json;

namespace {

DigitSet parse_grid_text(const std::string& input) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : input) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) throw input_error("grid text: empty input");

    std::size_t first_row = 0;
    int n = -1;
    if (lines[0].size() > 1 && lines[0][0] == 'N' &&
        (lines[0][1] == ' ' || lines[0][1] == '\t')) {
        try {
            n = std::stoi(lines[0].substr(2));
        } catch (...) {
            throw input_error("grid text line 1: bad header, expected \"N <int>\"");
        }
        first_row = 1;
    }
    std::size_t rows = lines.size() - first_row;
    if (n < 0) n = static_cast<int>(rows);
    if (static_cast<int>(rows) != n)
        throw input_error("grid text: expected " + std::to_string(n) + " rows, got " +
                          std::to_string(rows));

    std::vector<Digit> digits;
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string& row = lines[first_row + r];
        std::size_t lineno = first_row + r + 1;
        if (static_cast<int>(row.size()) != n)
            throw input_error("grid text line " + std::to_string(lineno) + ": expected " +
                              std::to_string(n) + " characters, got " +
                              std::to_string(row.size()));
        for (int c = 0; c < n; ++c) {
            char ch = row[static_cast<std::size_t>(c)];
            if (ch == '1' || ch == '#') {
                // The first text row is the top of the unit square.
                digits.push_back({c, n - 1 - static_cast<int>(r)});
            } else if (ch != '0' && ch != '.') {
                throw input_error("grid text line " + std::to_string(lineno) + " column " +
                                  std::to_string(c + 1) + ": bad character '" +
                                  std::string(1, ch) + "'");
            }
        }
    }
    return DigitSet::create(GridSpec::square(n), std::move(digits));
}

DigitSet parse_json_digit_set(const std::string& input) {
    ordered_json j;
    try {
        j = ordered_json::parse(input);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("json: ") + e.what());
    }
    try {
        std::vector<int> dims = j.at("dims").get<std::vector<int>>();
        GridSpec grid;
        if (j.contains("p") && !j["p"].is_null()) {
            std::vector<std::vector<Rational>> ratios;
            for (const auto& row : j.at("p")) {
                std::vector<Rational> axis;
                for (const auto& entry : row) axis.push_back(parse_fraction(entry.get<std::string>()));
                ratios.push_back(std::move(axis));
            }
            grid = GridSpec::with_ratios(dims, std::move(ratios));
        } else {
            grid = GridSpec::uniform(dims);
        }
        std::vector<Digit> digits = j.at("digits").get<std::vector<Digit>>();
        // Duplicates are rejected by DigitSet::create.
        return DigitSet::create(std::move(grid), std::move(digits));
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("json: ") + e.what());
    }
}

}  // namespace

DigitSet parse_digit_set(const std::string& input, InputFormat fmt) {
    if (fmt == InputFormat::Auto) {
        std::size_t i = input.find_first_not_of(" \t\r\n");
        fmt = (i != std::string::npos && input[i] == '{') ? InputFormat::Json
                                                          : InputFormat::GridText;
    }
    return fmt == InputFormat::Json ? parse_json_digit_set(input) : parse_grid_text(input);
}

std::string emit_digit_set_json(const DigitSet& ds) {
    ordered_json j;
    j["dims"] = ds.grid.subdiv;
    j["digits"] = ds.digits;
    if (!ds.grid.is_uniform()) {
        ordered_json rows = ordered_json::array();
        for (const auto& axis : ds.grid.ratios) {
            ordered_json row = ordered_json::array();
            for (const Rational& r : axis) row.push_back(to_fraction(r));
            rows.push_back(row);
        }
        j["p"] = rows;
    }
    return j.dump();
}

std::string emit_grid_text(const DigitSet& ds) {
    if (ds.grid.d != 2 || ds.grid.subdiv[0] != ds.grid.subdiv[1] || !ds.grid.is_uniform())
        throw input_error("grid text output needs a uniform square d=2 grid");
    int n = ds.grid.subdiv[0];
    std::string out;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c)
            out += ds.contains({c, n - 1 - r}) ? '1' : '0';
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

namespace {

std::string word_id(const DigitSet& ds, const Word& w) {
    std::string id;
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (t) id += '-';
        const Digit& dig = ds.digits[static_cast<std::size_t>(w[t])];
        id += '(';
        for (std::size_t a = 0; a < dig.size(); ++a) {
            if (a) id += ',';
            id += std::to_string(dig[a]);
        }
        id += ')';
    }
    return id;
}

}  // namespace

std::string emit_dot(const DigitSet& ds, const HataGraph& g) {
    std::string out = "graph hata {\n";
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        out += "  \"" + word_id(ds, word_of_vertex(ds, g, v)) + "\";\n";
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        out += "  \"" + word_id(ds, word_of_vertex(ds, g, g.edges[e].first)) + "\" -- \"" +
               word_id(ds, word_of_vertex(ds, g, g.edges[e].second)) + "\"";
        if (g.labelled && g.labels[e])
            out += " [label=\"x=" + point_to_string(*g.labels[e]) + "\"]";
        out += ";\n";
    }
    out += "}\n";
    return out;
}

namespace {

ordered_json word_json(const DigitSet& ds, const Word& w) {
    ordered_json arr = ordered_json::array();
    for (int idx : w) arr.push_back(ds.digits[static_cast<std::size_t>(idx)]);
    return arr;
}

ordered_json point_json(const ExactPoint& p) {
    ordered_json arr = ordered_json::array();
    for (const Rational& r : p) arr.push_back(to_fraction(r));
    return arr;
}

}  // namespace

std::string emit_hata_json(const DigitSet& ds, const HataGraph& g) {
    ordered_json j;
    j["schema"] = "carpetlab-hata-1";
    j["level"] = g.level;
    j["dims"] = ds.grid.subdiv;
    ordered_json vertices = ordered_json::array();
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        vertices.push_back(word_json(ds, word_of_vertex(ds, g, v)));
    j["vertices"] = vertices;
    ordered_json edges = ordered_json::array();
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        ordered_json entry;
        entry["a"] = g.edges[e].first;
        entry["b"] = g.edges[e].second;
        if (g.labelled) entry["label"] = g.labels[e] ? point_json(*g.labels[e]) : ordered_json(nullptr);
        edges.push_back(entry);
    }
    j["edges"] = edges;
    return j.dump();
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace {

ordered_json words_json(const DigitSet& ds, const std::vector<Word>& words) {
    ordered_json arr = ordered_json::array();
    for (const Word& w : words) arr.push_back(word_json(ds, w));
    return arr;
}

std::string cut_status_tag(CutStatus status) {
    switch (status) {
        case CutStatus::HasCutPoints: return "has";
        case CutStatus::NoCutPoints: return "none";
        case CutStatus::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

}  // namespace

std::string report_to_json(const DigitSet& ds, const ClassificationReport& rep) {
    ordered_json j;
    j["schema"] = "carpetlab-report-1";
    j["dims"] = ds.grid.subdiv;
    j["digits"] = ds.digits;
    j["connected"] = rep.connected;

    if (rep.fragility) {
        ordered_json f;
        f["fragile"] = rep.fragility->fragile;
        if (rep.fragility->fragile) {
            f["point"] = point_json(rep.fragility->point);
            f["partition"] = ordered_json::array({rep.fragility->part1, rep.fragility->part2});
        }
        j["fragility"] = f;
    } else {
        j["fragility"] = nullptr;
    }

    if (rep.cut) {
        ordered_json c;
        c["status"] = cut_status_tag(rep.cut->status);
        c["witness"] = rep.cut->witness ? point_json(*rep.cut->witness) : ordered_json(nullptr);
        c["heuristic"] = rep.cut->heuristic;
        if (rep.cut->status == CutStatus::NoCutPoints) {
            c["level"] = rep.cut->level;
            c["chi"] = rep.cut->chi_value;
            c["threshold"] = rep.cut->threshold;
        }
        ordered_json ladder = ordered_json::array();
        for (const ChiEntry& entry : rep.cut->ladder) {
            ordered_json row;
            row["k"] = entry.k;
            row["chi"] = entry.chi;
            row["threshold"] = entry.threshold;
            ladder.push_back(row);
        }
        c["ladder"] = ladder;
        j["cut"] = c;
    } else {
        j["cut"] = nullptr;
    }

    if (rep.localcut) {
        ordered_json l;
        l["found"] = rep.localcut->found;
        if (rep.localcut->found) {
            l["level"] = rep.localcut->level;
            l["point"] = point_json(rep.localcut->point);
            l["I"] = words_json(ds, rep.localcut->part_i);
            l["J"] = words_json(ds, rep.localcut->part_j);
            l["omega"] = words_json(ds, rep.localcut->omega_cells);
        }
        j["localcut"] = l;
    } else {
        j["localcut"] = nullptr;
    }

    j["verdict"] = verdict_tag(rep.verdict);
    return j.dump();
}

std::string report_to_text(const DigitSet& ds, const ClassificationReport& rep) {
    std::ostringstream os;
    os << "grid: ";
    for (std::size_t a = 0; a < ds.grid.subdiv.size(); ++a)
        os << (a ? "x" : "") << ds.grid.subdiv[a];
    os << (ds.grid.is_uniform() ? "" : " (non-uniform ratios)") << ", |D| = " << ds.size() << "\n";
    os << "connected: " << (rep.connected ? "yes" : "no") << "\n";

    if (rep.fragility) {
        os << "fragile: " << (rep.fragility->fragile ? "yes" : "no");
        if (rep.fragility->fragile) {
            os << ", cut point " << point_to_string(rep.fragility->point) << ", partition ";
            auto side = [&](const std::vector<Digit>& part) {
                std::string s = "{";
                for (std::size_t i = 0; i < part.size(); ++i) {
                    if (i) s += ',';
                    s += '(';
                    for (std::size_t a = 0; a < part[i].size(); ++a) {
                        if (a) s += ',';
                        s += std::to_string(part[i][a]);
                    }
                    s += ')';
                }
                return s + '}';
            };
            os << side(rep.fragility->part1) << " | " << side(rep.fragility->part2);
        }
        os << "\n";
    }
    if (rep.cut) {
        os << "cut points: ";
        switch (rep.cut->status) {
            case CutStatus::HasCutPoints:
                os << "present";
                if (rep.cut->witness) os << ", witness " << point_to_string(*rep.cut->witness);
                if (rep.cut->heuristic) os << " (heuristic: bounded-criterion assumption)";
                break;
            case CutStatus::NoCutPoints:
                os << "none (chi(Gamma_" << rep.cut->level << ") = " << rep.cut->chi_value
                   << " < " << rep.cut->threshold << ")";
                break;
            case CutStatus::Inconclusive: {
                os << "inconclusive, chi ladder";
                for (const ChiEntry& entry : rep.cut->ladder)
                    os << " k=" << entry.k << ":" << entry.chi << "/" << entry.threshold;
                break;
            }
        }
        os << "\n";
    }
    if (rep.localcut) {
        os << "local cut points: ";
        if (rep.localcut->found) {
            os << "found at n=" << rep.localcut->level << ", x="
               << point_to_string(rep.localcut->point);
        } else {
            os << "none at n in {1,2}";
        }
        os << "\n";
    }
    os << "verdict: " << verdict_tag(rep.verdict) << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Rasters
// ---------------------------------------------------------------------------

std::string emit_pgm(const Raster& raster) {
    std::string out = "P5\n" + std::to_string(raster.width) + " " +
                      std::to_string(raster.height) + "\n255\n";
    out.reserve(out.size() + raster.filled.size());
    for (std::uint8_t p : raster.filled) out += static_cast<char>(p ? 0 : 255);
    return out;
}

namespace {

void push_u32(std::string& s, std::uint32_t v) {
    s += static_cast<char>((v >> 24) & 0xff);
    s += static_cast<char>((v >> 16) & 0xff);
    s += static_cast<char>((v >> 8) & 0xff);
    s += static_cast<char>(v & 0xff);
}

void push_chunk(std::string& s, const char type[4], const std::string& payload) {
    push_u32(s, static_cast<std::uint32_t>(payload.size()));
    std::string body(type, 4);
    body += payload;
    s += body;
    std::uint32_t crc = static_cast<std::uint32_t>(
        ::crc32(0, reinterpret_cast<const Bytef*>(body.data()),
                static_cast<uInt>(body.size())));
    push_u32(s, crc);
}

}  // namespace

std::string emit_png(const Raster& raster) {
    // One filter byte (0) per scanline, 8-bit grayscale.
    std::string raw;
    raw.reserve(static_cast<std::size_t>(raster.height) * (raster.width + 1));
    for (int r = 0; r < raster.height; ++r) {
        raw += '\0';
        for (int c = 0; c < raster.width; ++c)
            raw += static_cast<char>(raster.filled[static_cast<std::size_t>(r) * raster.width + c]
                                         ? 0
                                         : 255);
    }
    uLongf bound = ::compressBound(static_cast<uLong>(raw.size()));
    std::string compressed(bound, '\0');
    if (::compress2(reinterpret_cast<Bytef*>(compressed.data()), &bound,
                    reinterpret_cast<const Bytef*>(raw.data()), static_cast<uLong>(raw.size()),
                    9) != Z_OK)
        throw internal_error("png: deflate failed");
    compressed.resize(bound);

    std::string ihdr;
    push_u32(ihdr, static_cast<std::uint32_t>(raster.width));
    push_u32(ihdr, static_cast<std::uint32_t>(raster.height));
    ihdr += static_cast<char>(8);  // bit depth
    ihdr += static_cast<char>(0);  // grayscale
    ihdr += static_cast<char>(0);  // deflate
    ihdr += static_cast<char>(0);  // adaptive filtering
    ihdr += static_cast<char>(0);  // no interlace

    std::string out("\x89PNG\r\n\x1a\n", 8);
    push_chunk(out, "IHDR", ihdr);
    push_chunk(out, "IDAT", compressed);
    push_chunk(out, "IEND", "");
    return out;
}

}  // namespace carpetlab
