// carpetlab: topology classification of generalized Sierpinski carpets,
// Baranski carpets and Baranski sponges from their digit sets.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "carpetlab/census.hpp"
#include "carpetlab/classifier.hpp"
#include "carpetlab/errors.hpp"
#include "carpetlab/graph_metrics.hpp"
#include "carpetlab/grid.hpp"
#include "carpetlab/io.hpp"

namespace {

using namespace carpetlab;

struct CommonOpts {
    std::string input = "-";
    std::string format = "auto";
    int kmax = 4;
    int jobs = 1;
    bool assume_bounded = false;
    std::uint64_t memcap = 0;
    bool json = false;
};

void add_input_opts(CLI::App* cmd, CommonOpts& c, bool with_format = true) {
    cmd->add_option("--input,-i", c.input, "Input file, or - for stdin")->capture_default_str();
    if (with_format)
        cmd->add_option("--format", c.format, "Input format: auto, grid or json")
            ->check(CLI::IsMember({"auto", "grid", "json"}))
            ->capture_default_str();
    cmd->add_option("--kmax", c.kmax, "Deepest Hata graph level for the cut-point walk")
        ->capture_default_str();
    cmd->add_option("--jobs,-j", c.jobs, "Worker threads (1 = serial reference)")
        ->capture_default_str();
    cmd->add_flag("--assume-bounded-criterion", c.assume_bounded,
                  "Report cut points when every chi level up to kmax clears its "
                  "threshold (heuristic)");
    cmd->add_option("--memcap", c.memcap, "Override the cell-count cap");
}

InputFormat input_format(const CommonOpts& c) {
    if (c.format == "grid") return InputFormat::GridText;
    if (c.format == "json") return InputFormat::Json;
    return InputFormat::Auto;
}

DigitSet read_input(const CommonOpts& c) {
    if (c.memcap) set_cell_cap(c.memcap);
    std::string data;
    if (c.input == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        data = buf.str();
    } else {
        std::ifstream file(c.input, std::ios::binary);
        if (!file) throw input_error("cannot open input file: " + c.input);
        std::ostringstream buf;
        buf << file.rdbuf();
        data = buf.str();
    }
    return parse_digit_set(data, input_format(c));
}

ClassifyOptions classify_opts(const CommonOpts& c) {
    ClassifyOptions opt;
    opt.kmax = c.kmax;
    opt.jobs = c.jobs;
    opt.assume_bounded_criterion = c.assume_bounded;
    return opt;
}

void write_file(const std::string& path, const std::string& bytes) {
    if (path == "-") {
        std::cout.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw input_error("cannot open output file: " + path);
    file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

int run(int argc, char** argv) {
    CLI::App app{"Topology classifier for generalized Sierpinski carpets and Baranski sponges"};
    app.require_subcommand(1);

    CommonOpts c;

    auto* cmd_classify = app.add_subcommand("classify", "Run the full classification pipeline");
    add_input_opts(cmd_classify, c);
    cmd_classify->add_flag("--json", c.json, "Emit the JSON report instead of the summary");
    cmd_classify->callback([&] {
        DigitSet ds = read_input(c);
        ClassificationReport rep = classify(ds, classify_opts(c));
        std::cout << (c.json ? report_to_json(ds, rep) + "\n" : report_to_text(ds, rep));
    });

    auto* cmd_connected = app.add_subcommand("connected", "Decide connectedness of the attractor");
    add_input_opts(cmd_connected, c);
    cmd_connected->add_flag("--json", c.json, "Emit JSON");
    cmd_connected->callback([&] {
        DigitSet ds = read_input(c);
        bool conn = is_connected(ds, c.jobs);
        std::vector<bool> q_conn;
        for (int n = 1; n <= ds.grid.d + 1; ++n)
            q_conn.push_back(grid_connected(build_level_grid(ds, n, c.jobs)));
        if (c.json) {
            std::string q = "[";
            for (std::size_t i = 0; i < q_conn.size(); ++i)
                q += std::string(i ? "," : "") + (q_conn[i] ? "true" : "false");
            q += "]";
            std::cout << "{\"connected\":" << (conn ? "true" : "false")
                      << ",\"q_connected\":" << q << ",\"verdict\":\""
                      << (conn ? "connected" : "disconnected") << "\"}\n";
        } else {
            std::cout << "connected: " << (conn ? "yes" : "no") << "\n";
            for (std::size_t i = 0; i < q_conn.size(); ++i)
                std::cout << "Q_" << (i + 1) << " connected: " << (q_conn[i] ? "yes" : "no")
                          << "\n";
            std::cout << "verdict: " << (conn ? "connected" : "disconnected") << "\n";
        }
    });

    int chi_k = 2;
    auto* cmd_chi = app.add_subcommand("chi", "Compute chi of the level-k Hata graph");
    add_input_opts(cmd_chi, c);
    cmd_chi->add_option("--k", chi_k, "Hata graph level")->capture_default_str();
    cmd_chi->add_flag("--json", c.json, "Emit JSON");
    cmd_chi->callback([&] {
        DigitSet ds = read_input(c);
        std::uint64_t value = chi(build_hata(ds, chi_k, false, c.jobs));
        if (c.json)
            std::cout << "{\"k\":" << chi_k << ",\"chi\":" << value << "}\n";
        else
            std::cout << "chi(Gamma_" << chi_k << ") = " << value << "\n";
    });

    auto* cmd_frag = app.add_subcommand("fragility", "Fragility test on the labelled Hata graph");
    add_input_opts(cmd_frag, c);
    cmd_frag->add_flag("--json", c.json, "Emit JSON");
    cmd_frag->callback([&] {
        DigitSet ds = read_input(c);
        ClassificationReport rep;
        rep.connected = true;
        rep.fragility = fragility(ds, c.jobs);
        if (c.json) {
            ClassificationReport full;
            full.connected = true;
            full.fragility = rep.fragility;
            full.verdict = Verdict::Inconclusive;
            std::cout << report_to_json(ds, full) << "\n";
        } else if (rep.fragility->fragile) {
            std::cout << "fragile: yes, cut point " << point_to_string(rep.fragility->point)
                      << "\n";
        } else {
            std::cout << "fragile: no\n";
        }
    });

    auto* cmd_local = app.add_subcommand("localcut", "Local cut point search (n = 1, 2)");
    add_input_opts(cmd_local, c);
    cmd_local->add_flag("--json", c.json, "Emit JSON");
    cmd_local->callback([&] {
        DigitSet ds = read_input(c);
        ClassificationReport rep = classify(ds, classify_opts(c));
        if (c.json) {
            std::cout << report_to_json(ds, rep) << "\n";
            return;
        }
        if (!rep.connected) {
            std::cout << "not applicable: the attractor is disconnected\n";
        } else if (rep.cut && rep.cut->status == CutStatus::HasCutPoints) {
            std::cout << "not applicable: the attractor has cut points (every cut point is a "
                         "local cut point)\n";
        } else if (rep.cut && rep.cut->status == CutStatus::Inconclusive) {
            std::cout << "not applicable: cut point analysis inconclusive up to kmax\n";
        } else if (rep.localcut && rep.localcut->found) {
            std::cout << "local cut point found at n=" << rep.localcut->level << ": x="
                      << point_to_string(rep.localcut->point) << "\n";
        } else {
            std::cout << "no local cut points at n in {1,2}\n";
        }
    });

    int hata_k = 1;
    std::string hata_format = "dot";
    bool hata_labels = false;
    auto* cmd_hata = app.add_subcommand("hata", "Emit the level-k Hata graph");
    add_input_opts(cmd_hata, c, /*with_format=*/false);
    cmd_hata->add_option("--input-format", c.format, "Input format: auto, grid or json")
        ->check(CLI::IsMember({"auto", "grid", "json"}))
        ->capture_default_str();
    cmd_hata->add_option("--k", hata_k, "Hata graph level")->capture_default_str();
    cmd_hata->add_option("--format", hata_format, "Output format: dot or json")
        ->check(CLI::IsMember({"dot", "json"}))
        ->capture_default_str();
    cmd_hata->add_flag("--labels", hata_labels, "Label singleton edges with their exact point");
    cmd_hata->callback([&] {
        DigitSet ds = read_input(c);
        HataGraph g = build_hata(ds, hata_k, hata_labels, c.jobs);
        std::cout << (hata_format == "dot" ? emit_dot(ds, g) : emit_hata_json(ds, g) + "\n");
    });

    int render_level = 1;
    std::string render_out;
    auto* cmd_render = app.add_subcommand("render", "Rasterize the level-n prefractal");
    add_input_opts(cmd_render, c);
    cmd_render->add_option("--level,-n", render_level, "Prefractal level")->capture_default_str();
    cmd_render->add_option("--out,-o", render_out, "Output file (.pgm or .png; - for PGM on stdout)")
        ->required();
    cmd_render->callback([&] {
        DigitSet ds = read_input(c);
        Raster raster = render_raster(ds, render_level);
        bool png = render_out.size() > 4 &&
                   render_out.compare(render_out.size() - 4, 4, ".png") == 0;
        write_file(render_out, png ? emit_png(raster) : emit_pgm(raster));
    });

    CensusOptions census_opt;
    bool gap_only = false;
    auto* cmd_census = app.add_subcommand("census", "Exhaustive classification of an N x N grid");
    cmd_census->add_option("--n", census_opt.n, "Grid size (exhaustive mode caps at 4)")
        ->required();
    cmd_census->add_flag("--symmetry-reduce", census_opt.symmetry_reduce,
                         "Keep one representative per dihedral orbit");
    cmd_census->add_option("--out", census_opt.out_path,
                           "JSON-lines output file (resumable); stdout when omitted");
    cmd_census->add_option("--jobs,-j", census_opt.jobs, "Worker threads (1 = serial reference)")
        ->capture_default_str();
    cmd_census->add_option("--kmax", census_opt.kmax, "Deepest Hata level per set")
        ->capture_default_str();
    cmd_census->add_flag("--timings", census_opt.timings,
                         "Record real per-set wall time (breaks byte-determinism)");
    cmd_census->add_flag("--assume-bounded-criterion", census_opt.assume_bounded_criterion,
                         "Heuristic cut verdict past kmax");
    cmd_census->add_option("--memcap", c.memcap, "Override the cell-count cap");
    cmd_census->add_flag("--verify-gap", gap_only,
                         "Only verify the connected-cardinality gap, no census file");
    cmd_census->callback([&] {
        if (c.memcap) set_cell_cap(c.memcap);
        if (gap_only) {
            GapReport rep = verify_gap(census_opt.n, census_opt.jobs);
            std::cout << "sets checked: " << rep.sets_checked << "\n"
                      << "connected: " << rep.connected_count << "\n"
                      << "connected cardinalities:";
            for (int s : rep.connected_sizes) std::cout << " " << s;
            std::cout << "\n"
                      << "gap violations: " << rep.gap_violations << "\n"
                      << "line form mismatches: " << rep.line_form_mismatches << "\n"
                      << "ok: " << (rep.ok ? "yes" : "no") << "\n";
            if (!rep.ok) throw internal_error("gap verification failed: " + rep.failure);
            return;
        }
        CensusSummary summary = census_run(census_opt);
        std::cerr << "census: " << summary.records << " records ("
                  << summary.resumed_from << " resumed), " << summary.connected
                  << " connected, " << summary.fragile << " fragile, " << summary.violations
                  << " internal violations\n";
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const carpetlab::internal_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const carpetlab::resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 1;
    } catch (const carpetlab::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
