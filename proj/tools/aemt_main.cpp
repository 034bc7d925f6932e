// aemt - almost-empty monochromatic triangle toolkit
//
// Subcommands: validate, count, chroma, witness, simulate, search.
// Exit codes: 0 ok, 1 usage/parse, 2 validation, 3 precondition,
// 4 internal assertion.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <cmath>
#include <sstream>

#include <CLI11.hpp>

#include "aemt/io.hpp"

using namespace aemt;

namespace {

struct Global {
    bool reproducible = false;
    int workers = 1;
    std::uint64_t seed = 12345;
    std::string out;
};

void emit(const Global& g, nlohmann::json j) {
    if (!g.reproducible) {
        const auto now = std::chrono::system_clock::now();
        const std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
        j["timestamp"] = buf;
    }
    const std::string text = j.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(g.out);
        f << text;
    }
}

void emit_text(const Global& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(g.out);
        f << text;
    }
}

Coloring require_coloring(const LoadedFile& file, const std::string& inline_coloring, int c) {
    if (!inline_coloring.empty()) return parse_coloring(inline_coloring, c);
    if (file.coloring) {
        if (c > 0 && c != file.coloring->c)
            return Coloring(file.coloring->colors, c);
        return *file.coloring;
    }
    throw precondition_error("no coloring: provide a color column or --coloring");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"almost-empty monochromatic triangle toolkit"};
    app.require_subcommand(1);

    Global g;
    if (const char* env = std::getenv("AEMT_SEED")) g.seed = std::strtoull(env, nullptr, 10);
    app.add_flag("--reproducible", g.reproducible, "suppress the timestamp field");
    app.add_option("--workers", g.workers, "worker threads (output is identical for any count)");
    app.add_option("--seed", g.seed, "default seed (env AEMT_SEED)");
    app.add_option("--out", g.out, "write output to a file instead of stdout");

    LoadOptions load_opt;
    double scale = 0.0;

    // validate
    std::string v_file;
    auto* cmd_validate = app.add_subcommand("validate", "check a point file");
    cmd_validate->add_option("file", v_file)->required();
    bool allow_degenerate = false;
    cmd_validate->add_flag("--allow-degenerate", allow_degenerate);

    // count
    std::string c_file;
    int c_smax = -1;
    auto* cmd_count = app.add_subcommand("count", "interior-count profile Z_=r / Z_<=r");
    cmd_count->add_option("file", c_file)->required();
    cmd_count->add_option("--smax", c_smax, "largest r (default n-3)");

    // chroma
    std::string h_file, h_coloring;
    int h_colors = 0, h_s = 0;
    auto* cmd_chroma = app.add_subcommand("chroma", "monochromatic almost-empty count");
    cmd_chroma->add_option("file", h_file)->required();
    cmd_chroma->add_option("--colors", h_colors, "number of colors");
    cmd_chroma->add_option("--s", h_s)->required();
    cmd_chroma->add_option("--coloring", h_coloring, "inline coloring string");

    // witness
    std::string w_file, w_mode, w_coloring;
    int w_colors = 0;
    auto* cmd_witness = app.add_subcommand("witness", "certified witness runs");
    cmd_witness->add_option("file", w_file)->required();
    cmd_witness->add_option("--mode", w_mode, "star | discrepancy | thm2")->required();
    cmd_witness->add_option("--colors", w_colors);
    cmd_witness->add_option("--coloring", w_coloring, "inline coloring string");

    // simulate
    std::string s_ns = "64";
    int s_trials = 10, s_smax = 0, s_colors = 0, s_grid_bits = 31;
    std::string s_format = "json";
    auto* cmd_simulate = app.add_subcommand("simulate", "random point-set statistics");
    cmd_simulate->add_option("--n", s_ns, "points per trial, comma list for a table");
    cmd_simulate->add_option("--trials", s_trials);
    cmd_simulate->add_option("--smax", s_smax);
    cmd_simulate->add_option("--colors", s_colors, "also estimate the monochromatic count");
    cmd_simulate->add_option("--grid-bits", s_grid_bits);
    cmd_simulate->add_option("--format", s_format, "json | csv");

    // search
    std::string x_file, x_mode = "local";
    int x_colors = 0, x_s = 0;
    std::uint64_t x_budget = 20000;
    auto* cmd_search = app.add_subcommand("search", "minimum over colorings");
    cmd_search->add_option("file", x_file)->required();
    cmd_search->add_option("--colors", x_colors)->required();
    cmd_search->add_option("--s", x_s)->required();
    cmd_search->add_option("--mode", x_mode, "exhaustive | local");
    cmd_search->add_option("--budget", x_budget);

    for (auto* sub : {cmd_validate, cmd_count, cmd_chroma, cmd_witness, cmd_search})
        sub->add_option("--scale", scale, "multiply real coordinates onto the integer grid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        std::cerr << e.what() << "\n";
        return 1;
    }
    if (scale != 0.0) load_opt.scale = scale;

    try {
        if (*cmd_validate) {
            load_opt.allow_degenerate = true;
            const LoadedFile file = load_points(v_file, load_opt);
            nlohmann::json j;
            j["n"] = file.points.size();
            j["valid"] = !file.violation.has_value();
            if (file.violation) j["violation"] = to_json(*file.violation);
            if (!file.violation && file.points.size() >= 3)
                j["hull_size"] = convex_hull(file.points).size();
            emit(g, j);
            if (file.violation && !allow_degenerate) return 2;
            return 0;
        }

        if (*cmd_count) {
            const LoadedFile file = load_points(c_file, load_opt);
            const int n = file.points.size();
            const int r_max = c_smax < 0 ? std::max(0, n - 3) : c_smax;
            CountOptions copt;
            copt.workers = g.workers;
            emit(g, to_json(profile(file.points, r_max, copt)));
            return 0;
        }

        if (*cmd_chroma) {
            const LoadedFile file = load_points(h_file, load_opt);
            const Coloring phi = require_coloring(file, h_coloring, h_colors);
            const auto sizes = class_sizes(phi);
            const auto d = discrepancy(phi);
            nlohmann::json j;
            j["n"] = file.points.size();
            j["c"] = phi.c;
            j["s"] = h_s;
            j["mono_count"] = mono_count(file.points, phi, h_s);
            j["class_sizes"] = sizes;
            j["scaled_discrepancy"] = d.value;
            emit(g, j);
            return 0;
        }

        if (*cmd_witness) {
            const LoadedFile file = load_points(w_file, load_opt);
            const Coloring phi = require_coloring(file, w_coloring, w_colors);
            WitnessReport rep;
            if (w_mode == "star") rep = star_witness(file.points, phi);
            else if (w_mode == "discrepancy") rep = discrepancy_witness(file.points, phi);
            else if (w_mode == "thm2") {
                PeelingOptions popt;
                popt.workers = g.workers;
                rep = peeling_witness(file.points, phi, popt);
            } else throw precondition_error("witness: unknown mode " + w_mode);
            emit(g, to_json(rep));
            return 0;
        }

        if (*cmd_simulate) {
            std::vector<int> ns;
            std::stringstream ss(s_ns);
            std::string piece;
            while (std::getline(ss, piece, ',')) ns.push_back(std::stoi(piece));
            GeneratorConfig cfg;
            cfg.grid_bits = s_grid_bits;
            cfg.seed = g.seed;
            cfg.trials = s_trials;
            cfg.workers = g.workers;

            nlohmann::json all = nlohmann::json::array();
            std::string csv;
            for (int n : ns) {
                cfg.n = n;
                EstimateReport rep = estimate_interior(cfg, s_smax);
                if (s_colors >= 2) {
                    EstimateReport mono = estimate_mono(cfg, s_colors, s_smax);
                    for (auto& row : mono.rows) rep.rows.push_back(std::move(row));
                    rep.c = s_colors;
                }
                if (s_format == "csv") {
                    const std::string chunk = estimate_csv(rep);
                    csv += csv.empty() ? chunk : chunk.substr(chunk.find('\n') + 1);
                } else {
                    nlohmann::json jrep = to_json(rep);
                    nlohmann::json dist = nlohmann::json::array();
                    for (const auto& row : rep.rows)
                        if (row.stat == "z_le")
                            dist.push_back(nlohmann::json{
                                {"s", row.s},
                                {"target", 2 * (row.s + 1)},
                                {"distance",
                                 decimal12(std::fabs(row.mean - 2.0 * (row.s + 1)))}});
                    jrep["distance_to_limit"] = dist;
                    all.push_back(jrep);
                }
            }
            if (s_format == "csv") emit_text(g, csv);
            else emit(g, nlohmann::json{{"reports", all}});
            return 0;
        }

        if (*cmd_search) {
            const LoadedFile file = load_points(x_file, load_opt);
            SearchResult res;
            if (x_mode == "exhaustive") res = exhaustive_min(file.points, x_colors, x_s);
            else if (x_mode == "local")
                res = local_min(file.points, x_colors, x_s, g.seed, x_budget);
            else throw precondition_error("search: unknown mode " + x_mode);
            if (x_mode == "local") res.seed = g.seed;
            emit(g, to_json(res));
            return 0;
        }
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const precondition_error& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 3;
    } catch (const internal_check_error& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
