#include "aemt/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace aemt {

namespace {

std::int64_t to_coord(double v, int line) {
    const double r = std::llround(v);
    if (r <= -double(kCoordLimit) || r >= double(kCoordLimit))
        throw parse_error("line " + std::to_string(line) + ": coordinate out of range");
    return std::int64_t(r);
}

bool numeric_token(const std::string& s) {
    if (s.empty()) return false;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

LoadedFile finish(std::vector<Point> pts, std::vector<std::uint8_t> colors, int c,
                  const LoadOptions& opt) {
    LoadedFile out;
    out.points = PointSet(std::move(pts));
    const auto v = validate_general_position(out.points);
    if (v) {
        if (!opt.allow_degenerate) {
            if (v->kind == Violation::Kind::duplicate)
                throw precondition_error("duplicate points at ids " + std::to_string(v->ids[0]) +
                                         "," + std::to_string(v->ids[1]));
            throw precondition_error("collinear points at ids " + std::to_string(v->ids[0]) + "," +
                                     std::to_string(v->ids[1]) + "," + std::to_string(v->ids[2]));
        }
        out.violation = v;
    }
    if (!colors.empty()) {
        if (static_cast<int>(colors.size()) != out.points.size())
            throw parse_error("colors count does not match points count");
        int maxc = 2;
        for (std::uint8_t col : colors) maxc = std::max(maxc, int(col));
        out.coloring = Coloring(std::move(colors), c > 0 ? c : maxc);
    }
    return out;
}

LoadedFile load_json(const std::string& path, const LoadOptions& opt) {
    std::ifstream in(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("json parse: ") + e.what());
    }
    if (!j.contains("points") || !j["points"].is_array())
        throw parse_error("json: missing points array");
    std::vector<Point> pts;
    int line = 0;
    for (const auto& row : j["points"]) {
        ++line;
        if (!row.is_array() || row.size() != 2)
            throw parse_error("json points[" + std::to_string(line - 1) + "]: need [x,y]");
        if (opt.scale) {
            pts.push_back(Point{to_coord(row[0].get<double>() * *opt.scale, line),
                                to_coord(row[1].get<double>() * *opt.scale, line)});
        } else {
            if (!row[0].is_number_integer() || !row[1].is_number_integer())
                throw parse_error("json points[" + std::to_string(line - 1) +
                                  "]: integer coordinates required (use --scale for reals)");
            pts.push_back(Point{to_coord(double(row[0].get<std::int64_t>()), line),
                                to_coord(double(row[1].get<std::int64_t>()), line)});
        }
    }
    std::vector<std::uint8_t> colors;
    if (j.contains("colors"))
        for (const auto& v : j["colors"]) colors.push_back(v.get<std::uint8_t>());
    const int c = j.value("c", 0);
    return finish(std::move(pts), std::move(colors), c, opt);
}

LoadedFile load_csv(const std::string& path, const LoadOptions& opt) {
    std::ifstream in(path);
    std::vector<Point> pts;
    std::vector<std::uint8_t> colors;
    std::string linebuf;
    int line = 0;
    bool saw_color = false;
    while (std::getline(in, linebuf)) {
        ++line;
        // strip comments and whitespace-only lines
        if (auto pos = linebuf.find('#'); pos != std::string::npos) linebuf.erase(pos);
        std::string trimmed;
        for (char ch : linebuf)
            if (!std::isspace(static_cast<unsigned char>(ch))) trimmed.push_back(ch);
        if (trimmed.empty()) continue;

        std::vector<std::string> tok;
        std::stringstream ss(trimmed);
        std::string piece;
        while (std::getline(ss, piece, ',')) tok.push_back(piece);
        if (line == 1 && !tok.empty() && !numeric_token(tok[0])) continue; // header
        if (tok.size() != 2 && tok.size() != 3)
            throw parse_error("line " + std::to_string(line) + ": expected x,y[,color]");
        for (const auto& t : tok)
            if (!numeric_token(t))
                throw parse_error("line " + std::to_string(line) + ": bad number '" + t + "'");
        const double x = std::strtod(tok[0].c_str(), nullptr);
        const double y = std::strtod(tok[1].c_str(), nullptr);
        if (opt.scale) {
            pts.push_back(Point{to_coord(x * *opt.scale, line), to_coord(y * *opt.scale, line)});
        } else {
            if (x != std::floor(x) || y != std::floor(y))
                throw parse_error("line " + std::to_string(line) +
                                  ": integer coordinates required (use --scale for reals)");
            pts.push_back(Point{to_coord(x, line), to_coord(y, line)});
        }
        if (tok.size() == 3) {
            saw_color = true;
            const double col = std::strtod(tok[2].c_str(), nullptr);
            if (col < 1 || col > 255 || col != std::floor(col))
                throw parse_error("line " + std::to_string(line) + ": bad color value");
            colors.push_back(static_cast<std::uint8_t>(col));
        } else if (saw_color) {
            throw parse_error("line " + std::to_string(line) + ": missing color column");
        }
    }
    return finish(std::move(pts), std::move(colors), 0, opt);
}

} // namespace

LoadedFile load_points(const std::string& path, const LoadOptions& opt) {
    std::ifstream probe(path);
    if (!probe.good()) throw parse_error("cannot open " + path);
    char first = 0;
    probe >> first;
    if (first == '{') return load_json(path, opt);
    return load_csv(path, opt);
}

std::string decimal12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

nlohmann::json to_json(const Violation& v) {
    nlohmann::json j;
    j["kind"] = v.kind == Violation::Kind::duplicate ? "duplicate" : "collinear";
    j["ids"] = v.kind == Violation::Kind::duplicate
                   ? std::vector<int>{v.ids[0], v.ids[1]}
                   : std::vector<int>{v.ids[0], v.ids[1], v.ids[2]};
    return j;
}

nlohmann::json to_json(const InteriorProfile& p) {
    nlohmann::json j;
    j["n"] = p.n;
    j["r_max"] = p.r_max;
    j["z_eq"] = p.z;
    j["z_le"] = p.prefix();
    return j;
}

nlohmann::json to_json(const ThresholdCheck& c) {
    nlohmann::json j;
    j["label"] = c.label;
    j["cuberoot"] = c.cuberoot;
    j["value_num"] = c.value_num;
    j["value_den"] = c.value_den;
    j["coeff_num"] = c.coeff_num;
    j["coeff_den"] = c.coeff_den;
    if (c.cuberoot) j["n"] = c.n;
    j["exceeded"] = c.exceeded;
    return j;
}

nlohmann::json to_json(const TraceEntry& e) {
    nlohmann::json j;
    j["step"] = e.step;
    j["branch"] = e.branch;
    j["class_sizes"] = e.class_sizes_current;
    j["subset_size"] = e.subset_size;
    if (e.peeled_size >= 0) {
        j["peeled_class_sizes"] = e.class_sizes_peeled;
        j["peeled_size"] = e.peeled_size;
    }
    if (e.hull_size >= 0) j["hull_size"] = e.hull_size;
    if (e.region >= 0) j["region"] = e.region;
    if (e.removed_id >= 0) j["removed_id"] = e.removed_id;
    if (!e.note.empty()) j["note"] = e.note;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : e.checks) checks.push_back(to_json(c));
    j["checks"] = checks;
    return j;
}

nlohmann::json to_json(const WitnessReport& r) {
    nlohmann::json j;
    j["mode"] = r.mode;
    j["n"] = r.n;
    j["c"] = r.c;
    j["s_cap"] = r.s_cap;
    if (!r.universe.empty()) j["universe"] = r.universe;
    nlohmann::json tris = nlohmann::json::array();
    for (const auto& w : r.triangles) {
        tris.push_back(nlohmann::json{{"i", w.tri.i},
                                      {"j", w.tri.j},
                                      {"k", w.tri.k},
                                      {"color", w.color},
                                      {"interior", w.interior}});
    }
    j["triangles"] = tris;
    j["certified_count"] = r.triangles.size();
    j["claimed_bound"] = r.claimed_bound;
    j["bound_supported"] = r.bound_supported;
    if (!r.bound_note.empty()) j["bound_note"] = r.bound_note;
    nlohmann::json tr = nlohmann::json::array();
    for (const auto& e : r.trace) tr.push_back(to_json(e));
    j["trace"] = tr;
    return j;
}

nlohmann::json to_json(const EstimateRow& row) {
    nlohmann::json j;
    j["n"] = row.n;
    j["s"] = row.s;
    j["stat"] = row.stat;
    j["trials"] = row.trials;
    j["mean"] = decimal12(row.mean);
    j["sd"] = row.sd ? nlohmann::json(decimal12(*row.sd)) : nlohmann::json();
    j["ci_lo"] = row.ci_lo ? nlohmann::json(decimal12(*row.ci_lo)) : nlohmann::json();
    j["ci_hi"] = row.ci_hi ? nlohmann::json(decimal12(*row.ci_hi)) : nlohmann::json();
    j["seed"] = row.seed;
    j["per_trial"] = row.per_trial;
    return j;
}

nlohmann::json to_json(const EstimateReport& rep) {
    nlohmann::json j;
    j["config"] = {{"n", rep.config.n},
                   {"grid_bits", rep.config.grid_bits},
                   {"seed", rep.config.seed},
                   {"trials", rep.config.trials}};
    if (rep.c > 0) j["c"] = rep.c;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows) rows.push_back(to_json(r));
    j["rows"] = rows;
    j["resamples_per_trial"] = rep.resamples_per_trial;
    return j;
}

nlohmann::json to_json(const SearchResult& res) {
    nlohmann::json j;
    j["coloring"] = coloring_string(res.best);
    j["value"] = res.value;
    j["method"] = res.method;
    j["iterations"] = res.iterations;
    j["seed"] = res.seed;
    j["budget"] = res.budget;
    j["certified"] = res.certified;
    return j;
}

nlohmann::json to_json(const BoundReport& rep) {
    nlohmann::json j;
    j["n"] = rep.n;
    j["c"] = rep.c;
    j["s"] = rep.s;
    j["local"] = to_json(rep.local);
    if (rep.exhaustive) j["exhaustive"] = to_json(*rep.exhaustive);
    j["mono_at_searched_smax_c_minus_1"] = rep.mono_star_cap;
    j["star_certified"] = rep.star_certified;
    j["star_supported"] = rep.star_supported;
    if (rep.discrepancy_certified) {
        j["discrepancy_certified"] = *rep.discrepancy_certified;
        j["discrepancy_claimed"] = *rep.discrepancy_claimed;
    }
    return j;
}

std::string coloring_string(const Coloring& phi) {
    // digits 1-9 then letters for higher colors
    static const char* alphabet = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string out;
    out.reserve(phi.colors.size());
    for (std::uint8_t v : phi.colors) {
        if (v > 35) throw precondition_error("coloring_string: c too large for digit string");
        out.push_back(alphabet[v]);
    }
    return out;
}

Coloring parse_coloring(const std::string& text, int c) {
    std::vector<std::uint8_t> cols;
    cols.reserve(text.size());
    int maxc = 2;
    for (char ch : text) {
        int v;
        if (ch >= '1' && ch <= '9') v = ch - '0';
        else if (ch >= 'a' && ch <= 'z') v = 10 + ch - 'a';
        else throw parse_error(std::string("bad coloring character '") + ch + "'");
        maxc = std::max(maxc, v);
        cols.push_back(static_cast<std::uint8_t>(v));
    }
    return Coloring(std::move(cols), c > 0 ? c : maxc);
}

std::string estimate_csv(const EstimateReport& rep) {
    std::string out = "n,s,stat,trials,mean,sd,ci_lo,ci_hi,seed\n";
    for (const auto& r : rep.rows) {
        out += std::to_string(r.n) + "," + std::to_string(r.s) + "," + r.stat + "," +
               std::to_string(r.trials) + "," + decimal12(r.mean) + ",";
        out += (r.sd ? decimal12(*r.sd) : "") + std::string(",");
        out += (r.ci_lo ? decimal12(*r.ci_lo) : "") + std::string(",");
        out += (r.ci_hi ? decimal12(*r.ci_hi) : "") + std::string(",");
        out += std::to_string(r.seed) + "\n";
    }
    return out;
}

} // namespace aemt
