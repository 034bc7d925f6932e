#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "aemt/io.hpp"
#include "oracles.hpp"

using namespace aemt;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("/tmp/aemt_test_" + name) {
        std::ofstream f(path);
        f << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("csv loading with header and colors") {
    TempFile f("a.csv", "x,y,color\n0,0,1\n10,0,2\n3,8,1\n7,7,2\n");
    const LoadedFile file = load_points(f.path);
    CHECK(file.points.size() == 4);
    REQUIRE(file.coloring.has_value());
    CHECK(file.coloring->c == 2);
    CHECK(file.coloring->color_of(1) == 2);
}

TEST_CASE("csv parse errors carry line numbers") {
    TempFile f("b.csv", "0,0\n1,zzz\n");
    CHECK_THROWS_WITH_AS(load_points(f.path), doctest::Contains("line 2"), parse_error);

    TempFile g("c.csv", "0,0\n1.5,2\n");
    CHECK_THROWS_AS(load_points(g.path), parse_error); // reals need --scale

    LoadOptions scaled;
    scaled.scale = 10.0;
    const LoadedFile ok = load_points(g.path, scaled);
    CHECK(ok.points[1] == Point{15, 20});
}

TEST_CASE("validation runs at load time") {
    TempFile f("d.csv", "0,0\n1,1\n2,2\n9,0\n");
    CHECK_THROWS_WITH_AS(load_points(f.path), doctest::Contains("collinear"), precondition_error);

    LoadOptions opt;
    opt.allow_degenerate = true;
    const LoadedFile file = load_points(f.path, opt);
    REQUIRE(file.violation.has_value());
    CHECK(file.violation->kind == Violation::Kind::collinear);
}

TEST_CASE("json loading") {
    TempFile f("e.json", R"({"points": [[0,0],[9,1],[3,8],[5,2]], "colors": [1,2,1,2], "c": 2})");
    const LoadedFile file = load_points(f.path);
    CHECK(file.points.size() == 4);
    REQUIRE(file.coloring.has_value());
    CHECK(file.coloring->c == 2);

    TempFile bad("f.json", R"({"points": [[0,0],[1]]})");
    CHECK_THROWS_AS(load_points(bad.path), parse_error);
}

TEST_CASE("coloring strings round-trip") {
    const Coloring phi = parse_coloring("1213121", 3);
    CHECK(phi.c == 3);
    CHECK(coloring_string(phi) == "1213121");
    CHECK_THROWS_AS(parse_coloring("10x", 2), parse_error);
}

TEST_CASE("decimal12 formatting") {
    CHECK(decimal12(2.0) == "2");
    CHECK(decimal12(0.125) == "0.125");
    CHECK(decimal12(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("witness report serializes with auditable checks") {
    const PointSet P = oracles::random_instance(12, 919);
    const Coloring phi = Coloring(std::vector<std::uint8_t>(12, 1), 2);
    const WitnessReport r = peeling_witness(P, phi);
    const nlohmann::json j = to_json(r);
    CHECK(j["mode"] == "thm2");
    CHECK(j["certified_count"] == r.triangles.size());
    REQUIRE(j["trace"].is_array());
    const auto& checks = j["trace"][0]["checks"];
    REQUIRE(checks.size() > 0);
    // the logged integers are all a reader needs to re-run the comparison
    const auto& ch = checks[0];
    ThresholdCheck redo;
    redo.cuberoot = ch["cuberoot"].get<bool>();
    redo.value_num = ch["value_num"].get<std::int64_t>();
    redo.value_den = ch["value_den"].get<std::int64_t>();
    redo.coeff_num = ch["coeff_num"].get<std::int64_t>();
    redo.coeff_den = ch["coeff_den"].get<std::int64_t>();
    redo.n = ch.value("n", std::int64_t(0));
    CHECK(redo.recompute() == ch["exceeded"].get<bool>());
}

TEST_CASE("estimate csv layout") {
    GeneratorConfig cfg;
    cfg.n = 16;
    cfg.trials = 3;
    cfg.seed = 5;
    const EstimateReport rep = estimate_interior(cfg, 0);
    const std::string csv = estimate_csv(rep);
    CHECK(csv.rfind("n,s,stat,trials,mean,sd,ci_lo,ci_hi,seed\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3); // header + 2 rows
}
