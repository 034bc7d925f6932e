// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Usage:
//   acceptance <aemt-binary> <fixtures-dir> [--only N]
//   acceptance --calibrate <fixtures-dir>   (regenerates the pilot bands)

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "aemt/io.hpp"
#include "aemt/montecarlo.hpp"
#include "aemt/search.hpp"
#include "aemt/witness.hpp"

using namespace aemt;
using nlohmann::json;

namespace {

int failures = 0;
double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

PointSet random_points(int n, std::uint64_t seed, int grid_bits = 31) {
    GeneratorConfig cfg;
    cfg.n = n;
    cfg.grid_bits = grid_bits;
    cfg.seed = seed;
    return gen_uniform(cfg, 0).points;
}

// ---------------------------------------------------------------- 1 and 2
void criterion_1_2() {
    const double t0 = now_seconds();
    Rng rng(20250101);
    std::uint64_t triangles = 0;
    bool all_equal = true, partition_ok = true;
    for (int inst = 0; inst < 300; ++inst) {
        const int n = 5 + int(rng.below(56)); // 5..60
        const PointSet P = random_points(n, rng.next());
        const BelowTable T = BelowTable::build(P);
        std::vector<std::uint64_t> z(std::size_t(n) - 2, 0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    const TriangleIdx t(i, j, k);
                    const int fast = interior_count_fast(T, P, t);
                    if (fast != interior_count_oracle(P, t)) all_equal = false;
                    ++z[std::size_t(fast)];
                    ++triangles;
                }
        if (std::accumulate(z.begin(), z.end(), std::uint64_t(0)) != binom3(std::uint64_t(n)))
            partition_ok = false;
    }
    const double dt = now_seconds() - t0;
    report(1, all_equal && dt < 120.0,
           "fast == oracle on " + std::to_string(triangles) + " triangles over 300 instances (" +
               decimal12(dt) + "s, target <120s)");
    report(2, partition_ok, "sum_r Z_=r equals C(n,3) on all 300 instances");
}

// ------------------------------------------------------------------ 3
void criterion_3() {
    Rng rng(333);
    bool ok = true;
    std::string fail;
    for (int inst = 0; inst < 50 && ok; ++inst) {
        const int c = 2 + inst % 2;
        const int n = 4 * c * c + int(rng.below(40));
        const PointSet P = random_points(n, rng.next());
        const Coloring phi = random_coloring(n, c, rng.next());
        const WitnessReport r = star_witness(P, phi);
        const auto sizes = class_sizes(phi);
        const std::int64_t p1 = *std::max_element(sizes.begin(), sizes.end());
        const std::int64_t bound = p1 * p1 / (6 * c);
        if (!r.bound_supported || std::int64_t(r.triangles.size()) < bound) {
            ok = false;
            fail = " (failed at instance " + std::to_string(inst) + ")";
        }
        for (const auto& w : r.triangles) {
            if (interior_count_oracle(P, w.tri) != w.interior || w.interior > c - 1 ||
                phi.color_of(w.tri.i) != w.color || phi.color_of(w.tri.j) != w.color ||
                phi.color_of(w.tri.k) != w.color)
                ok = false;
        }
    }
    report(3, ok, "star witness count >= floor(|P1|^2/6c), all triangles oracle-certified" + fail);
}

// ------------------------------------------------------------------ 4
void criterion_4() {
    Rng rng(444);
    bool ok = true;
    int made = 0;
    while (made < 50 && ok) {
        const int c = 2 + made % 2;
        const int n = 12 + int(rng.below(50));
        const PointSet P = random_points(n, rng.next());
        // skewed coloring: color 1 with probability ~0.7
        std::vector<std::uint8_t> cols(std::size_t(n), 0);
        for (auto& v : cols) {
            if (rng.below(10) < 7) v = 1;
            else v = std::uint8_t(1 + rng.below(std::uint64_t(c)));
        }
        const Coloring phi(cols, c);
        const ScaledDiscrepancy d = discrepancy(phi);
        if (!d.exceeds_fraction(4 * (c - 1), c)) continue; // not high-discrepancy; redraw
        ++made;
        const WitnessReport r = discrepancy_witness(P, phi);
        const std::int64_t bound =
            (d.value * n + 6 * std::int64_t(c) * c - 1) / (6 * std::int64_t(c) * c);
        if (std::int64_t(r.triangles.size()) < bound) ok = false;
        for (const auto& w : r.triangles)
            if (w.interior > c - 2) ok = false;
    }
    report(4, ok, "discrepancy witness count >= ceil(delta|S|/6c) on 50 high-discrepancy instances");
}

// ------------------------------------------------------------------ 5
void criterion_5() {
    Rng rng(555);
    bool ok = true;
    std::string detail;
    for (int inst = 0; inst < 100 && ok; ++inst) {
        const int m = inst % 26;
        const std::array<Point, 3> outer{
            {{0, 0},
             {3000 + std::int64_t(rng.below(1000)), std::int64_t(rng.below(100))},
             {std::int64_t(rng.below(1500)), 3000 + std::int64_t(rng.below(1000))}}};
        // rejection-sample inner points, keep the whole set in general position
        std::vector<Point> inner;
        for (std::uint64_t salt = 0; true; ++salt) {
            inner.clear();
            Rng local(rng.next() + salt);
            while (static_cast<int>(inner.size()) < m) {
                const Point p{std::int64_t(local.below(4000)), std::int64_t(local.below(4000))};
                if (strictly_inside(p, outer[0], outer[1], outer[2])) inner.push_back(p);
            }
            std::vector<Point> all(outer.begin(), outer.end());
            all.insert(all.end(), inner.begin(), inner.end());
            if (!validate_general_position(PointSet(all))) break;
        }
        const std::int64_t rt = isqrt_floor(m);
        const int target = int(m + 1 + (rt * rt == m ? rt : rt + 1));
        try {
            const AnchorTriangulation tri = anchor_triangulate(outer, inner);
            verify_triangulation(outer, inner, tri.faces);
            if (static_cast<int>(tri.faces.size()) != 2 * m + 1 || tri.incidence < target) {
                ok = false;
                detail = " (bound missed at m=" + std::to_string(m) + ")";
            }
            if (m <= 10) {
                const AnchorTriangulation ex = anchor_triangulate_exhaustive(outer, inner);
                if (ex.incidence < target) {
                    ok = false;
                    detail = " (exhaustive confirmation failed at m=" + std::to_string(m) + ")";
                }
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string(" (") + e.what() + ")";
        }
    }
    report(5, ok,
           "2m+1-face triangulations with >= ceil(m+sqrt(m)+1) anchor-incident faces, m in [0,25]" +
               detail);
}

// ------------------------------------------------------------------ 6
void criterion_6() {
    Rng rng(666);
    bool ok = true;
    std::string detail;
    for (int inst = 0; inst < 30 && ok; ++inst) {
        const int c = 2 + inst % 2;
        const int n = 50 + int(rng.below(951)); // up to 1000
        const PointSet P = random_points(n, rng.next());
        Coloring phi = random_coloring(n, c, rng.next());
        if (inst % 3 == 1) { // balanced round-robin: drives the deeper branches
            for (int i = 0; i < n; ++i) phi.colors[std::size_t(i)] = std::uint8_t(1 + i % c);
        } else if (inst % 3 == 2) { // heavy color 1
            for (int i = 0; i < n / 2; ++i) phi.colors[std::size_t(i)] = 1;
        }
        try {
            const WitnessReport r = peeling_witness(P, phi);
            for (const auto& w : r.triangles) {
                if (w.interior > c - 2 || interior_count_oracle(P, w.tri) != w.interior) ok = false;
                if (phi.color_of(w.tri.i) != w.color || phi.color_of(w.tri.j) != w.color ||
                    phi.color_of(w.tri.k) != w.color)
                    ok = false;
            }
            // audit: every threshold re-derivable, |P_t| >= floor(n/(c(c+1)))
            const std::int64_t floor_sz = n / (c * (c + 1));
            for (const TraceEntry& e : r.trace) {
                if (e.subset_size < floor_sz) ok = false;
                std::int64_t total = 0, mx = 0;
                for (std::int64_t s : e.class_sizes_current) {
                    total += s;
                    mx = std::max(mx, s);
                }
                if (total != e.subset_size) ok = false;
                for (const ThresholdCheck& ch : e.checks) {
                    if (ch.recompute() != ch.exceeded) ok = false;
                    if (ch.label.rfind("delta(P_t)", 0) == 0 &&
                        ch.value_num != std::int64_t(c) * mx - total)
                        ok = false;
                    if (ch.label.rfind("|V(CH(Q))|", 0) == 0 && ch.value_num != e.hull_size)
                        ok = false;
                }
            }
            if (!ok) detail = " (instance " + std::to_string(inst) + ", n=" + std::to_string(n) + ")";
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string(" (") + e.what() + ")";
        }
    }
    report(6, ok,
           "hull-peeling runs certified and trace-auditable on 30 instances, n up to 1000" + detail);
}

// ------------------------------------------------------------------ 7
void criterion_7() {
    Rng rng(777);
    bool exact_ok = true;
    for (int inst = 0; inst < 20; ++inst) {
        const int c = 2 + inst % 2;
        const int n = 6 + inst % 3; // 6..8
        const PointSet P = random_points(n, rng.next());
        const BelowTable T = BelowTable::build(P);
        for (int s = 0; s <= 2; ++s) {
            const std::uint64_t zle = profile(P, s, T, 1).prefix()[std::size_t(s)];
            std::uint64_t combos = 1;
            for (int i = 0; i < n; ++i) combos *= std::uint64_t(c);
            std::uint64_t total = 0;
            std::vector<std::uint8_t> cols(std::size_t(n), 1);
            for (std::uint64_t code = 0; code < combos; ++code) {
                std::uint64_t x = code;
                for (int i = 0; i < n; ++i) {
                    cols[std::size_t(i)] = std::uint8_t(1 + x % std::uint64_t(c));
                    x /= std::uint64_t(c);
                }
                total += mono_count(P, T, Coloring(cols, c), s);
            }
            // average equals Z_le / c^2  <=>  c^2 * total == Z_le * c^n
            if (total * std::uint64_t(c) * std::uint64_t(c) != zle * combos) exact_ok = false;
        }
    }

    // n = 100, c = 2: sampled mean within 4 sigma of the exact conditional value
    const int n = 100, c = 2, s = 1, trials = 10000;
    const PointSet P = random_points(n, 778899);
    const BelowTable T = BelowTable::build(P);
    const double exact = double(profile(P, s, T, 1).prefix()[s]) / (c * c);
    long double sum = 0, sum2 = 0;
    Rng crng(779);
    for (int t = 0; t < trials; ++t) {
        const double v = double(mono_count(P, T, random_coloring(n, c, crng.next()), s));
        sum += v;
        sum2 += v * v;
    }
    const double mean = double(sum / trials);
    const double sd = double(sqrtl((sum2 - sum * sum / trials) / (trials - 1)));
    const bool sampled_ok = std::fabs(mean - exact) <= 4.0 * sd / std::sqrt(double(trials));

    report(7, exact_ok && sampled_ok,
           "coloring-average identity exact on 20 small sets; n=100 sample within 4 sigma");
}

// ------------------------------------------------------------------ 8
json run_pilot(std::uint64_t seed, int trials) {
    json bands = json::array();
    for (const int n : {64, 128, 256}) {
        GeneratorConfig cfg;
        cfg.n = n;
        cfg.seed = seed;
        cfg.trials = trials;
        cfg.workers = 4;
        const EstimateReport rep = estimate_interior(cfg, 1);
        for (const auto& row : rep.rows) {
            const bool keep = (row.stat == "z_eq" && row.s == 0) ||
                              (row.stat == "z_le" && row.s == 1);
            if (!keep) continue;
            bands.push_back(json{{"n", n},
                                 {"s", row.s},
                                 {"stat", row.stat},
                                 {"mean", row.mean},
                                 {"se", *row.sd / std::sqrt(double(trials))},
                                 {"ci_half", (*row.ci_hi - *row.ci_lo) / 2.0}});
        }
    }
    return json{{"seed", seed}, {"trials", trials}, {"grid_bits", 31}, {"bands", bands}};
}

void criterion_8(const std::string& fixtures) {
    const double t0 = now_seconds();
    std::ifstream f(fixtures + "/pilot_bands.json");
    if (!f.good()) {
        report(8, false, "pilot fixture missing (run: acceptance --calibrate <fixtures-dir>)");
        return;
    }
    json fixture;
    f >> fixture;
    const std::uint64_t seed = fixture["seed"].get<std::uint64_t>();
    const int trials = fixture["trials"].get<int>();
    const json fresh = run_pilot(seed, trials);

    bool bands_ok = true, trend_ok = true;
    // band check: fresh means inside pilot mean +- 3 se
    for (const auto& band : fixture["bands"]) {
        for (const auto& row : fresh["bands"]) {
            if (row["n"] != band["n"] || row["stat"] != band["stat"]) continue;
            const double mean = row["mean"].get<double>();
            const double lo = band["mean"].get<double>() - 3.0 * band["se"].get<double>();
            const double hi = band["mean"].get<double>() + 3.0 * band["se"].get<double>();
            if (mean < lo || mean > hi) bands_ok = false;
        }
    }
    // trend: |mean - 2(s+1)| non-increasing in n within CI overlap
    for (const std::string stat : {"z_eq", "z_le"}) {
        const double target = stat == "z_eq" ? 2.0 : 4.0;
        std::vector<double> dist, ci;
        for (const int n : {64, 128, 256}) {
            for (const auto& row : fresh["bands"]) {
                if (row["n"] == n && row["stat"] == stat) {
                    dist.push_back(std::fabs(row["mean"].get<double>() - target));
                    ci.push_back(row["ci_half"].get<double>());
                }
            }
        }
        for (std::size_t i = 0; i + 1 < dist.size(); ++i)
            if (dist[i + 1] > dist[i] + ci[i] + ci[i + 1]) trend_ok = false;
    }
    const double dt = now_seconds() - t0;
    report(8, bands_ok && trend_ok && dt < 900.0,
           "limit-law means inside pilot bands, distance to 2(s+1) non-increasing (" +
               decimal12(dt) + "s, target <900s)");
}

// ------------------------------------------------------------------ 9
void criterion_9() {
    bool ok = true;
    double worst = 0;
    for (const double lambda : {0.5, 1.0, 2.0, 4.0})
        for (int s = 0; s <= 4; ++s) {
            const double err = gamma_integral_check(lambda, s);
            worst = std::max(worst, err);
            if (err >= 1e-6) ok = false;
        }
    report(9, ok, "gamma-integral quadrature error < 1e-6 on the (s, lambda) grid (worst " +
                      decimal12(worst) + ")");
}

// ----------------------------------------------------------------- 10
void criterion_10() {
    Rng rng(101010);
    bool ok = true;
    int ties = 0;
    for (int inst = 0; inst < 30; ++inst) {
        const int n = 6 + int(rng.below(5)); // 6..10
        const int c = 2 + inst % 2;
        const int s = inst % 2;
        const PointSet P = random_points(n, rng.next());
        const SearchResult ex = exhaustive_min(P, c, s);
        const SearchResult lo = local_min(P, c, s, rng.next(), 8000);
        if (lo.value < ex.value) ok = false;
        if (lo.value == ex.value) ++ties;
        if (mono_count(P, ex.best, s) != ex.value || mono_count(P, lo.best, s) != lo.value)
            ok = false;
    }
    if (ties * 100 < 30 * 80) ok = false;
    report(10, ok,
           "local never beats exhaustive; matched on " + std::to_string(ties) + "/30 instances");
}

// ----------------------------------------------------------------- 11
struct CmdResult {
    int exit_code = -1;
    std::string out;
};

CmdResult run_cmd(const std::string& cmd) {
    CmdResult res;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) return res;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    const int st = pclose(pipe);
    res.exit_code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return res;
}

void criterion_11(const std::string& binary) {
    // fixture: a colored point file with a skewed coloring
    const std::string csv = "/tmp/aemt_acc_points.csv";
    {
        const PointSet P = random_points(24, 112233);
        std::ofstream f(csv);
        f << "x,y,color\n";
        for (int i = 0; i < 24; ++i)
            f << P[i].x << "," << P[i].y << "," << (i < 16 ? 1 : 2) << "\n";
    }
    const std::vector<std::string> commands{
        " --reproducible validate " + csv,
        " --reproducible count " + csv + " --smax 5",
        " --reproducible chroma " + csv + " --s 1",
        " --reproducible witness " + csv + " --mode star",
        " --reproducible witness " + csv + " --mode discrepancy",
        " --reproducible witness " + csv + " --mode thm2",
        " --reproducible --seed 9 simulate --n 24 --trials 4 --smax 1 --colors 2",
        " --reproducible --seed 9 simulate --n 24 --trials 4 --smax 1 --format csv",
        " --reproducible --seed 9 search " + csv + " --colors 2 --s 0 --mode exhaustive",
        " --reproducible --seed 9 search " + csv + " --colors 2 --s 0 --mode local --budget 2000",
    };
    bool ok = true;
    std::string detail;
    for (const auto& cmd : commands) {
        const CmdResult a = run_cmd(binary + " --workers 1" + cmd);
        const CmdResult b = run_cmd(binary + " --workers 1" + cmd);
        const CmdResult c = run_cmd(binary + " --workers 4" + cmd);
        if (a.exit_code != 0 || a.out != b.out || a.out != c.out || a.out.empty()) {
            ok = false;
            detail = " (diverged on:" + cmd + ")";
            break;
        }
    }
    // exit codes: collinear file -> 2, malformed row -> 1
    if (ok) {
        const std::string bad1 = "/tmp/aemt_acc_collinear.csv";
        std::ofstream(bad1) << "0,0\n5,5\n10,10\n3,9\n";
        if (run_cmd(binary + " validate " + bad1).exit_code != 2) {
            ok = false;
            detail = " (collinear file did not exit 2)";
        }
        const std::string bad2 = "/tmp/aemt_acc_malformed.csv";
        std::ofstream(bad2) << "0,0\nnope\n";
        if (ok && run_cmd(binary + " validate " + bad2).exit_code != 1) {
            ok = false;
            detail = " (malformed file did not exit 1)";
        }
    }
    report(11, ok, "CLI byte-identical under --reproducible across reruns and worker counts" + detail);
}

} // namespace

int main(int argc, char** argv) {
    if (argc >= 3 && std::string(argv[1]) == "--calibrate") {
        const json fixture = run_pilot(987654321, 30);
        const std::string path = std::string(argv[2]) + "/pilot_bands.json";
        std::ofstream f(path);
        f << fixture.dump(2) << "\n";
        std::printf("pilot bands written to %s\n", path.c_str());
        return 0;
    }
    if (argc < 3) {
        std::fprintf(stderr, "usage: acceptance <aemt-binary> <fixtures-dir> [--only N]\n");
        return 2;
    }
    const std::string binary = argv[1];
    const std::string fixtures = argv[2];
    int only = 0;
    if (argc >= 5 && std::string(argv[3]) == "--only") only = std::atoi(argv[4]);

    auto want = [&](int k) { return only == 0 || only == k; };
    if (want(1) || want(2)) criterion_1_2();
    if (want(3)) criterion_3();
    if (want(4)) criterion_4();
    if (want(5)) criterion_5();
    if (want(6)) criterion_6();
    if (want(7)) criterion_7();
    if (want(8)) criterion_8(fixtures);
    if (want(9)) criterion_9();
    if (want(10)) criterion_10();
    if (want(11)) criterion_11(binary);

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
