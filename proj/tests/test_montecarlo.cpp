#include <doctest.h>

#include <cmath>
#include <numeric>

#include "aemt/montecarlo.hpp"
#include "oracles.hpp"

using namespace aemt;

TEST_CASE("gen_uniform determinism and validity") {
    GeneratorConfig cfg;
    cfg.n = 50;
    cfg.seed = 9;
    const GeneratedSet a = gen_uniform(cfg, 3);
    const GeneratedSet b = gen_uniform(cfg, 3);
    CHECK(a.points.points() == b.points.points());
    CHECK(gen_uniform(cfg, 4).points.points() != a.points.points());
    CHECK_FALSE(validate_general_position(a.points));

    cfg.n = 3;
    for (int t = 0; t < 20; ++t) CHECK_FALSE(validate_general_position(gen_uniform(cfg, t).points));
}

TEST_CASE("gen_uniform coordinate mean sits at the grid midpoint") {
    GeneratorConfig cfg;
    cfg.n = 1000;
    cfg.seed = 77;
    long double sum = 0;
    const int trials = 100; // 1e5 samples total
    for (int t = 0; t < trials; ++t) {
        const GeneratedSet g = gen_uniform(cfg, t);
        for (const Point& p : g.points.points()) sum += static_cast<long double>(p.x);
    }
    const double samples = double(cfg.n) * trials;
    const double range = std::pow(2.0, 31);
    const double mean = double(sum / samples);
    const double sigma = range / std::sqrt(12.0) / std::sqrt(samples);
    CHECK(std::fabs(mean - (range - 1) / 2.0) <= 4.0 * sigma);
}

TEST_CASE("estimate_interior report structure and determinism") {
    GeneratorConfig cfg;
    cfg.n = 32;
    cfg.trials = 5;
    cfg.seed = 101;
    const EstimateReport a = estimate_interior(cfg, 1);
    REQUIRE(a.rows.size() == 4); // (z_eq, z_le) x (s=0,1)
    for (const auto& row : a.rows) {
        CHECK(row.trials == 5);
        CHECK(row.sd.has_value());
        const double half = 1.96 * *row.sd / std::sqrt(5.0);
        CHECK(*row.ci_hi - row.mean == doctest::Approx(half));
    }

    const EstimateReport b = estimate_interior(cfg, 1);
    for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].per_trial == b.rows[i].per_trial);

    cfg.workers = 4;
    const EstimateReport c = estimate_interior(cfg, 1);
    for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].per_trial == c.rows[i].per_trial);

    cfg.workers = 1;
    cfg.trials = 1;
    const EstimateReport single = estimate_interior(cfg, 0);
    CHECK_FALSE(single.rows[0].sd.has_value()); // sd undefined at one trial
    CHECK_FALSE(single.rows[0].ci_lo.has_value());
}

TEST_CASE("per-trial profiles satisfy the partition identity") {
    GeneratorConfig cfg;
    cfg.n = 20;
    cfg.trials = 6;
    cfg.seed = 55;
    for (int t = 0; t < cfg.trials; ++t) {
        const GeneratedSet g = gen_uniform(cfg, t);
        const auto prof = profile(g.points, cfg.n - 3);
        CHECK(std::accumulate(prof.z.begin(), prof.z.end(), std::uint64_t(0)) ==
              binom3(std::uint64_t(cfg.n)));
    }
}

TEST_CASE("estimate_mono tracks Z_le / c^2 on shared seeds") {
    GeneratorConfig cfg;
    cfg.n = 48;
    cfg.trials = 12;
    cfg.seed = 2024;
    const int c = 2, s = 0;
    const EstimateReport zs = estimate_interior(cfg, s);
    const EstimateReport ms = estimate_mono(cfg, c, s);
    const EstimateRow* zle = nullptr;
    for (const auto& row : zs.rows)
        if (row.stat == "z_le" && row.s == s) zle = &row;
    REQUIRE(zle);
    const EstimateRow& mono = ms.rows[0];
    // conditional identity: E[mono | P] = Z_le / 4; with the same point
    // streams the means must sit within joint CI width
    const double half = (*zle->ci_hi - *zle->ci_lo) / 2 + (*mono.ci_hi - *mono.ci_lo) / 2;
    CHECK(std::fabs(mono.mean - zle->mean / (c * c)) <= half + 1e-12);
}

TEST_CASE("fixed point set: sampled coloring mean within 4 sigma of exact") {
    const PointSet P = oracles::random_instance(60, 31415);
    const BelowTable T = BelowTable::build(P);
    const int c = 2, s = 1, trials = 10000;
    const double exact = double(profile(P, s, T, 1).prefix()[s]) / (c * c);
    long double sum = 0, sum2 = 0;
    Rng rng(917);
    for (int t = 0; t < trials; ++t) {
        const double v = double(mono_count(P, T, random_coloring(60, c, rng.next()), s));
        sum += v;
        sum2 += v * v;
    }
    const double mean = double(sum / trials);
    const double sd = double(sqrtl((sum2 - sum * sum / trials) / (trials - 1)));
    CHECK(std::fabs(mean - exact) <= 4.0 * sd / std::sqrt(double(trials)));
}

TEST_CASE("gamma integral identity") {
    // closed forms: s=0,l=2 -> 2; s=1,l=2 -> 2; s=3,l=1 -> 192
    CHECK(gamma_integral_check(2.0, 0) < 1e-6);
    CHECK(gamma_integral_check(2.0, 1) < 1e-6);
    CHECK(gamma_integral_check(1.0, 3) < 1e-6);
    for (const double lambda : {0.5, 1.0, 2.0, 4.0})
        for (int s = 0; s <= 4; ++s) CHECK(gamma_integral_check(lambda, s) < 1e-6);
}

TEST_CASE("ratio of prefix means approaches s+1") {
    GeneratorConfig cfg;
    cfg.n = 64;
    cfg.trials = 10;
    cfg.seed = 12321;
    const EstimateReport rep = estimate_interior(cfg, 1);
    double z0 = 0, z1 = 0;
    for (const auto& row : rep.rows) {
        if (row.stat == "z_le" && row.s == 0) z0 = row.mean;
        if (row.stat == "z_le" && row.s == 1) z1 = row.mean;
    }
    const double ratio = z1 / z0;
    CHECK(ratio > 1.5);
    CHECK(ratio < 2.2);
}

TEST_CASE("convergence table shape and ratio trend") {
    GeneratorConfig base;
    base.trials = 8;
    base.seed = 321;
    const auto rows = convergence_table({24, 40}, 2, base);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        REQUIRE(row.distance_to_limit.size() == 3); // targets 2, 4, 6
        CHECK(row.report.rows.size() == 6);
    }
    CHECK_THROWS_AS(convergence_table({40, 24}, 0, base), precondition_error);
}
