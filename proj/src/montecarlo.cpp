#include "aemt/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>
#include <unordered_set>

#include "aemt/rng.hpp"

namespace aemt {

namespace {

constexpr std::int64_t kResampleLimit = 1'000'000;

struct TrialCounts {
    std::vector<std::uint64_t> z_eq; // per s
    std::vector<std::uint64_t> z_le;
    std::uint64_t mono = 0;
    std::int64_t resamples = 0;
};

void fill_stats(EstimateRow& row) {
    const int T = row.trials;
    const double nn = double(row.n) * double(row.n);
    long double sum = 0.0L, sum2 = 0.0L;
    for (std::uint64_t v : row.per_trial) {
        sum += static_cast<long double>(v);
        sum2 += static_cast<long double>(v) * static_cast<long double>(v);
    }
    row.mean = double(sum / T) / nn;
    if (T >= 2) {
        const long double var = (sum2 - sum * sum / T) / (T - 1);
        const double sd = double(sqrtl(var < 0 ? 0 : var)) / nn;
        row.sd = sd;
        const double half = 1.96 * sd / std::sqrt(double(T));
        row.ci_lo = row.mean - half;
        row.ci_hi = row.mean + half;
    }
}

void run_trials(int trials, int workers, const std::function<void(int)>& fn) {
    workers = std::max(1, std::min(workers, trials));
    if (workers == 1) {
        for (int t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const int t = next.fetch_add(1);
                if (t >= trials) return;
                fn(t);
            }
        });
    for (auto& th : pool) th.join();
}

} // namespace

GeneratedSet gen_uniform(const GeneratorConfig& cfg, int trial) {
    if (cfg.grid_bits < 1 || cfg.grid_bits > 31)
        throw precondition_error("gen_uniform: grid_bits must be in 1..31");
    if (cfg.n < 3) throw precondition_error("gen_uniform: n must be at least 3");

    Rng rng = Rng::stream(cfg.seed, std::uint64_t(trial));
    const std::uint64_t mask = (std::uint64_t(1) << cfg.grid_bits) - 1;
    auto draw = [&]() -> Point {
        const std::uint64_t w = rng.next();
        return Point{std::int64_t(w & mask), std::int64_t((w >> 32) & mask)};
    };

    std::int64_t resamples = 0;
    std::vector<Point> pts;
    pts.reserve(std::size_t(cfg.n));
    std::unordered_set<std::uint64_t> used;
    auto key = [&](const Point& p) {
        return (std::uint64_t(p.x) << 32) | std::uint64_t(p.y);
    };
    while (static_cast<int>(pts.size()) < cfg.n) {
        const Point p = draw();
        if (!used.insert(key(p)).second) {
            if (++resamples > kResampleLimit)
                throw precondition_error("gen_uniform: resample limit hit, grid too coarse");
            continue;
        }
        pts.push_back(p);
    }

    // fix collinear triples by resampling one offender at a time
    for (;;) {
        PointSet cand(pts);
        const auto v = validate_general_position(cand);
        if (!v) return GeneratedSet{std::move(cand), resamples};
        if (++resamples > kResampleLimit)
            throw precondition_error("gen_uniform: resample limit hit, grid too coarse");
        const int victim =
            v->kind == Violation::Kind::duplicate ? v->ids[1] : v->ids[2];
        used.erase(key(pts[std::size_t(victim)]));
        for (;;) {
            const Point p = draw();
            if (used.insert(key(p)).second) {
                pts[std::size_t(victim)] = p;
                break;
            }
            if (++resamples > kResampleLimit)
                throw precondition_error("gen_uniform: resample limit hit, grid too coarse");
        }
    }
}

EstimateReport estimate_interior(const GeneratorConfig& cfg, int s_max) {
    if (cfg.trials < 1) throw precondition_error("estimate_interior: need at least one trial");
    if (s_max < 0 || s_max > cfg.n - 3)
        throw precondition_error("estimate_interior: s_max out of range");
    EstimateReport rep;
    rep.config = cfg;
    rep.resamples_per_trial.assign(std::size_t(cfg.trials), 0);

    std::vector<TrialCounts> per{std::size_t(cfg.trials)};
    run_trials(cfg.trials, cfg.workers, [&](int t) {
        GeneratedSet g = gen_uniform(cfg, t);
        const InteriorProfile prof = profile(g.points, s_max);
        TrialCounts tc;
        tc.z_eq = prof.z;
        tc.z_le = prof.prefix();
        tc.resamples = g.resamples;
        per[std::size_t(t)] = std::move(tc);
    });

    for (int t = 0; t < cfg.trials; ++t)
        rep.resamples_per_trial[std::size_t(t)] = per[std::size_t(t)].resamples;
    for (int s = 0; s <= s_max; ++s) {
        for (const char* stat : {"z_eq", "z_le"}) {
            EstimateRow row;
            row.n = cfg.n;
            row.s = s;
            row.stat = stat;
            row.trials = cfg.trials;
            row.seed = cfg.seed;
            for (int t = 0; t < cfg.trials; ++t) {
                const TrialCounts& tc = per[std::size_t(t)];
                row.per_trial.push_back(row.stat == "z_eq" ? tc.z_eq[std::size_t(s)]
                                                           : tc.z_le[std::size_t(s)]);
            }
            fill_stats(row);
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

EstimateReport estimate_mono(const GeneratorConfig& cfg, int c, int s) {
    if (cfg.trials < 1) throw precondition_error("estimate_mono: need at least one trial");
    if (c < 2) throw precondition_error("estimate_mono: need c >= 2");
    EstimateReport rep;
    rep.config = cfg;
    rep.c = c;
    rep.resamples_per_trial.assign(std::size_t(cfg.trials), 0);

    std::vector<TrialCounts> per{std::size_t(cfg.trials)};
    run_trials(cfg.trials, cfg.workers, [&](int t) {
        GeneratedSet g = gen_uniform(cfg, t);
        // independent color stream per trial
        Rng color_rng = Rng::stream(cfg.seed ^ 0xc01075ull, std::uint64_t(t));
        const Coloring phi = random_coloring(cfg.n, c, color_rng.next());
        TrialCounts tc;
        tc.mono = mono_count(g.points, phi, s);
        tc.resamples = g.resamples;
        per[std::size_t(t)] = std::move(tc);
    });

    for (int t = 0; t < cfg.trials; ++t)
        rep.resamples_per_trial[std::size_t(t)] = per[std::size_t(t)].resamples;
    EstimateRow row;
    row.n = cfg.n;
    row.s = s;
    row.stat = "mono";
    row.trials = cfg.trials;
    row.seed = cfg.seed;
    for (int t = 0; t < cfg.trials; ++t) row.per_trial.push_back(per[std::size_t(t)].mono);
    fill_stats(row);
    rep.rows.push_back(std::move(row));
    return rep;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0) throw precondition_error("gamma_integral_check: quadrature did not converge");
    if (std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

double gamma_integral_check(double lambda, int s) {
    if (lambda <= 0) throw precondition_error("gamma_integral_check: lambda must be positive");
    if (s < 0) throw precondition_error("gamma_integral_check: s must be non-negative");

    // even integrand: 2 * int_0^Z z^s e^{-lambda z / 2} dz, tail below 1e-12
    const double Z = (2.0 / lambda) * (50.0 + 10.0 * s);
    auto f = [&](double z) { return std::pow(z, s) * std::exp(-0.5 * lambda * z); };

    double closed = 2.0;
    for (int k = 1; k <= s; ++k) closed *= k;           // s!
    closed *= std::pow(2.0, s + 1) / std::pow(lambda, s + 1); // 2^{s+2} s! / lambda^{s+1}

    const double fa = f(0.0), fb = f(Z), fm = f(0.5 * Z);
    const double whole = Z / 6.0 * (fa + 4.0 * fm + fb);
    const double numeric =
        2.0 * adaptive_simpson(f, 0.0, Z, fa, fm, fb, whole, 1e-12 * closed, 60);
    return std::fabs(numeric - closed) / closed;
}

std::vector<ConvergenceRow> convergence_table(const std::vector<int>& ns, int s_max,
                                              const GeneratorConfig& base) {
    for (std::size_t i = 0; i + 1 < ns.size(); ++i)
        if (ns[i] >= ns[i + 1]) throw precondition_error("convergence_table: ns must increase");
    std::vector<ConvergenceRow> rows;
    for (int n : ns) {
        GeneratorConfig cfg = base;
        cfg.n = n;
        ConvergenceRow row{estimate_interior(cfg, s_max), {}};
        for (int s = 0; s <= s_max; ++s) {
            for (const EstimateRow& er : row.report.rows)
                if (er.s == s && er.stat == "z_le")
                    row.distance_to_limit.push_back(std::fabs(er.mean - 2.0 * (s + 1)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace aemt
