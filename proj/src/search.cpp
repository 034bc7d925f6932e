#include "aemt/search.hpp"

#include <algorithm>
#include <cmath>

#include "aemt/rng.hpp"

namespace aemt {

namespace {

// Triangles with at most s interior points, grouped by their largest vertex
// id: the increment structure for both searches.
struct TriIndex {
    std::vector<TriangleIdx> all;
    std::vector<std::vector<std::pair<int, int>>> pairs_by_max; // (i,j) per k
    std::vector<std::vector<TriangleIdx>> incident;             // per point

    TriIndex(const PointSet& P, int s) {
        const BelowTable T = BelowTable::build(P);
        all = almost_empty_triangles(P, T, s);
        pairs_by_max.assign(std::size_t(P.size()), {});
        incident.assign(std::size_t(P.size()), {});
        for (const TriangleIdx& t : all) {
            pairs_by_max[std::size_t(t.k)].emplace_back(t.i, t.j);
            incident[std::size_t(t.i)].push_back(t);
            incident[std::size_t(t.j)].push_back(t);
            incident[std::size_t(t.k)].push_back(t);
        }
    }
};

} // namespace

SearchResult exhaustive_min(const PointSet& P, int c, int s) {
    const int n = P.size();
    if (c < 2) throw precondition_error("exhaustive_min: need c >= 2");
    {
        double space = 1.0;
        for (int i = 0; i < n; ++i) space *= c;
        for (int i = 2; i <= c; ++i) space /= i;
        if (space > 1e7) throw precondition_error("exhaustive_min: instance too large");
    }
    const TriIndex idx(P, s);

    std::vector<std::uint8_t> cur(std::size_t(n), 0), best_cols;
    std::uint64_t best = ~std::uint64_t(0);
    std::uint64_t visited = 0;

    // depth-first over canonical colorings: the color of point p may exceed
    // the running maximum by at most one. The monochromatic count only grows
    // as points are added, so branches at or above the best are cut.
    auto rec = [&](auto&& self, int p, int maxc, std::uint64_t count) -> void {
        if (count >= best) return;
        if (p == n) {
            best = count;
            best_cols = cur;
            return;
        }
        const int top = std::min(c, maxc + 1);
        for (int col = 1; col <= top; ++col) {
            cur[std::size_t(p)] = static_cast<std::uint8_t>(col);
            std::uint64_t add = 0;
            for (const auto& [i, j] : idx.pairs_by_max[std::size_t(p)])
                if (cur[std::size_t(i)] == col && cur[std::size_t(j)] == col) ++add;
            ++visited;
            self(self, p + 1, std::max(maxc, col), count + add);
        }
        cur[std::size_t(p)] = 0;
    };
    rec(rec, 0, 0, 0);

    SearchResult res;
    res.best = Coloring(best_cols, c);
    res.value = best;
    res.method = "exhaustive";
    res.iterations = visited;
    res.certified = true;
    if (mono_count(P, res.best, s) != res.value)
        throw internal_check_error("exhaustive_min: value does not re-verify");
    return res;
}

SearchResult local_min(const PointSet& P, int c, int s, std::uint64_t seed,
                       std::uint64_t budget) {
    const int n = P.size();
    if (c < 2) throw precondition_error("local_min: need c >= 2");
    const TriIndex idx(P, s);

    auto count_of = [&](const std::vector<std::uint8_t>& cols) {
        std::uint64_t cnt = 0;
        for (const TriangleIdx& t : idx.all)
            if (cols[std::size_t(t.i)] == cols[std::size_t(t.j)] &&
                cols[std::size_t(t.j)] == cols[std::size_t(t.k)])
                ++cnt;
        return cnt;
    };

    // fixed schedule: geometric cooling over 4 restarts
    constexpr int kRestarts = 4;
    constexpr double kTStart = 2.0, kTEnd = 1e-3;

    SearchResult res;
    res.method = "local";
    res.seed = seed;
    res.budget = budget;

    std::uint64_t best = ~std::uint64_t(0);
    std::vector<std::uint8_t> best_cols;
    std::uint64_t moves_done = 0;

    const int restarts = budget == 0 ? 1 : kRestarts;
    for (int rs = 0; rs < restarts; ++rs) {
        Rng rng = Rng::stream(seed, std::uint64_t(rs));
        std::vector<std::uint8_t> cols =
            random_coloring(n, c, rng.next()).colors;
        std::uint64_t cur = count_of(cols);
        if (cur < best) {
            best = cur;
            best_cols = cols;
        }
        const std::uint64_t steps = budget / std::uint64_t(restarts);
        if (steps == 0) continue;
        const double cool = std::pow(kTEnd / kTStart, 1.0 / double(steps));
        double temp = kTStart;
        for (std::uint64_t it = 0; it < steps; ++it, temp *= cool) {
            const int p = static_cast<int>(rng.below(std::uint64_t(n)));
            const int old_col = cols[std::size_t(p)];
            int new_col = 1 + static_cast<int>(rng.below(std::uint64_t(c - 1)));
            if (new_col >= old_col) ++new_col;

            // only triangles through p can change state
            std::int64_t delta = 0;
            for (const TriangleIdx& t : idx.incident[std::size_t(p)]) {
                const int a = t.i == p ? t.j : t.i;
                const int b = t.k == p ? t.j : t.k;
                const bool was = cols[std::size_t(a)] == old_col && cols[std::size_t(b)] == old_col;
                const bool now = cols[std::size_t(a)] == new_col && cols[std::size_t(b)] == new_col;
                delta += int(now) - int(was);
            }
            ++moves_done;
            if (delta <= 0 || rng.unit() < std::exp(-double(delta) / temp)) {
                cols[std::size_t(p)] = static_cast<std::uint8_t>(new_col);
                cur = std::uint64_t(std::int64_t(cur) + delta);
                if (cur < best) {
                    best = cur;
                    best_cols = cols;
                }
            }
        }
    }

    res.best = Coloring(best_cols, c);
    res.value = best;
    res.iterations = moves_done;
    if (mono_count(P, res.best, s) != res.value)
        throw internal_check_error("local_min: value does not re-verify");
    return res;
}

BoundReport bound_report(const PointSet& P, int c, int s, std::uint64_t seed,
                         std::uint64_t budget) {
    BoundReport rep;
    rep.n = P.size();
    rep.c = c;
    rep.s = s;
    rep.local = local_min(P, c, s, seed, budget);

    double space = 1.0;
    for (int i = 0; i < rep.n; ++i) space *= c;
    for (int i = 2; i <= c; ++i) space /= i;
    if (space <= 1e7) rep.exhaustive = exhaustive_min(P, c, s);

    const Coloring& phi = rep.local.best;
    const BelowTable T = BelowTable::build(P);
    rep.mono_star_cap = mono_count(P, T, phi, c - 1);
    const WitnessReport star = star_witness(P, phi);
    rep.star_certified = star.triangles.size();
    rep.star_supported = star.bound_supported;
    if (discrepancy(phi).exceeds_fraction(std::int64_t(4) * (c - 1), c)) {
        const WitnessReport d = discrepancy_witness(P, phi);
        rep.discrepancy_certified = d.triangles.size();
        rep.discrepancy_claimed = d.claimed_bound;
    }
    return rep;
}

} // namespace aemt
