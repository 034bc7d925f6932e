#include "aemt/counting.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <thread>

namespace aemt {

namespace {

// Fenwick tree over 0..n-1.
class Bit {
public:
    explicit Bit(int n) : tree_(std::size_t(n) + 1, 0) {}
    void add(int i) {
        for (++i; i < static_cast<int>(tree_.size()); i += i & -i) ++tree_[std::size_t(i)];
    }
    // sum of [0, i)
    std::int32_t prefix(int i) const {
        std::int32_t s = 0;
        for (; i > 0; i -= i & -i) s += tree_[std::size_t(i)];
        return s;
    }

private:
    std::vector<std::int32_t> tree_;
};

// Minimal deterministic fork-join over a task index range.
void run_parallel(int tasks, int workers, const std::function<void(int)>& fn) {
    workers = std::max(1, std::min(workers, tasks));
    if (workers == 1) {
        for (int t = 0; t < tasks; ++t) fn(t);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int t = next.fetch_add(1);
                if (t >= tasks) return;
                fn(t);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace

int interior_count_oracle(const PointSet& P, const TriangleIdx& t) {
    const Point &a = P[t.i], &b = P[t.j], &c = P[t.k];
    int cnt = 0;
    for (int p = 0; p < P.size(); ++p) {
        if (p == t.i || p == t.j || p == t.k) continue;
        if (strictly_inside(P[p], a, b, c)) ++cnt;
    }
    return cnt;
}

BelowTable BelowTable::build(const PointSet& P) {
    const int n = P.size();
    BelowTable T;
    T.n_ = n;
    T.lexperm_.resize(std::size_t(n));
    std::iota(T.lexperm_.begin(), T.lexperm_.end(), 0);
    std::sort(T.lexperm_.begin(), T.lexperm_.end(),
              [&](int a, int b) { return lex_less(P[a], P[b]); });
    T.lexrank_.resize(std::size_t(n));
    for (int r = 0; r < n; ++r) T.lexrank_[std::size_t(T.lexperm_[std::size_t(r)])] = r;
    T.counts_.assign(std::size_t(n) * std::size_t(n), 0);

    // Per anchor a: every lex-later point lies in the right half-plane, so
    // the angular order around a is a single sweep. A point c is strictly
    // below a->b exactly when its direction precedes b's in that sweep, and
    // lex-between exactly when its lex rank precedes b's: a 2-d dominance
    // count, done with a Fenwick tree in O(m log m).
    std::vector<int> byangle;
    for (int ra = 0; ra + 2 < n; ++ra) {
        const Point A = P[T.lexperm_[std::size_t(ra)]];
        const int m = n - 1 - ra;
        byangle.resize(std::size_t(m));
        std::iota(byangle.begin(), byangle.end(), 0); // local lex offsets 1..m mapped as 0..m-1
        std::sort(byangle.begin(), byangle.end(), [&](int u, int v) {
            const Point pu = P[T.lexperm_[std::size_t(ra + 1 + u)]];
            const Point pv = P[T.lexperm_[std::size_t(ra + 1 + v)]];
            const int128 cr = int128(pu.x - A.x) * int128(pv.y - A.y) -
                              int128(pu.y - A.y) * int128(pv.x - A.x);
            return cr > 0; // ascending angle within the half-plane
        });
        Bit bit(m);
        for (const int u : byangle) {
            T.counts_[std::size_t(ra) * std::size_t(n) + std::size_t(ra + 1 + u)] = bit.prefix(u);
            bit.add(u);
        }
    }
    return T;
}

int interior_count_fast(const BelowTable& T, const PointSet& P, const TriangleIdx& t) {
    int ra = T.lex_rank(t.i), rb = T.lex_rank(t.j), rc = T.lex_rank(t.k);
    if (ra > rb) std::swap(ra, rb);
    if (rb > rc) std::swap(rb, rc);
    if (ra > rb) std::swap(ra, rb);
    const Point &A = P[T.lex_id(ra)], &B = P[T.lex_id(rb)], &C = P[T.lex_id(rc)];
    if (orient(A, C, B) < 0)
        return T.at(ra, rc) - T.at(ra, rb) - T.at(rb, rc) - 1; // the -1 removes B itself
    return T.at(ra, rb) + T.at(rb, rc) - T.at(ra, rc);
}

std::vector<std::uint64_t> InteriorProfile::prefix() const {
    std::vector<std::uint64_t> acc(z.size());
    std::uint64_t run = 0;
    for (std::size_t r = 0; r < z.size(); ++r) {
        run += z[r];
        acc[r] = run;
    }
    return acc;
}

InteriorProfile profile(const PointSet& P, int r_max, const BelowTable& T, int workers) {
    const int n = P.size();
    if (r_max < 0 || r_max > std::max(0, n - 3))
        throw precondition_error("profile: r_max out of range");

    InteriorProfile prof;
    prof.n = n;
    prof.r_max = r_max;
    prof.z.assign(std::size_t(r_max) + 1, 0);

    std::vector<std::vector<std::uint64_t>> partial(std::size_t(std::max(1, n)),
                                                    std::vector<std::uint64_t>());
    run_parallel(std::max(0, n - 2), workers, [&](int ra) {
        std::vector<std::uint64_t> z(std::size_t(r_max) + 1, 0);
        const Point A = P[T.lex_id(ra)];
        for (int rb = ra + 1; rb + 1 < n; ++rb) {
            const Point B = P[T.lex_id(rb)];
            const std::int32_t tab = T.at(ra, rb);
            for (int rc = rb + 1; rc < n; ++rc) {
                const Point C = P[T.lex_id(rc)];
                int cnt;
                if (orient(A, C, B) < 0)
                    cnt = T.at(ra, rc) - tab - T.at(rb, rc) - 1;
                else
                    cnt = tab + T.at(rb, rc) - T.at(ra, rc);
                if (cnt <= r_max) ++z[std::size_t(cnt)];
            }
        }
        partial[std::size_t(ra)] = std::move(z);
    });
    for (const auto& z : partial)
        for (std::size_t r = 0; r < z.size(); ++r) prof.z[r] += z[r];
    return prof;
}

namespace {

// Table-free path: anchor at the lex-min vertex, sweep the remaining points
// by angle, and count the wedge points on the anchor side of the far edge.
InteriorProfile profile_radial(const PointSet& P, int r_max) {
    const int n = P.size();
    InteriorProfile prof;
    prof.n = n;
    prof.r_max = r_max;
    prof.z.assign(std::size_t(r_max) + 1, 0);

    std::vector<int> lexperm(std::size_t(n), 0);
    std::iota(lexperm.begin(), lexperm.end(), 0);
    std::sort(lexperm.begin(), lexperm.end(),
              [&](int a, int b) { return lex_less(P[a], P[b]); });

    std::vector<int> order;
    for (int ra = 0; ra + 2 < n; ++ra) {
        const Point A = P[lexperm[std::size_t(ra)]];
        const int m = n - 1 - ra;
        order.resize(std::size_t(m));
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int u, int v) {
            const Point pu = P[lexperm[std::size_t(ra + 1 + u)]];
            const Point pv = P[lexperm[std::size_t(ra + 1 + v)]];
            const int128 cr = int128(pu.x - A.x) * int128(pv.y - A.y) -
                              int128(pu.y - A.y) * int128(pv.x - A.x);
            return cr > 0;
        });
        for (int i = 0; i < m; ++i) {
            const Point B = P[lexperm[std::size_t(ra + 1 + order[std::size_t(i)])]];
            for (int j = i + 1; j < m; ++j) {
                const Point C = P[lexperm[std::size_t(ra + 1 + order[std::size_t(j)])]];
                const int side = orient(B, C, A);
                int cnt = 0;
                for (int t = i + 1; t < j; ++t) {
                    const Point Q = P[lexperm[std::size_t(ra + 1 + order[std::size_t(t)])]];
                    if (orient(B, C, Q) == side) ++cnt;
                }
                if (cnt <= r_max) ++prof.z[std::size_t(cnt)];
            }
        }
    }
    return prof;
}

} // namespace

InteriorProfile profile(const PointSet& P, int r_max, const CountOptions& opt) {
    const std::size_t need = std::size_t(P.size()) * std::size_t(P.size()) * sizeof(std::int32_t);
    if (need > opt.table_memory_limit) return profile_radial(P, r_max);
    const BelowTable T = BelowTable::build(P);
    return profile(P, r_max, T, opt.workers);
}

std::vector<std::uint64_t> per_point_incidence(const PointSet& P, const BelowTable& T, int s,
                                               std::span<const int> restrict_ids) {
    const int n = P.size();
    std::vector<std::uint64_t> inc(std::size_t(n), 0);
    std::vector<int> ids;
    if (restrict_ids.empty()) {
        ids.resize(std::size_t(n));
        std::iota(ids.begin(), ids.end(), 0);
    } else {
        ids.assign(restrict_ids.begin(), restrict_ids.end());
    }
    const int k = static_cast<int>(ids.size());
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            for (int c = b + 1; c < k; ++c) {
                const TriangleIdx t(ids[std::size_t(a)], ids[std::size_t(b)], ids[std::size_t(c)]);
                if (interior_count_fast(T, P, t) <= s) {
                    ++inc[std::size_t(t.i)];
                    ++inc[std::size_t(t.j)];
                    ++inc[std::size_t(t.k)];
                }
            }
    return inc;
}

std::vector<TriangleIdx> almost_empty_triangles(const PointSet& P, const BelowTable& T, int s) {
    const int n = P.size();
    std::vector<TriangleIdx> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const TriangleIdx t(i, j, k);
                if (interior_count_fast(T, P, t) <= s) out.push_back(t);
            }
    return out;
}

} // namespace aemt
