#include "aemt/witness.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace aemt {

namespace {

int128 cross(const Point& base, const Point& u, const Point& v) {
    return int128(u.x - base.x) * int128(v.y - base.y) -
           int128(u.y - base.y) * int128(v.x - base.x);
}

// CCW-from-positive-x-axis comparator for directions out of `apex`.
struct AngleAround {
    const PointSet& P;
    Point apex;

    int half(const Point& p) const {
        const std::int64_t dy = p.y - apex.y, dx = p.x - apex.x;
        return (dy < 0 || (dy == 0 && dx < 0)) ? 1 : 0;
    }
    bool operator()(int a, int b) const {
        const int ha = half(P[a]), hb = half(P[b]);
        if (ha != hb) return ha < hb;
        return cross(apex, P[a], P[b]) > 0;
    }
};

// Local engine over a subset of P: sub point set, id maps, pair table.
struct SubsetEngine {
    std::vector<int> ids;        // global ids, position = local id
    std::vector<int> local_of;   // global -> local (or -1)
    PointSet sub;
    BelowTable table;

    SubsetEngine(const PointSet& P, std::span<const int> subset) {
        ids.assign(subset.begin(), subset.end());
        local_of.assign(std::size_t(P.size()), -1);
        std::vector<Point> pts;
        pts.reserve(ids.size());
        for (std::size_t l = 0; l < ids.size(); ++l) {
            local_of[std::size_t(ids[l])] = static_cast<int>(l);
            pts.push_back(P[ids[l]]);
        }
        sub = PointSet(std::move(pts));
        table = BelowTable::build(sub);
    }

    int interior(const TriangleIdx& global) const {
        const TriangleIdx t(local_of[std::size_t(global.i)], local_of[std::size_t(global.j)],
                            local_of[std::size_t(global.k)]);
        return interior_count_fast(table, sub, t);
    }
};

ThresholdCheck linear_check(std::string label, std::int64_t value_num, std::int64_t value_den,
                            std::int64_t coeff_num, std::int64_t coeff_den) {
    ThresholdCheck ch;
    ch.label = std::move(label);
    ch.value_num = value_num;
    ch.value_den = value_den;
    ch.coeff_num = coeff_num;
    ch.coeff_den = coeff_den;
    ch.exceeded = ch.recompute();
    return ch;
}

ThresholdCheck cbrt_check(std::string label, std::int64_t value_num, std::int64_t value_den,
                          std::int64_t coeff_num, std::int64_t coeff_den, std::int64_t n) {
    ThresholdCheck ch;
    ch.label = std::move(label);
    ch.cuberoot = true;
    ch.value_num = value_num;
    ch.value_den = value_den;
    ch.coeff_num = coeff_num;
    ch.coeff_den = coeff_den;
    ch.n = n;
    ch.exceeded = ch.recompute();
    return ch;
}

} // namespace

std::uint64_t certify_report(const PointSet& P, const Coloring& phi, const WitnessReport& r) {
    std::vector<int> universe = r.universe;
    if (universe.empty()) {
        universe.resize(std::size_t(P.size()));
        std::iota(universe.begin(), universe.end(), 0);
    }
    std::set<TriangleIdx> seen;
    for (const WitnessTriangle& w : r.triangles) {
        if (!seen.insert(w.tri).second)
            throw internal_check_error("certify: duplicate triangle in report");
        if (phi.color_of(w.tri.i) != w.color || phi.color_of(w.tri.j) != w.color ||
            phi.color_of(w.tri.k) != w.color)
            throw internal_check_error("certify: triangle not monochromatic in stated color");
        const Point &a = P[w.tri.i], &b = P[w.tri.j], &c = P[w.tri.k];
        int cnt = 0;
        for (int id : universe) {
            if (id == w.tri.i || id == w.tri.j || id == w.tri.k) continue;
            if (strictly_inside(P[id], a, b, c)) ++cnt;
        }
        if (cnt != w.interior)
            throw internal_check_error("certify: stored interior count disagrees with oracle");
        if (cnt > r.s_cap)
            throw internal_check_error("certify: triangle exceeds the s_cap interior bound");
    }
    const std::uint64_t certified = r.triangles.size();
    if (r.bound_supported && r.claimed_bound > static_cast<std::int64_t>(certified))
        throw internal_check_error("certify: certified count below the supported claimed bound");
    return certified;
}

std::vector<TriangleIdx> star_fan(const PointSet& P, std::span<const int> ids, int apex) {
    if (ids.size() < 3) throw precondition_error("star_fan: need at least 3 points");
    std::vector<int> others;
    others.reserve(ids.size() - 1);
    bool found = false;
    for (int id : ids) {
        if (id == apex) { found = true; continue; }
        others.push_back(id);
    }
    if (!found) throw precondition_error("star_fan: apex not in the id set");

    std::sort(others.begin(), others.end(), AngleAround{P, P[apex]});
    const int m = static_cast<int>(others.size());

    // A cyclic gap wider than a half turn means the apex sits on the hull of
    // the set; the fan then stops at that gap instead of wrapping.
    int gap = -1;
    for (int i = 0; i < m; ++i) {
        const int j = (i + 1) % m;
        if (cross(P[apex], P[others[std::size_t(i)]], P[others[std::size_t(j)]]) < 0) {
            gap = i;
            break;
        }
    }

    std::vector<TriangleIdx> fan;
    if (gap < 0) {
        for (int i = 0; i < m; ++i)
            fan.emplace_back(apex, others[std::size_t(i)], others[std::size_t((i + 1) % m)]);
    } else {
        std::rotate(others.begin(), others.begin() + gap + 1, others.end());
        for (int i = 0; i + 1 < m; ++i)
            fan.emplace_back(apex, others[std::size_t(i)], others[std::size_t(i + 1)]);
    }
    return fan;
}

namespace {

// Fans of the largest class within `subset`, filtered to triangles with at
// most s_filter interior points of the subset. Stored interior counts are
// against `full` when given (the caller's report universe), else the subset.
struct FanEmit {
    std::vector<WitnessTriangle> triangles;
    int color = 0;
    std::int64_t class_size = 0;
};

FanEmit fan_filter_emit(const PointSet& P, const Coloring& phi, std::span<const int> subset,
                        int s_filter, const BelowTable* full) {
    FanEmit out;
    const auto sizes = class_sizes(phi, subset);
    out.color = largest_class(sizes);
    out.class_size = sizes[std::size_t(out.color) - 1];

    std::vector<int> cls;
    for (int id : subset)
        if (phi.color_of(id) == out.color) cls.push_back(id);
    if (cls.size() < 3) return out;

    SubsetEngine eng(P, subset);
    std::set<TriangleIdx> keep;
    for (int apex : cls) {
        for (const TriangleIdx& t : star_fan(P, cls, apex)) {
            if (eng.interior(t) <= s_filter) keep.insert(t);
        }
    }
    out.triangles.reserve(keep.size());
    for (const TriangleIdx& t : keep) {
        const int interior = full ? interior_count_fast(*full, P, t) : eng.interior(t);
        out.triangles.push_back(WitnessTriangle{t, out.color, interior});
    }
    return out;
}

std::int64_t discrepancy_bound(std::int64_t scaled_delta, std::int64_t subset_size, int c) {
    // ceil(delta * |S| / 6c) with delta = scaled/c
    const std::int64_t den = std::int64_t(6) * c * c;
    return (scaled_delta * subset_size + den - 1) / den;
}

} // namespace

WitnessReport star_witness(const PointSet& P, const Coloring& phi) {
    if (phi.size() != P.size()) throw precondition_error("star_witness: coloring size mismatch");
    const int n = P.size();
    const int c = phi.c;

    WitnessReport r;
    r.mode = "star";
    r.n = n;
    r.c = c;
    r.s_cap = c - 1;

    const auto sizes = class_sizes(phi);
    const int color = largest_class(sizes);
    const std::int64_t p1 = sizes[std::size_t(color) - 1];

    TraceEntry e;
    e.step = 0;
    e.branch = "star";
    e.class_sizes_current = sizes;
    e.subset_size = n;
    // n >= 4c^2, logged as the exact comparison n > 4c^2 - 1
    e.checks.push_back(linear_check("n >= 4c^2", n, 1, std::int64_t(4) * c * c - 1, 1));
    r.bound_supported = e.checks.back().exceeded;
    r.claimed_bound = p1 * p1 / (std::int64_t(6) * c);
    if (!r.bound_supported) r.bound_note = "n < 4c^2: bound not guaranteed at this size";

    if (p1 >= 3) {
        std::vector<int> cls;
        for (int id = 0; id < n; ++id)
            if (phi.color_of(id) == color) cls.push_back(id);
        const BelowTable T = BelowTable::build(P);
        std::set<TriangleIdx> keep;
        for (int apex : cls)
            for (const TriangleIdx& t : star_fan(P, cls, apex))
                if (interior_count_fast(T, P, t) <= r.s_cap) keep.insert(t);
        for (const TriangleIdx& t : keep)
            r.triangles.push_back(WitnessTriangle{t, color, interior_count_fast(T, P, t)});
    }
    e.note = "largest class " + std::to_string(color) + ", size " + std::to_string(p1);
    r.trace.push_back(std::move(e));
    certify_report(P, phi, r);
    return r;
}

WitnessReport discrepancy_witness(const PointSet& P, const Coloring& phi,
                                  std::span<const int> subset) {
    if (phi.size() != P.size())
        throw precondition_error("discrepancy_witness: coloring size mismatch");
    std::vector<int> ids;
    if (subset.empty()) {
        ids.resize(std::size_t(P.size()));
        std::iota(ids.begin(), ids.end(), 0);
    } else {
        ids.assign(subset.begin(), subset.end());
    }

    const int c = phi.c;
    const auto sizes = class_sizes(phi, ids);
    const ScaledDiscrepancy d = discrepancy_of_sizes(sizes, c);
    if (!d.exceeds_fraction(std::int64_t(4) * (c - 1), c))
        throw precondition_error("discrepancy_witness: delta(S) <= 4(c-1)/c");

    WitnessReport r;
    r.mode = "discrepancy";
    r.n = P.size();
    r.c = c;
    r.s_cap = c - 2;
    r.universe = ids;

    TraceEntry e;
    e.step = 0;
    e.branch = "discrepancy";
    e.class_sizes_current = sizes;
    e.subset_size = static_cast<std::int64_t>(ids.size());
    e.checks.push_back(
        linear_check("delta(S) > 4(c-1)/c", d.value, c, std::int64_t(4) * (c - 1), c));

    FanEmit emit = fan_filter_emit(P, phi, ids, r.s_cap, nullptr);
    r.triangles = std::move(emit.triangles);
    r.claimed_bound = discrepancy_bound(d.value, static_cast<std::int64_t>(ids.size()), c);
    r.bound_supported = true;
    e.note = "largest class " + std::to_string(emit.color);
    r.trace.push_back(std::move(e));
    certify_report(P, phi, r);
    return r;
}

// ---------------------------------------------------------------------------
// anchor_triangulate

namespace {

// Shared scratch for the triangulation strategies: points 0,1,2 outer
// (reordered CCW), 3.. inner.
struct TriPoints {
    std::vector<Point> pts;
    int m = 0;

    bool face_empty(int a, int b, int c) const {
        for (int q = 0; q < static_cast<int>(pts.size()); ++q) {
            if (q == a || q == b || q == c) continue;
            if (strictly_inside(pts[std::size_t(q)], pts[std::size_t(a)], pts[std::size_t(b)],
                                pts[std::size_t(c)]))
                return false;
        }
        return true;
    }
};

int count_incidence(const std::vector<std::array<int, 3>>& faces) {
    int inc = 0;
    for (const auto& f : faces)
        if (f[0] <= 2 || f[1] <= 2 || f[2] <= 2) ++inc;
    return inc;
}

// Greedy insertion, nearest-corner points first: each point splits the face
// containing it into three.
std::vector<std::array<int, 3>> build_by_insertion(const TriPoints& tp) {
    std::vector<int> order(std::size_t(tp.m), 0);
    std::iota(order.begin(), order.end(), 3);
    auto corner_dist = [&](int q) {
        int128 best = -1;
        for (int r = 0; r < 3; ++r) {
            const std::int64_t dx = tp.pts[std::size_t(q)].x - tp.pts[std::size_t(r)].x;
            const std::int64_t dy = tp.pts[std::size_t(q)].y - tp.pts[std::size_t(r)].y;
            const int128 d2 = int128(dx) * dx + int128(dy) * dy;
            if (best < 0 || d2 < best) best = d2;
        }
        return best;
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const int128 da = corner_dist(a), db = corner_dist(b);
        if (da != db) return da < db;
        return a < b;
    });

    std::vector<std::array<int, 3>> faces{{0, 1, 2}};
    for (int q : order) {
        int host = -1;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
            const auto& t = faces[std::size_t(f)];
            if (strictly_inside(tp.pts[std::size_t(q)], tp.pts[std::size_t(t[0])],
                                tp.pts[std::size_t(t[1])], tp.pts[std::size_t(t[2])])) {
                host = f;
                break;
            }
        }
        if (host < 0) throw internal_check_error("anchor_triangulate: point location failed");
        const std::array<int, 3> t = faces[std::size_t(host)];
        faces[std::size_t(host)] = {q, t[0], t[1]};
        faces.push_back({q, t[1], t[2]});
        faces.push_back({q, t[2], t[0]});
    }
    return faces;
}

// Fan all inner points from one corner, then triangulate the leftover simple
// polygon with an interval sweep that maximizes faces touching the other two
// corners.
std::vector<std::array<int, 3>> build_by_corner_fan(const TriPoints& tp, int corner) {
    const int A = (corner + 1) % 3, B = (corner + 2) % 3;
    const Point& R = tp.pts[std::size_t(corner)];
    const int s = orient(R, tp.pts[std::size_t(A)], tp.pts[std::size_t(B)]);

    std::vector<int> ws(std::size_t(tp.m), 0);
    std::iota(ws.begin(), ws.end(), 3);
    std::sort(ws.begin(), ws.end(), [&](int u, int v) {
        return orient(R, tp.pts[std::size_t(u)], tp.pts[std::size_t(v)]) == s;
    });

    std::vector<std::array<int, 3>> faces;
    std::vector<int> poly; // A, w..., B; the closing edge B->A is the outer side
    poly.push_back(A);
    for (int w : ws) poly.push_back(w);
    poly.push_back(B);
    for (std::size_t i = 0; i + 1 < poly.size(); ++i)
        faces.push_back({corner, poly[i], poly[i + 1]});
    if (tp.m == 0) return faces;

    // Normalize the polygon to CCW for the cone tests.
    const int V = static_cast<int>(poly.size());
    {
        int128 area2 = 0;
        for (int i = 0; i < V; ++i) {
            const Point& p = tp.pts[std::size_t(poly[std::size_t(i)])];
            const Point& q = tp.pts[std::size_t(poly[std::size_t((i + 1) % V)])];
            area2 += int128(p.x) * q.y - int128(p.y) * q.x;
        }
        if (area2 < 0) std::reverse(poly.begin(), poly.end());
    }

    auto at = [&](int i) -> const Point& { return tp.pts[std::size_t(poly[std::size_t(i)])]; };
    auto left = [&](const Point& a, const Point& b, const Point& p) {
        return orient(a, b, p) > 0;
    };
    auto in_cone = [&](int i, int j) {
        const Point &prev = at((i + V - 1) % V), &cur = at(i), &next = at((i + 1) % V);
        if (left(prev, cur, next) || orient(prev, cur, next) == 0)
            return left(cur, at(j), prev) && left(at(j), cur, next);
        return !(left(cur, at(j), next) && left(at(j), cur, prev));
    };
    auto proper_cross = [&](const Point& a, const Point& b, const Point& cc, const Point& dd) {
        return orient(a, b, cc) * orient(a, b, dd) < 0 && orient(cc, dd, a) * orient(cc, dd, b) < 0;
    };
    std::vector<std::vector<char>> diag(std::size_t(V), std::vector<char>(std::size_t(V), 0));
    for (int i = 0; i < V; ++i) {
        diag[std::size_t(i)][std::size_t((i + 1) % V)] = 1;
        diag[std::size_t((i + 1) % V)][std::size_t(i)] = 1;
    }
    for (int i = 0; i < V; ++i)
        for (int j = i + 2; j < V; ++j) {
            if (i == 0 && j == V - 1) continue; // that's the closing edge
            if (!in_cone(i, j) || !in_cone(j, i)) continue;
            bool ok = true;
            for (int k = 0; k < V && ok; ++k) {
                const int k2 = (k + 1) % V;
                if (k == i || k == j || k2 == i || k2 == j) continue;
                if (proper_cross(at(i), at(j), at(k), at(k2))) ok = false;
            }
            diag[std::size_t(i)][std::size_t(j)] = diag[std::size_t(j)][std::size_t(i)] = ok;
        }

    auto is_outer = [&](int i) { return poly[std::size_t(i)] <= 2; };
    constexpr int kNeg = -1000000;
    std::vector<std::vector<int>> best(std::size_t(V), std::vector<int>(std::size_t(V), kNeg));
    std::vector<std::vector<int>> pick(std::size_t(V), std::vector<int>(std::size_t(V), -1));
    for (int i = 0; i + 1 < V; ++i) best[std::size_t(i)][std::size_t(i + 1)] = 0;
    for (int len = 2; len < V; ++len)
        for (int i = 0; i + len < V; ++i) {
            const int j = i + len;
            if (!diag[std::size_t(i)][std::size_t(j)]) continue;
            for (int k = i + 1; k < j; ++k) {
                if (best[std::size_t(i)][std::size_t(k)] == kNeg ||
                    best[std::size_t(k)][std::size_t(j)] == kNeg)
                    continue;
                const int gain = (is_outer(i) || is_outer(k) || is_outer(j)) ? 1 : 0;
                const int val =
                    best[std::size_t(i)][std::size_t(k)] + best[std::size_t(k)][std::size_t(j)] + gain;
                if (val > best[std::size_t(i)][std::size_t(j)]) {
                    best[std::size_t(i)][std::size_t(j)] = val;
                    pick[std::size_t(i)][std::size_t(j)] = k;
                }
            }
        }
    if (best[std::size_t(0)][std::size_t(V - 1)] == kNeg)
        throw internal_check_error("anchor_triangulate: polygon sweep found no triangulation");

    // unwind
    std::vector<std::pair<int, int>> stack{{0, V - 1}};
    while (!stack.empty()) {
        auto [i, j] = stack.back();
        stack.pop_back();
        if (j - i < 2) continue;
        const int k = pick[std::size_t(i)][std::size_t(j)];
        faces.push_back({poly[std::size_t(i)], poly[std::size_t(k)], poly[std::size_t(j)]});
        stack.emplace_back(i, k);
        stack.emplace_back(k, j);
    }
    return faces;
}

// Exhaustive search over all triangulations through an advancing front,
// pruned by the best achievable incidence; stops at the first triangulation
// meeting `target`.
struct FrontSearch {
    const TriPoints& tp;
    int target;
    std::int64_t budget = 30'000'000;
    std::set<std::pair<int, int>> front;
    std::vector<std::pair<int, int>> edges; // all committed segments
    std::vector<std::array<int, 3>> faces;
    std::vector<std::array<int, 3>> found;

    explicit FrontSearch(const TriPoints& t, int tgt) : tp(t), target(tgt) {}

    bool crosses_any(int a, int b) const {
        const Point &pa = tp.pts[std::size_t(a)], &pb = tp.pts[std::size_t(b)];
        for (const auto& [u, v] : edges) {
            if (u == a || u == b || v == a || v == b) continue;
            const Point &pu = tp.pts[std::size_t(u)], &pv = tp.pts[std::size_t(v)];
            if (orient(pa, pb, pu) * orient(pa, pb, pv) < 0 &&
                orient(pu, pv, pa) * orient(pu, pv, pb) < 0)
                return true;
        }
        return false;
    }

    bool dfs(int incidence) {
        if (front.empty()) {
            if (incidence >= target) {
                found = faces;
                return true;
            }
            return false;
        }
        if (--budget <= 0)
            throw internal_check_error("anchor_triangulate: exhaustive search budget exhausted");
        const int total = 2 * tp.m + 1;
        if (incidence + (total - static_cast<int>(faces.size())) < target) return false;

        const auto [u, v] = *front.begin();
        std::vector<int> cand;
        for (int w = 0; w < static_cast<int>(tp.pts.size()); ++w) {
            if (w == u || w == v) continue;
            if (orient(tp.pts[std::size_t(u)], tp.pts[std::size_t(v)], tp.pts[std::size_t(w)]) != 1)
                continue;
            if (!tp.face_empty(u, v, w)) continue;
            bool buried = false; // w must not sit inside the covered region
            for (const auto& f : faces) {
                if (w == f[0] || w == f[1] || w == f[2]) continue;
                if (strictly_inside(tp.pts[std::size_t(w)], tp.pts[std::size_t(f[0])],
                                    tp.pts[std::size_t(f[1])], tp.pts[std::size_t(f[2])])) {
                    buried = true;
                    break;
                }
            }
            if (buried) continue;
            cand.push_back(w);
        }
        std::sort(cand.begin(), cand.end()); // corners first: ids 0..2
        for (int w : cand) {
            if (crosses_any(u, w) || crosses_any(w, v)) continue;
            // commit
            front.erase({u, v});
            std::array<std::pair<int, int>, 2> grow{{{w, v}, {u, w}}};
            std::array<bool, 2> added{false, false};
            for (int g = 0; g < 2; ++g) {
                const auto rev = std::make_pair(grow[std::size_t(g)].second, grow[std::size_t(g)].first);
                if (front.count(rev)) {
                    front.erase(rev);
                } else {
                    front.insert(grow[std::size_t(g)]);
                    added[std::size_t(g)] = true;
                }
            }
            edges.emplace_back(u, w);
            edges.emplace_back(w, v);
            faces.push_back({u, v, w});
            const int gain = (u <= 2 || v <= 2 || w <= 2) ? 1 : 0;
            if (dfs(incidence + gain)) return true;
            // rollback
            faces.pop_back();
            edges.pop_back();
            edges.pop_back();
            for (int g = 1; g >= 0; --g) {
                if (added[std::size_t(g)]) {
                    front.erase(grow[std::size_t(g)]);
                } else {
                    front.insert({grow[std::size_t(g)].second, grow[std::size_t(g)].first});
                }
            }
            front.insert({u, v});
        }
        return false;
    }
};

} // namespace

void verify_triangulation(const std::array<Point, 3>& outer, const std::vector<Point>& inner,
                          const std::vector<std::array<int, 3>>& faces) {
    const int m = static_cast<int>(inner.size());
    if (static_cast<int>(faces.size()) != 2 * m + 1)
        throw internal_check_error("triangulation: face count is not 2m+1");

    std::vector<Point> pts(outer.begin(), outer.end());
    pts.insert(pts.end(), inner.begin(), inner.end());

    int128 area_sum = 0;
    std::map<std::pair<int, int>, int> edge_use;
    for (const auto& f : faces) {
        const Point &a = pts[std::size_t(f[0])], &b = pts[std::size_t(f[1])],
                    &c = pts[std::size_t(f[2])];
        const int128 a2 = int128(b.x - a.x) * (c.y - a.y) - int128(b.y - a.y) * (c.x - a.x);
        if (a2 == 0) throw internal_check_error("triangulation: degenerate face");
        area_sum += a2 < 0 ? -a2 : a2;
        for (int e = 0; e < 3; ++e) {
            int u = f[std::size_t(e)], v = f[std::size_t((e + 1) % 3)];
            if (u > v) std::swap(u, v);
            ++edge_use[{u, v}];
        }
        for (int q = 0; q < static_cast<int>(pts.size()); ++q) {
            if (q == f[0] || q == f[1] || q == f[2]) continue;
            if (strictly_inside(pts[std::size_t(q)], a, b, c))
                throw internal_check_error("triangulation: face contains a point");
        }
    }
    const int128 outer2x =
        int128(outer[1].x - outer[0].x) * (outer[2].y - outer[0].y) -
        int128(outer[1].y - outer[0].y) * (outer[2].x - outer[0].x);
    if (area_sum != (outer2x < 0 ? -outer2x : outer2x))
        throw internal_check_error("triangulation: faces do not partition the outer triangle");
    for (const auto& [edge, uses] : edge_use) {
        const bool boundary = edge.first <= 2 && edge.second <= 2;
        if (uses != (boundary ? 1 : 2))
            throw internal_check_error("triangulation: inconsistent edge sharing");
    }
}

namespace {

TriPoints prepare_tripoints(const std::array<Point, 3>& outer, const std::vector<Point>& inner) {
    TriPoints tp;
    tp.pts.assign(outer.begin(), outer.end());
    // normalize outer to CCW so front orientation is fixed
    if (orient(tp.pts[0], tp.pts[1], tp.pts[2]) < 0) std::swap(tp.pts[1], tp.pts[2]);
    if (orient(tp.pts[0], tp.pts[1], tp.pts[2]) == 0)
        throw precondition_error("anchor_triangulate: outer triangle degenerate");
    for (const Point& q : inner) {
        if (!strictly_inside(q, tp.pts[0], tp.pts[1], tp.pts[2]))
            throw precondition_error("anchor_triangulate: inner point not strictly inside");
        tp.pts.push_back(q);
    }
    tp.m = static_cast<int>(inner.size());
    return tp;
}

int incidence_target(int m) {
    const std::int64_t rt = isqrt_floor(m);
    return static_cast<int>(m + 1 + (rt * rt == m ? rt : rt + 1)); // ceil(m + sqrt m + 1)
}

void unswap_outer(const std::array<Point, 3>& outer, AnchorTriangulation& tri) {
    if (orient(outer[0], outer[1], outer[2]) < 0) {
        for (auto& f : tri.faces)
            for (int& v : f) {
                if (v == 1) v = 2;
                else if (v == 2) v = 1;
            }
    }
}

} // namespace

AnchorTriangulation anchor_triangulate_exhaustive(const std::array<Point, 3>& outer,
                                                  const std::vector<Point>& inner) {
    TriPoints tp = prepare_tripoints(outer, inner);
    const std::array<Point, 3> outer_ccw{tp.pts[0], tp.pts[1], tp.pts[2]};
    FrontSearch search(tp, incidence_target(tp.m));
    search.front = {{0, 1}, {1, 2}, {2, 0}};
    search.edges = {{0, 1}, {1, 2}, {2, 0}};
    if (!search.dfs(0))
        throw internal_check_error(
            "anchor_triangulate: exhaustive search found no triangulation meeting the bound");
    verify_triangulation(outer_ccw, inner, search.found);
    AnchorTriangulation out;
    out.faces = std::move(search.found);
    out.incidence = count_incidence(out.faces);
    out.from_fallback = true;
    unswap_outer(outer, out);
    return out;
}

AnchorTriangulation anchor_triangulate(const std::array<Point, 3>& outer,
                                       const std::vector<Point>& inner) {
    TriPoints tp = prepare_tripoints(outer, inner);
    const int target = incidence_target(tp.m);
    const std::array<Point, 3> outer_ccw{tp.pts[0], tp.pts[1], tp.pts[2]};
    const std::vector<Point> inner_ccw(tp.pts.begin() + 3, tp.pts.end());

    AnchorTriangulation best;
    best.incidence = -1;
    auto consider = [&](std::vector<std::array<int, 3>> faces) {
        try {
            verify_triangulation(outer_ccw, inner_ccw, faces);
        } catch (const internal_check_error&) {
            return; // a candidate strategy may fail; only the result must verify
        }
        const int inc = count_incidence(faces);
        if (inc > best.incidence) {
            best.faces = std::move(faces);
            best.incidence = inc;
        }
    };

    consider(build_by_insertion(tp));
    if (best.incidence < target)
        for (int corner = 0; corner < 3 && best.incidence < target; ++corner)
            consider(build_by_corner_fan(tp, corner));

    if (best.incidence < target) {
        if (tp.m > 10)
            throw internal_check_error(
                "anchor_triangulate: primary strategies missed the incidence bound (m > 10, "
                "no exhaustive fallback)");
        FrontSearch search(tp, target);
        search.front = {{0, 1}, {1, 2}, {2, 0}};
        search.edges = {{0, 1}, {1, 2}, {2, 0}};
        if (!search.dfs(0))
            throw internal_check_error(
                "anchor_triangulate: exhaustive search found no triangulation meeting the bound");
        verify_triangulation(outer_ccw, inner_ccw, search.found);
        best.faces = std::move(search.found);
        best.incidence = count_incidence(best.faces);
        best.from_fallback = true;
    }

    unswap_outer(outer, best);
    return best;
}

// ---------------------------------------------------------------------------
// fan decomposition and the prefix split

FanDecomposition fan_decompose(const PointSet& P, std::span<const int> subset) {
    FanDecomposition fd;
    fd.hull = convex_hull(P, subset);
    const int R = static_cast<int>(fd.hull.size());
    fd.regions.assign(std::size_t(R) - 2, {});

    std::vector<char> on_hull(std::size_t(P.size()), 0);
    for (int h : fd.hull) on_hull[std::size_t(h)] = 1;

    const Point& apex = P[fd.hull[0]];
    for (int id : subset) {
        if (on_hull[std::size_t(id)]) continue;
        const Point& q = P[id];
        int placed = -1;
        for (int b = 0; b + 2 < R; ++b) {
            if (strictly_inside(q, apex, P[fd.hull[std::size_t(b) + 1]],
                                P[fd.hull[std::size_t(b) + 2]])) {
                placed = b;
                break;
            }
        }
        if (placed < 0) {
            // exactly on a diagonal: lower-region policy
            for (int b = 1; b + 2 < R && placed < 0; ++b)
                if (orient(apex, P[fd.hull[std::size_t(b) + 1]], q) == 0) placed = b - 1;
            if (placed < 0)
                throw internal_check_error("fan_decompose: point in no region");
            fd.diagonal_incident.push_back(id);
        }
        fd.regions[std::size_t(placed)].push_back(id);
    }
    return fd;
}

namespace {

// Core of the prefix split, parameterized on the half-threshold test.
template <typename HalfPred>
TbSplitResult tb_split_core(const Coloring& phi, const std::vector<int>& s1,
                            const std::vector<int>& s2, const HalfPred& half_exceeds) {
    std::vector<int> s3 = s2;
    s3.insert(s3.end(), s1.begin(), s1.end());

    const ScaledDiscrepancy d3 = discrepancy(phi, s3);
    if (half_exceeds(d3)) return TbSplitResult{3, std::move(s3), d3};
    const ScaledDiscrepancy d2 = discrepancy(phi, s2);
    if (half_exceeds(d2)) return TbSplitResult{2, s2, d2};
    throw internal_check_error("tb_split: neither side exceeds half the threshold");
}

} // namespace

TbSplitResult tb_split(const Coloring& phi, const std::vector<std::vector<int>>& regions, int b,
                       std::int64_t threshold_scaled) {
    if (b < 0 || b >= static_cast<int>(regions.size()))
        throw precondition_error("tb_split: region index out of range");
    const std::vector<int>& s1 = regions[std::size_t(b)];
    const ScaledDiscrepancy d1 = discrepancy(phi, s1);
    if (d1.value <= threshold_scaled)
        throw precondition_error("tb_split: delta(S1) does not exceed the threshold");
    std::vector<int> s2;
    for (int r = 0; r < b; ++r)
        s2.insert(s2.end(), regions[std::size_t(r)].begin(), regions[std::size_t(r)].end());
    return tb_split_core(phi, s1, s2, [&](const ScaledDiscrepancy& d) {
        return 2 * d.value > threshold_scaled;
    });
}

// ---------------------------------------------------------------------------
// the full peeling run

WitnessReport peeling_witness(const PointSet& P, const Coloring& phi, const PeelingOptions& opt) {
    if (phi.size() != P.size()) throw precondition_error("peeling_witness: coloring size mismatch");
    const int n = P.size();
    const int c = phi.c;
    const std::int64_t k_num = opt.k_num > 0 ? opt.k_num : 1;
    const std::int64_t k_den = opt.k_den > 0 ? opt.k_den : 8 * std::int64_t(c) * c * c * c * c;
    const std::int64_t k2_num = opt.k2_num > 0 ? opt.k2_num : 2 * std::int64_t(c) + 1;
    const std::int64_t k2_den = opt.k2_den > 0 ? opt.k2_den : 8 * std::int64_t(c) * c * c * c;
    // scaled discrepancies reach (c-1)n; the cubed comparisons must stay
    // inside 128 bits
    if (int128(n) * c * std::max(k_den, k2_den) >= (int128(1) << 42))
        throw precondition_error("peeling_witness: n too large for exact threshold arithmetic");

    WitnessReport r;
    r.mode = "thm2";
    r.n = n;
    r.c = c;
    r.s_cap = c - 2;

    const BelowTable full = BelowTable::build(P);

    // "color 1" of the argument = the largest class of the input coloring
    const auto sizes0 = class_sizes(phi);
    const int a1 = largest_class(sizes0);

    std::set<TriangleIdx> removal_tris;
    std::vector<int> cur(std::size_t(n), 0);
    std::iota(cur.begin(), cur.end(), 0);
    const std::int64_t t_max = n / (c + 1);
    int removal_steps = 0;

    // Emits the discrepancy witness for a subset into the master report.
    auto emit_discrepancy = [&](const std::vector<int>& ids, TraceEntry& e) {
        const auto sizes = class_sizes(phi, ids);
        const ScaledDiscrepancy d = discrepancy_of_sizes(sizes, c);
        FanEmit em = fan_filter_emit(P, phi, ids, c - 2, &full);
        for (const WitnessTriangle& w : em.triangles) {
            if (removal_tris.insert(w.tri).second) r.triangles.push_back(w);
        }
        r.claimed_bound = discrepancy_bound(d.value, static_cast<std::int64_t>(ids.size()), c);
        const auto pre =
            linear_check("delta(S) > 4(c-1)/c", d.value, c, std::int64_t(4) * (c - 1), c);
        r.bound_supported = pre.exceeded;
        if (!r.bound_supported)
            r.bound_note = "asymptotic-regime-only: delta below the 4(c-1)/c floor at this size";
        e.checks.push_back(pre);
    };

    for (std::int64_t t = 0;; ++t) {
        TraceEntry e;
        e.step = static_cast<int>(t);
        e.class_sizes_current = class_sizes(phi, cur);
        e.subset_size = static_cast<std::int64_t>(cur.size());

        if (t >= t_max) {
            e.branch = "stop";
            e.note = "step limit floor(n/(c+1)) reached";
            r.claimed_bound = removal_steps * icbrt_floor(n) / 18;
            r.bound_supported = false;
            r.bound_note = "asymptotic-regime-only: stop-branch bound not claimed at finite n";
            r.trace.push_back(std::move(e));
            break;
        }

        // (1) discrepancy of the working set
        const ScaledDiscrepancy d_cur = discrepancy_of_sizes(e.class_sizes_current, c);
        e.checks.push_back(
            cbrt_check("delta(P_t) > K n^(1/3)", d_cur.value, c, k_num, k_den, n));
        if (e.checks.back().exceeded) {
            e.branch = "discrepancy";
            emit_discrepancy(cur, e);
            r.trace.push_back(std::move(e));
            break;
        }

        // (2) peel to the hull of the leading color
        std::vector<int> ones;
        for (int id : cur)
            if (phi.color_of(id) == a1) ones.push_back(id);
        if (ones.size() < 3) {
            e.branch = "stop";
            e.note = "degenerate: leading color class below 3 points";
            r.claimed_bound = removal_steps * icbrt_floor(n) / 18;
            r.bound_supported = false;
            r.bound_note = "asymptotic-regime-only";
            r.trace.push_back(std::move(e));
            break;
        }
        const std::vector<int> hull = convex_hull(P, ones);
        std::vector<int> peeled;
        peeled.reserve(cur.size());
        for (int id : cur) {
            if (phi.color_of(id) == a1) {
                peeled.push_back(id);
                continue;
            }
            bool outside = false;
            for (std::size_t h = 0; h < hull.size() && !outside; ++h) {
                const Point& u = P[hull[h]];
                const Point& v = P[hull[(h + 1) % hull.size()]];
                if (orient(u, v, P[id]) > 0) outside = true; // hull is clockwise
            }
            if (!outside) peeled.push_back(id);
        }
        e.class_sizes_peeled = class_sizes(phi, peeled);
        e.peeled_size = static_cast<std::int64_t>(peeled.size());
        e.hull_size = static_cast<std::int64_t>(hull.size());

        const ScaledDiscrepancy d_q = discrepancy_of_sizes(e.class_sizes_peeled, c);
        e.checks.push_back(cbrt_check("delta(Q) > K n^(1/3)", d_q.value, c, k_num, k_den, n));
        if (e.checks.back().exceeded) {
            e.branch = "discrepancy";
            emit_discrepancy(peeled, e);
            r.trace.push_back(std::move(e));
            break;
        }

        // (3) oversized hull: its removal leaves a high-discrepancy core
        e.checks.push_back(cbrt_check("|V(CH(Q))| > K' n^(1/3)",
                                      static_cast<std::int64_t>(hull.size()), 1, k2_num, k2_den,
                                      n));
        if (e.checks.back().exceeded) {
            e.branch = "hull-size";
            std::vector<char> is_hull(std::size_t(n), 0);
            for (int h : hull) is_hull[std::size_t(h)] = 1;
            std::vector<int> core;
            for (int id : peeled)
                if (!is_hull[std::size_t(id)]) core.push_back(id);
            emit_discrepancy(core, e);
            r.trace.push_back(std::move(e));
            break;
        }

        // (4) fan regions
        const FanDecomposition fd = fan_decompose(P, peeled);
        const int R = static_cast<int>(fd.hull.size());
        int hot = -1;
        ScaledDiscrepancy d_hot{};
        for (int b = 0; b + 2 < R; ++b) {
            const ScaledDiscrepancy db = discrepancy(phi, fd.regions[std::size_t(b)]);
            if (db.exceeds_cbrt(k2_num, k2_den, n)) {
                hot = b;
                d_hot = db;
                break;
            }
        }
        if (hot >= 0) {
            e.branch = "fan-region";
            e.region = hot;
            e.checks.push_back(cbrt_check("delta(T_b cap Q) > K' n^(1/3)", d_hot.value, c, k2_num,
                                          k2_den, n));
            std::vector<int> prefix, suffix;
            for (int b = 0; b < hot; ++b)
                prefix.insert(prefix.end(), fd.regions[std::size_t(b)].begin(),
                              fd.regions[std::size_t(b)].end());
            for (int b = hot + 1; b + 2 < R; ++b)
                suffix.insert(suffix.end(), fd.regions[std::size_t(b)].begin(),
                              fd.regions[std::size_t(b)].end());
            const auto& mid = fd.regions[std::size_t(hot)];

            auto half_exceeds = [&](const ScaledDiscrepancy& d) {
                return d.exceeds_cbrt(k2_num, 2 * k2_den, n);
            };
            std::vector<int> chosen;
            if (mid.size() >= prefix.size() && mid.size() >= suffix.size()) {
                chosen = mid;
                e.note = "majority region is T_b itself";
            } else {
                const bool use_prefix = prefix.size() >= suffix.size();
                TbSplitResult sp =
                    tb_split_core(phi, mid, use_prefix ? prefix : suffix, half_exceeds);
                e.note = std::string(use_prefix ? "prefix" : "suffix") + " majority, split side " +
                         std::to_string(sp.side);
                e.checks.push_back(cbrt_check("delta(split) > K' n^(1/3) / 2", sp.delta.value, c,
                                              k2_num, 2 * k2_den, n));
                chosen = std::move(sp.ids);
            }
            emit_discrepancy(chosen, e);
            r.trace.push_back(std::move(e));
            break;
        }

        // (5) remove the best-connected hull corner of the fullest region
        int best_b = 0;
        std::int64_t best_ones = -1;
        for (int b = 0; b + 2 < R; ++b) {
            std::int64_t cnt = 0;
            for (int id : fd.regions[std::size_t(b)])
                if (phi.color_of(id) == a1) ++cnt;
            if (cnt > best_ones) {
                best_ones = cnt;
                best_b = b;
            }
        }
        e.branch = "p*-removal";
        e.region = best_b;

        std::vector<int> restrict_ids;
        for (int id : fd.regions[std::size_t(best_b)])
            if (phi.color_of(id) == a1) restrict_ids.push_back(id);
        const std::array<int, 3> corners{fd.hull[0], fd.hull[std::size_t(best_b) + 1],
                                         fd.hull[std::size_t(best_b) + 2]};
        for (int cr : corners) restrict_ids.push_back(cr);

        const auto inc = per_point_incidence(P, full, c - 2, restrict_ids);
        int pstar = corners[0];
        for (int cr : corners)
            if (inc[std::size_t(cr)] > inc[std::size_t(pstar)] ||
                (inc[std::size_t(cr)] == inc[std::size_t(pstar)] && cr < pstar))
                pstar = cr;

        // record the filtered triangles incident to p*
        const int kk = static_cast<int>(restrict_ids.size());
        for (int ai = 0; ai < kk; ++ai)
            for (int bi = ai + 1; bi < kk; ++bi) {
                const int u = restrict_ids[std::size_t(ai)], v = restrict_ids[std::size_t(bi)];
                if (u == pstar || v == pstar) continue;
                const TriangleIdx tri(pstar, u, v);
                const int it = interior_count_fast(full, P, tri);
                if (it <= c - 2 && removal_tris.insert(tri).second)
                    r.triangles.push_back(WitnessTriangle{tri, a1, it});
            }
        ++removal_steps;
        e.removed_id = pstar;
        e.note = "removed hull corner with incidence " +
                 std::to_string(inc[std::size_t(pstar)]);
        r.trace.push_back(std::move(e));

        std::vector<int> next;
        next.reserve(peeled.size() - 1);
        for (int id : peeled)
            if (id != pstar) next.push_back(id);
        cur = std::move(next);
    }

    certify_report(P, phi, r);
    return r;
}

} // namespace aemt
