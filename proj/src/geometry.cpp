#include "aemt/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace aemt {

TriangleIdx::TriangleIdx(int a, int b, int c) {
    if (a == b || b == c || a == c)
        throw precondition_error("TriangleIdx: ids must be distinct");
    i = a; j = b; k = c;
    if (i > j) std::swap(i, j);
    if (j > k) std::swap(j, k);
    if (i > j) std::swap(i, j);
}

PointSet::PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
    for (const Point& p : pts_) {
        if (p.x <= -kCoordLimit || p.x >= kCoordLimit ||
            p.y <= -kCoordLimit || p.y >= kCoordLimit)
            throw precondition_error("PointSet: coordinate out of 32-bit range");
    }
}

std::optional<Violation> validate_general_position(const PointSet& P) {
    const int n = P.size();

    // Duplicates: lexicographic sort, adjacent equality.
    std::vector<int> order(std::size_t(n), 0);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return lex_less(P[a], P[b]); });
    for (int t = 0; t + 1 < n; ++t) {
        if (P[order[std::size_t(t)]] == P[order[std::size_t(t) + 1]]) {
            int a = order[std::size_t(t)], b = order[std::size_t(t) + 1];
            if (a > b) std::swap(a, b);
            return Violation{Violation::Kind::duplicate, {a, b, -1}};
        }
    }

    // Collinear triples: around each anchor, two other points are collinear
    // with it iff their direction vectors are parallel. Fold every direction
    // into the right half-plane and sort by exact cross product; parallel
    // directions land adjacent.
    std::vector<std::pair<Point, int>> dirs;
    for (int a = 0; a < n; ++a) {
        dirs.clear();
        dirs.reserve(std::size_t(n) - 1);
        for (int b = 0; b < n; ++b) {
            if (b == a) continue;
            Point d{P[b].x - P[a].x, P[b].y - P[a].y};
            if (d.x < 0 || (d.x == 0 && d.y < 0)) { d.x = -d.x; d.y = -d.y; }
            dirs.emplace_back(d, b);
        }
        std::sort(dirs.begin(), dirs.end(), [](const auto& u, const auto& v) {
            const int128 cr = int128(u.first.x) * v.first.y - int128(u.first.y) * v.first.x;
            if (cr != 0) return cr > 0;
            return u.second < v.second;
        });
        for (std::size_t t = 0; t + 1 < dirs.size(); ++t) {
            const int128 cr = int128(dirs[t].first.x) * dirs[t + 1].first.y -
                              int128(dirs[t].first.y) * dirs[t + 1].first.x;
            if (cr == 0) {
                std::array<int, 3> ids{a, dirs[t].second, dirs[t + 1].second};
                std::sort(ids.begin(), ids.end());
                return Violation{Violation::Kind::collinear, ids};
            }
        }
    }
    return std::nullopt;
}

std::vector<int> convex_hull(const PointSet& P) {
    std::vector<int> all(std::size_t(P.size()));
    std::iota(all.begin(), all.end(), 0);
    return convex_hull(P, all);
}

std::vector<int> convex_hull(const PointSet& P, std::span<const int> subset) {
    const int m = static_cast<int>(subset.size());
    if (m < 3) throw precondition_error("convex_hull: need at least 3 points");

    std::vector<int> order(subset.begin(), subset.end());
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return lex_less(P[a], P[b]); });

    // Monotone chain. Upper chain left-to-right, then lower chain
    // right-to-left, gives the clockwise cycle starting at the lex-min point.
    auto build = [&](bool upper) {
        std::vector<int> chain;
        for (int t = 0; t < m; ++t) {
            const int id = order[std::size_t(upper ? t : m - 1 - t)];
            while (chain.size() >= 2) {
                const int o = orient(P[chain[chain.size() - 2]], P[chain.back()], P[id]);
                if (o >= 0) chain.pop_back(); // keep strict right turns only
                else break;
            }
            chain.push_back(id);
        }
        return chain;
    };

    std::vector<int> hull = build(true);
    std::vector<int> lower = build(false);
    hull.insert(hull.end(), lower.begin() + 1, lower.end() - 1);
    return hull;
}

} // namespace aemt
