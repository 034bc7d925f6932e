#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aemt/common.hpp"

namespace aemt {

// Planar point with integer coordinates. Coordinates are kept within the
// signed 32-bit range so that the 2x2 orientation determinant of coordinate
// differences is exact in 128-bit arithmetic.
struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline constexpr std::int64_t kCoordLimit = std::int64_t(1) << 31; // exclusive

// Lexicographic order, x before y. Stands in everywhere for "sorted by x
// with an infinitesimal clockwise shear": it breaks vertical ties without
// any slope arithmetic.
inline bool lex_less(const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

/// Sign of the determinant (b-a) x (c-a): +1 counterclockwise, -1 clockwise,
/// 0 collinear. Exact for all in-range inputs.
inline int orient(const Point& a, const Point& b, const Point& c) {
    const int128 det = int128(b.x - a.x) * int128(c.y - a.y) -
                       int128(b.y - a.y) * int128(c.x - a.x);
    return (det > 0) - (det < 0);
}

/// True iff p lies in the open interior of triangle (a,b,c).
/// Vertices and boundary points are outside.
inline bool strictly_inside(const Point& p, const Point& a, const Point& b, const Point& c) {
    const int o = orient(a, b, c);
    if (o == 0) throw precondition_error("strictly_inside: degenerate triangle");
    return orient(a, b, p) == o && orient(b, c, p) == o && orient(c, a, p) == o;
}

// Triangle by point ids, canonical i < j < k.
struct TriangleIdx {
    int i = 0, j = 0, k = 0;

    TriangleIdx() = default;
    TriangleIdx(int a, int b, int c);

    friend bool operator==(const TriangleIdx&, const TriangleIdx&) = default;
    friend bool operator<(const TriangleIdx& l, const TriangleIdx& r) {
        if (l.i != r.i) return l.i < r.i;
        if (l.j != r.j) return l.j < r.j;
        return l.k < r.k;
    }
};

// Immutable point set; ids are positions 0..n-1. General position (no
// duplicates, no collinear triple) is a documented precondition of most
// operations and is checked at ingestion, not per call.
class PointSet {
public:
    PointSet() = default;
    explicit PointSet(std::vector<Point> pts);

    int size() const { return static_cast<int>(pts_.size()); }
    const Point& operator[](int id) const { return pts_[std::size_t(id)]; }
    const std::vector<Point>& points() const { return pts_; }

private:
    std::vector<Point> pts_;
};

// Outcome of a general-position scan. At most one offending tuple is
// reported; ids come back sorted.
struct Violation {
    enum class Kind { duplicate, collinear };
    Kind kind;
    std::array<int, 3> ids; // duplicate uses ids[0], ids[1]
};

/// ok (nullopt) iff the set has no duplicate pair and no collinear triple.
std::optional<Violation> validate_general_position(const PointSet& P);

/// Extreme points of P in clockwise cyclic order, starting from the
/// lexicographically smallest point. Requires |P| >= 3 in general position.
std::vector<int> convex_hull(const PointSet& P);
std::vector<int> convex_hull(const PointSet& P, std::span<const int> subset);

} // namespace aemt
