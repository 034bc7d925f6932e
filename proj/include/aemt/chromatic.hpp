#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aemt/counting.hpp"
#include "aemt/geometry.hpp"
#include "aemt/rng.hpp"

namespace aemt {

// Assignment of each point to one of c color classes, values 1..c.
struct Coloring {
    std::vector<std::uint8_t> colors;
    int c = 0;

    Coloring() = default;
    Coloring(std::vector<std::uint8_t> cols, int num_colors);

    int size() const { return static_cast<int>(colors.size()); }
    int color_of(int id) const { return colors[std::size_t(id)]; }
};

// c * delta(S) kept as an exact integer: c * max_a|S_a| - |S|. Every
// threshold comparison downstream clears denominators instead of rounding.
struct ScaledDiscrepancy {
    std::int64_t value = 0; // c * delta(S), always >= 0
    int c = 0;

    // delta(S) > num/den
    bool exceeds_fraction(std::int64_t num, std::int64_t den) const {
        return int128(value) * den > int128(num) * c;
    }
    // delta(S) > (num/den) * n^(1/3), compared by cubing both sides
    bool exceeds_cbrt(std::int64_t num, std::int64_t den, std::int64_t n) const {
        const int128 lhs = int128(value) * den;
        const int128 rhs = int128(num) * c;
        return lhs * lhs * lhs > rhs * rhs * rhs * n;
    }
};

/// |S_a| for each color a (index 0 = color 1); restricted to the given ids
/// when provided.
std::vector<std::int64_t> class_sizes(const Coloring& phi, std::span<const int> restrict_ids = {});

ScaledDiscrepancy discrepancy(const Coloring& phi, std::span<const int> restrict_ids = {});
ScaledDiscrepancy discrepancy_of_sizes(std::span<const std::int64_t> sizes, int c);

/// Checks |S|/c - (c-1)*delta <= |S_a| <= |S|/c + delta for every class, in
/// exact scaled arithmetic. This always holds; it exists so property tests
/// can hammer it.
bool class_bounds_check(const Coloring& phi, std::span<const int> restrict_ids = {});

/// Largest color class, ties broken by smallest color index. Returns the
/// color value (1-based).
int largest_class(std::span<const std::int64_t> sizes);

/// Number of triangles whose three vertices share a color and whose open
/// interior contains at most s points of P (any color).
std::uint64_t mono_count(const PointSet& P, const BelowTable& T, const Coloring& phi, int s);
std::uint64_t mono_count(const PointSet& P, const Coloring& phi, int s);

/// i.i.d. uniform colors, reproducible from the seed.
Coloring random_coloring(int n, int c, std::uint64_t seed);

} // namespace aemt
