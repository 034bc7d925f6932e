#include "aemt/chromatic.hpp"

#include <algorithm>

namespace aemt {

Coloring::Coloring(std::vector<std::uint8_t> cols, int num_colors)
    : colors(std::move(cols)), c(num_colors) {
    if (c < 2 || c > 255) throw precondition_error("Coloring: need 2 <= c <= 255");
    for (std::uint8_t v : colors)
        if (v < 1 || v > c) throw precondition_error("Coloring: color value out of range");
}

std::vector<std::int64_t> class_sizes(const Coloring& phi, std::span<const int> restrict_ids) {
    std::vector<std::int64_t> sizes(std::size_t(phi.c), 0);
    if (restrict_ids.empty()) {
        for (std::uint8_t v : phi.colors) ++sizes[std::size_t(v) - 1];
    } else {
        for (int id : restrict_ids) ++sizes[std::size_t(phi.color_of(id)) - 1];
    }
    return sizes;
}

ScaledDiscrepancy discrepancy_of_sizes(std::span<const std::int64_t> sizes, int c) {
    std::int64_t total = 0, mx = 0;
    for (std::int64_t s : sizes) {
        total += s;
        mx = std::max(mx, s);
    }
    return ScaledDiscrepancy{c * mx - total, c};
}

ScaledDiscrepancy discrepancy(const Coloring& phi, std::span<const int> restrict_ids) {
    const auto sizes = class_sizes(phi, restrict_ids);
    return discrepancy_of_sizes(sizes, phi.c);
}

bool class_bounds_check(const Coloring& phi, std::span<const int> restrict_ids) {
    const auto sizes = class_sizes(phi, restrict_ids);
    const ScaledDiscrepancy d = discrepancy_of_sizes(sizes, phi.c);
    std::int64_t total = 0;
    for (std::int64_t s : sizes) total += s;
    // multiply the bounds through by c: |S| - (c-1)*v <= c*|S_a| <= |S| + v
    for (std::int64_t s : sizes) {
        const std::int64_t lhs = total - (phi.c - 1) * d.value;
        const std::int64_t rhs = total + d.value;
        if (phi.c * s < lhs || phi.c * s > rhs) return false;
    }
    return true;
}

int largest_class(std::span<const std::int64_t> sizes) {
    int best = 0;
    for (int a = 1; a < static_cast<int>(sizes.size()); ++a)
        if (sizes[std::size_t(a)] > sizes[std::size_t(best)]) best = a;
    return best + 1;
}

std::uint64_t mono_count(const PointSet& P, const BelowTable& T, const Coloring& phi, int s) {
    if (phi.size() != P.size()) throw precondition_error("mono_count: coloring size mismatch");
    // group ids by class; only same-class triples can contribute
    std::vector<std::vector<int>> classes{std::size_t(phi.c)};
    for (int id = 0; id < P.size(); ++id)
        classes[std::size_t(phi.color_of(id)) - 1].push_back(id);

    std::uint64_t total = 0;
    for (const auto& ids : classes) {
        const int k = static_cast<int>(ids.size());
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                for (int d = b + 1; d < k; ++d) {
                    const TriangleIdx t(ids[std::size_t(a)], ids[std::size_t(b)],
                                        ids[std::size_t(d)]);
                    if (interior_count_fast(T, P, t) <= s) ++total;
                }
    }
    return total;
}

std::uint64_t mono_count(const PointSet& P, const Coloring& phi, int s) {
    const BelowTable T = BelowTable::build(P);
    return mono_count(P, T, phi, s);
}

Coloring random_coloring(int n, int c, std::uint64_t seed) {
    if (c < 2) throw precondition_error("random_coloring: need c >= 2");
    Rng rng(seed);
    std::vector<std::uint8_t> cols(std::size_t(n), 0);
    for (auto& v : cols) v = static_cast<std::uint8_t>(1 + rng.below(std::uint64_t(c)));
    return Coloring(std::move(cols), c);
}

} // namespace aemt
