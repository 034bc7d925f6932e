#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "aemt/chromatic.hpp"
#include "aemt/witness.hpp"

namespace aemt {

struct SearchResult {
    Coloring best;
    std::uint64_t value = 0;
    std::string method; // "exhaustive" | "local"
    std::uint64_t iterations = 0;
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    bool certified = false; // true only for exhaustive runs
};

/// Exact minimum of mono_count over all c-colorings, searched over canonical
/// colorings only (first occurrences of colors appear in order, which fixes
/// the label permutation). Guarded by c^n / c! <= 10^7.
SearchResult exhaustive_min(const PointSet& P, int c, int s);

/// Simulated annealing over single-point recolor moves with incremental
/// counting; an upper bound on the true minimum. budget = proposed moves.
SearchResult local_min(const PointSet& P, int c, int s, std::uint64_t seed, std::uint64_t budget);

// Side-by-side record of the searched upper bounds and the witness bounds
// for the searched coloring.
struct BoundReport {
    int n = 0, c = 0, s = 0;
    SearchResult local;
    std::optional<SearchResult> exhaustive;
    std::uint64_t mono_star_cap = 0; // mono_count(P, phi*, c-1)
    std::uint64_t star_certified = 0;
    bool star_supported = false; // n >= 4c^2
    std::optional<std::uint64_t> discrepancy_certified;
    std::optional<std::int64_t> discrepancy_claimed;
};

BoundReport bound_report(const PointSet& P, int c, int s, std::uint64_t seed = 1,
                         std::uint64_t budget = 20000);

} // namespace aemt
