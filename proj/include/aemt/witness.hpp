#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "aemt/chromatic.hpp"
#include "aemt/counting.hpp"
#include "aemt/geometry.hpp"

namespace aemt {

// One exact comparison made by a witness algorithm. Everything needed to
// re-derive `exceeded` is logged as plain integers: cube-root thresholds are
// decided by cubing both sides, never by floating-point roots.
struct ThresholdCheck {
    std::string label;
    bool cuberoot = false; // value/vden > (num/den) * n^(1/3), else value/vden > num/den
    std::int64_t value_num = 0;
    std::int64_t value_den = 1;
    std::int64_t coeff_num = 0;
    std::int64_t coeff_den = 1;
    std::int64_t n = 0;
    bool exceeded = false;

    bool recompute() const {
        const int128 lhs = int128(value_num) * coeff_den;
        const int128 rhs = int128(coeff_num) * value_den;
        if (!cuberoot) return lhs > rhs;
        return lhs * lhs * lhs > rhs * rhs * rhs * n;
    }
};

struct TraceEntry {
    int step = -1;
    std::string branch; // discrepancy | hull-size | fan-region | p*-removal | stop | star
    std::vector<std::int64_t> class_sizes_current; // classes of the working set
    std::int64_t subset_size = 0;
    std::vector<std::int64_t> class_sizes_peeled;  // classes of Q when built
    std::int64_t peeled_size = -1;
    std::int64_t hull_size = -1;
    int region = -1;     // 0-based fan region picked, if any
    int removed_id = -1; // p* when a point was removed
    std::string note;
    std::vector<ThresholdCheck> checks;
};

struct WitnessTriangle {
    TriangleIdx tri;
    int color = 0;
    int interior = 0; // against the report's universe
};

// A certified batch of monochromatic almost-empty triangles plus the trace
// of the algorithm run that produced it.
struct WitnessReport {
    std::string mode; // star | discrepancy | thm2
    int n = 0;
    int c = 0;
    int s_cap = 0;
    std::vector<int> universe; // ids interior counts refer to; empty = whole set
    std::vector<WitnessTriangle> triangles;
    std::int64_t claimed_bound = 0;
    bool bound_supported = false;
    std::string bound_note;
    std::vector<TraceEntry> trace;
};

/// Re-checks every triangle of the report against the direct-scan oracle:
/// monochromatic in the stated color, interior count exact and within s_cap,
/// all triangles distinct, and claimed_bound covered when supported.
/// Returns the certified count; throws internal_check_error on any failure.
std::uint64_t certify_report(const PointSet& P, const Coloring& phi, const WitnessReport& r);

/// Fan of the apex over its angularly consecutive neighbors within the given
/// ids. Each returned triangle contains no point of the id set in its
/// interior; count is |ids|-2 for a hull apex, |ids|-1 for an interior one.
std::vector<TriangleIdx> star_fan(const PointSet& P, std::span<const int> ids, int apex);

/// Star-argument witness: for every apex of the largest class, the fan
/// triangles with at most c-1 interior points of the whole set. The bound
/// floor(|P1|^2 / 6c) is guaranteed once n >= 4c^2.
WitnessReport star_witness(const PointSet& P, const Coloring& phi);

/// Discrepancy-argument witness over a subset S: fans of S's largest class
/// filtered to at most c-2 interior points of S. Requires the exact scaled
/// test delta(S) > 4(c-1)/c; the bound ceil(delta(S)|S| / 6c) is then
/// guaranteed.
WitnessReport discrepancy_witness(const PointSet& P, const Coloring& phi,
                                  std::span<const int> subset = {});

// Triangulation of outer triangle + interior points; faces index 0,1,2 for
// the outer vertices, then 3.. for the interior points in input order.
struct AnchorTriangulation {
    std::vector<std::array<int, 3>> faces; // always 2m+1 of them
    int incidence = 0;                     // faces touching an outer vertex
    bool from_fallback = false;
};

/// Triangulates the m interior points against the outer triangle so that at
/// least ceil(m + sqrt(m) + 1) faces touch an outer vertex. Primary strategy
/// is greedy insertion plus corner fans with an exact polygon sweep; an
/// exhaustive search over all triangulations is the fallback for m <= 10.
/// Throws internal_check_error when the bound cannot be met.
AnchorTriangulation anchor_triangulate(const std::array<Point, 3>& outer,
                                       const std::vector<Point>& inner);

/// Validity check used by anchor_triangulate and its tests: 2m+1 faces,
/// point-free, area partition, consistent edge sharing.
void verify_triangulation(const std::array<Point, 3>& outer, const std::vector<Point>& inner,
                          const std::vector<std::array<int, 3>>& faces);

/// The exhaustive fallback on its own: searches all triangulations for one
/// meeting the incidence bound. Intended for m <= 10.
AnchorTriangulation anchor_triangulate_exhaustive(const std::array<Point, 3>& outer,
                                                  const std::vector<Point>& inner);

// Fan decomposition of CH(subset) from its lex-smallest hull vertex: region
// b holds the member ids strictly inside triangle (p1, p_{b+2}, p_{b+3})
// (hull positions 0, b+1, b+2; regions are 0-based here).
struct FanDecomposition {
    std::vector<int> hull;                 // clockwise
    std::vector<std::vector<int>> regions; // size hull.size()-2
    std::vector<int> diagonal_incident;    // ids placed by the lower-region policy
};

FanDecomposition fan_decompose(const PointSet& P, std::span<const int> subset);

struct TbSplitResult {
    int side = 0; // 2 = prefix without b, 3 = prefix with b
    std::vector<int> ids;
    ScaledDiscrepancy delta;
};

/// Splits a high-discrepancy fan region off its prefix union: returns
/// whichever of prefix-without-b / prefix-with-b has delta > threshold/2
/// (scaled integers throughout). At least one must qualify; anything else
/// throws internal_check_error.
TbSplitResult tb_split(const Coloring& phi, const std::vector<std::vector<int>>& regions, int b,
                       std::int64_t threshold_scaled);

struct PeelingOptions {
    int workers = 1;
    // Override the branch thresholds (numerator/denominator applied to
    // n^(1/3)). Zero keeps the standard constants 1/(8c^5) and (2c+1)/(8c^4).
    // The deep branches are unreachable below astronomically large n with
    // the standard constants, so tests drive them through these knobs.
    std::int64_t k_num = 0, k_den = 0;
    std::int64_t k2_num = 0, k2_den = 0;
};

/// The full recursive hull-peeling run: discrepancy short-circuits, hull-size
/// branch, fan-region split, and p*-removal recursion, with every threshold
/// decided in exact integer arithmetic and logged. Emitted triangles carry at
/// most c-2 interior points of the whole set and are oracle-certified.
WitnessReport peeling_witness(const PointSet& P, const Coloring& phi,
                              const PeelingOptions& opt = {});

} // namespace aemt
