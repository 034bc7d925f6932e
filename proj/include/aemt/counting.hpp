#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aemt/geometry.hpp"

namespace aemt {

/// Number of points of P strictly inside triangle t, by direct scan.
/// This is the O(n) reference everything else is checked against.
int interior_count_oracle(const PointSet& P, const TriangleIdx& t);

// Per ordered lexicographic pair (a,b): the number of points strictly
// between a and b in lex order and strictly on the negative-orientation
// side of the directed segment a->b. Three lookups give any triangle's
// interior count in O(1).
class BelowTable {
public:
    static BelowTable build(const PointSet& P);

    int size() const { return n_; }
    int lex_rank(int id) const { return lexrank_[std::size_t(id)]; }
    int lex_id(int rank) const { return lexperm_[std::size_t(rank)]; }

    // counts indexed by lex ranks, ra < rb
    std::int32_t at(int ra, int rb) const {
        return counts_[std::size_t(ra) * std::size_t(n_) + std::size_t(rb)];
    }

    std::size_t memory_bytes() const { return counts_.size() * sizeof(std::int32_t); }

private:
    int n_ = 0;
    std::vector<int> lexperm_;
    std::vector<int> lexrank_;
    std::vector<std::int32_t> counts_;
};

/// Interior count via three table lookups; equals interior_count_oracle.
int interior_count_fast(const BelowTable& T, const PointSet& P, const TriangleIdx& t);

// Histogram of triangles by exact interior count, up to r_max.
struct InteriorProfile {
    int n = 0;
    int r_max = 0;
    std::vector<std::uint64_t> z; // z[r] = #{triangles with exactly r interior points}, r <= r_max

    std::vector<std::uint64_t> prefix() const; // Z_{<=s} for s = 0..r_max
};

struct CountOptions {
    int workers = 1;
    // Above this the pair table is not allocated and counts are recomputed
    // radially per anchor; outputs are identical, only slower.
    std::size_t table_memory_limit = std::size_t(1) << 30;
};

InteriorProfile profile(const PointSet& P, int r_max, const CountOptions& opt = {});
InteriorProfile profile(const PointSet& P, int r_max, const BelowTable& T, int workers);

/// For each point id: the number of triangles with at most s interior points
/// (interior counted against all of P) incident to it. Vertices range over
/// `restrict` when given, otherwise over the whole set.
std::vector<std::uint64_t> per_point_incidence(const PointSet& P, const BelowTable& T, int s,
                                               std::span<const int> restrict_ids = {});

/// All triangles with at most s interior points, vertices over the whole set.
std::vector<TriangleIdx> almost_empty_triangles(const PointSet& P, const BelowTable& T, int s);

} // namespace aemt
