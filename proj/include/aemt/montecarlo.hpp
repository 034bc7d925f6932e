#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aemt/chromatic.hpp"
#include "aemt/counting.hpp"
#include "aemt/geometry.hpp"

namespace aemt {

struct GeneratorConfig {
    int n = 3;
    int grid_bits = 31; // points sampled on a 2^bits x 2^bits grid
    std::uint64_t seed = 0;
    int trials = 1;
    int workers = 1;
};

struct GeneratedSet {
    PointSet points;
    std::int64_t resamples = 0;
};

/// n i.i.d. uniform grid points in general position; a duplicate or collinear
/// triple resamples the offending point. Deterministic per (seed, trial).
/// Throws precondition_error after 10^6 resamples (grid too coarse).
GeneratedSet gen_uniform(const GeneratorConfig& cfg, int trial);

// One estimated quantity: mean over trials of count/n^2 with spread.
struct EstimateRow {
    int n = 0;
    int s = 0;
    std::string stat; // "z_eq" | "z_le" | "mono"
    int trials = 0;
    double mean = 0.0;
    std::optional<double> sd;    // unset when trials < 2
    std::optional<double> ci_lo; // 95% normal CI
    std::optional<double> ci_hi;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> per_trial; // raw counts, the exact basis of the stats
};

struct EstimateReport {
    GeneratorConfig config;
    int c = 0; // 0 when no coloring involved
    std::vector<EstimateRow> rows;
    std::vector<std::int64_t> resamples_per_trial;
};

/// Z_{=s}/n^2 and Z_{<=s}/n^2 statistics for s = 0..s_max over seeded trials.
EstimateReport estimate_interior(const GeneratorConfig& cfg, int s_max);

/// X^{(c)}_{<=s}/n^2 statistics: each trial draws a fresh point set and a
/// fresh uniform coloring.
EstimateReport estimate_mono(const GeneratorConfig& cfg, int c, int s);

/// Relative error of an adaptive quadrature of integral |z|^s e^{-lambda|z|/2} dz
/// over the real line against the closed form 2^{s+2} s! / lambda^{s+1}.
double gamma_integral_check(double lambda, int s);

struct ConvergenceRow {
    EstimateReport report;
    std::vector<double> distance_to_limit; // |mean z_le(s)/n^2 - 2(s+1)| per s
};

/// One estimate row per n, with the distance-to-limit diagnostic per s.
std::vector<ConvergenceRow> convergence_table(const std::vector<int>& ns, int s_max,
                                              const GeneratorConfig& base);

} // namespace aemt
