#pragma once

#include <optional>
#include <string>

#include "aemt/chromatic.hpp"
#include "aemt/counting.hpp"
#include "aemt/geometry.hpp"
#include "aemt/montecarlo.hpp"
#include "aemt/search.hpp"
#include "aemt/witness.hpp"

#include <json.hpp>

namespace aemt {

struct LoadOptions {
    bool allow_degenerate = false;
    std::optional<double> scale; // multiply real-valued inputs, then round
};

struct LoadedFile {
    PointSet points;
    std::optional<Coloring> coloring;
    std::optional<Violation> violation; // only populated under allow_degenerate
};

/// CSV (columns x,y[,color], optional header) or JSON
/// {"points": [[x,y],...], "colors": [...], "c": int}. Fails with line
/// numbers on malformed rows; validates general position unless allowed.
LoadedFile load_points(const std::string& path, const LoadOptions& opt = {});

/// Decimal string with 12 significant digits; the only float format emitted.
std::string decimal12(double v);

nlohmann::json to_json(const Violation& v);
nlohmann::json to_json(const InteriorProfile& p);
nlohmann::json to_json(const ThresholdCheck& c);
nlohmann::json to_json(const TraceEntry& e);
nlohmann::json to_json(const WitnessReport& r);
nlohmann::json to_json(const EstimateRow& row);
nlohmann::json to_json(const EstimateReport& rep);
nlohmann::json to_json(const SearchResult& res);
nlohmann::json to_json(const BoundReport& rep);

std::string coloring_string(const Coloring& phi);
Coloring parse_coloring(const std::string& text, int c);

std::string estimate_csv(const EstimateReport& rep);

} // namespace aemt
