#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dwbec/bifurcation.hpp"
#include "dwbec/fluctuation.hpp"
#include "dwbec/quantum.hpp"

namespace dwbec {

/// Shortest round-trip decimal representation.
std::string format_double(double v);

nlohmann::json to_json(const FixedPoint& fp);
FixedPoint fixed_point_from_json(const nlohmann::json& j);
nlohmann::json to_json(const std::vector<FixedPoint>& fps);

nlohmann::json to_json(const CriticalResult& r);
CriticalResult critical_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CoefficientSet& cs);
nlohmann::json to_json(const FluctuationReport& r);
FluctuationReport fluctuation_from_json(const nlohmann::json& j);

/// Moments and energy only; amplitude and phase dumps go to CSV.
nlohmann::json to_json(const QuantumGroundReport& r);
nlohmann::json to_json(const DoubletReport& r);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace dwbec
