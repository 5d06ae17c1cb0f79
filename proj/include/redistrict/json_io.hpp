#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "redistrict/countysnap.hpp"
#include "redistrict/fairness.hpp"
#include "redistrict/report.hpp"
#include "redistrict/splitline.hpp"

namespace redistrict {

nlohmann::json to_json(SplitLine line);
nlohmann::json to_json(const SplitRecord& record);
nlohmann::json to_json(const SnappedDivide& divide);
nlohmann::json to_json(const SnapRecord& record);
nlohmann::json to_json(const BalanceSummary& summary);
nlohmann::json to_json(const IntegritySummary& summary);
nlohmann::json to_json(const FairnessReport& report);

/// {m, n, ratios[], stateRatio?, alphaAllow?}. `n` may also be a list of
/// per-district counts, which must all be equal (HETEROGENEOUS_N otherwise).
FairnessInput parse_fairness_input(std::string_view text);

/// Two-space indent, keys sorted, trailing newline.
std::string dump_json(const nlohmann::json& doc);

}  // namespace redistrict
