#include "redistrict/json_io.hpp"

#include <cmath>

#include "redistrict/error.hpp"

namespace redistrict {

using nlohmann::json;

json to_json(SplitLine line) {
  return json{{"axis", axis_name(line.axis)}, {"index", line.index}};
}

json to_json(const SplitRecord& record) {
  return json{{"line", to_json(record.line)},
              {"districtsA", record.districtsA},
              {"districtsB", record.districtsB},
              {"regionPopulation", record.regionPopulation},
              {"targetPopulation", record.targetPopulation},
              {"sideAPopulation", record.sideAPopulation},
              {"maxSlicePopulation", record.maxSlicePopulation}};
}

json to_json(const SnappedDivide& divide) {
  json segments = json::array();
  for (const auto& seg : divide.segments) {
    json entry{{"spanStart", seg.segment.spanStart},
               {"spanEnd", seg.segment.spanEnd},
               {"kind", segment_kind_name(seg.segment.kind)},
               {"countyBefore", seg.segment.beforeCounty},
               {"countyAfter", seg.segment.afterCounty},
               {"path", static_cast<int>(seg.path)},
               {"s", seg.lens.s},
               {"lensCells", seg.lens.cells.size()}};
    segments.push_back(std::move(entry));
  }
  return json{{"baseLine", to_json(divide.baseLine)},
              {"points", divide.points},
              {"segments", std::move(segments)},
              {"finalDeviation", divide.finalDeviation}};
}

json to_json(const SnapRecord& record) {
  return json{{"divide", to_json(record.divide)},
              {"districtsA", record.districtsA},
              {"districtsB", record.districtsB},
              {"delta", record.delta},
              {"regionPopulation", record.regionPopulation},
              {"straightSideAPopulation", record.straightSideAPopulation},
              {"sideAPopulation", record.sideAPopulation},
              {"touchedCounties", record.touchedCounties}};
}

json to_json(const BalanceSummary& summary) {
  return json{{"perDistrict", summary.perDistrict},
              {"totalPopulation", summary.totalPopulation},
              {"target", summary.target},
              {"maxDeviationPct", summary.maxDeviationPct}};
}

json to_json(const IntegritySummary& summary) {
  return json{{"splitCounties", summary.splitCounties}, {"splitList", summary.splitList}};
}

json to_json(const FairnessReport& report) {
  return json{{"standardized", report.standardized},
              {"statistic", report.statistic},
              {"alpha", report.alpha},
              {"oneMinusAlpha", 1.0 - report.alpha},
              {"stateRatio", report.stateRatio},
              {"degreesOfFreedom", report.degreesOfFreedom},
              {"alphaAllow", report.alphaAllow},
              {"verdict", verdict_name(report.verdict)}};
}

namespace {

int as_count(const json& v, const char* key) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw Error(ErrorCode::MalformedInput, std::string("'") + key + "' must be an integer");
  }
  const auto n = v.get<long long>();
  if (n < 1 || n > 1'000'000'000LL) throw Error(ErrorCode::MalformedInput, std::string("'") + key + "' out of range");
  return static_cast<int>(n);
}

double as_real(const json& v, const char* key) {
  if (!v.is_number()) throw Error(ErrorCode::MalformedInput, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

FairnessInput parse_fairness_input(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::MalformedInput, "expected a JSON object");
  for (const char* key : {"m", "n", "ratios"}) {
    if (!doc.contains(key)) throw Error(ErrorCode::MalformedInput, std::string("missing '") + key + "'");
  }

  FairnessInput input;
  if (doc["m"].is_number_integer() && doc["m"].get<long long>() < 1) {
    throw Error(ErrorCode::InvalidDistrictCount, "m must be at least 1");
  }
  input.districts = as_count(doc["m"], "m");

  const json& n = doc["n"];
  if (n.is_array()) {
    if (n.empty()) throw Error(ErrorCode::MalformedInput, "'n' list is empty");
    input.votersPerDistrict = as_count(n.front(), "n");
    for (const auto& v : n) {
      if (as_count(v, "n") != input.votersPerDistrict) {
        throw Error(ErrorCode::HeterogeneousN, "districts must share one voter count");
      }
    }
  } else {
    if (n.is_number_integer() && n.get<long long>() < 1) throw Error(ErrorCode::InvalidVoterCount, "n must be at least 1");
    input.votersPerDistrict = as_count(n, "n");
  }

  if (!doc["ratios"].is_array()) throw Error(ErrorCode::MalformedInput, "'ratios' must be a list");
  for (const auto& r : doc["ratios"]) input.ratios.push_back(as_real(r, "ratios"));

  if (doc.contains("stateRatio") && !doc["stateRatio"].is_null()) {
    input.stateRatio = as_real(doc["stateRatio"], "stateRatio");
  }
  if (doc.contains("alphaAllow") && !doc["alphaAllow"].is_null()) {
    input.alphaAllow = as_real(doc["alphaAllow"], "alphaAllow");
  }
  return input;
}

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace redistrict
