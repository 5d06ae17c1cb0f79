#pragma once

#include <string>
#include <vector>

#include "redistrict/griddata.hpp"
#include "redistrict/splitline.hpp"

namespace redistrict {

struct BalanceSummary {
  std::vector<double> perDistrict;
  double totalPopulation = 0.0;
  double target = 0.0;  // totalPopulation / district count
  double maxDeviationPct = 0.0;
};

struct IntegritySummary {
  int splitCounties = 0;
  std::vector<int> splitList;  // ascending county ids
};

/// Throws DIMENSION_MISMATCH.
BalanceSummary population_summary(const DistrictMap& map, const DensityGrid& density);
/// A county is split when its in-state cells carry two or more district ids.
IntegritySummary county_split_count(const DistrictMap& map, const CountyGrid& counties);

/// Fixed color per district id, distinct for the first 256 ids, never black.
Rgb district_color(int id);
/// Binary P6 image, one pixel per cell, black off the state.
std::string render_map(const DistrictMap& map);

}  // namespace redistrict
