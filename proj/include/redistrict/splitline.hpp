#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redistrict/griddata.hpp"

namespace redistrict {

enum class Axis { Vertical, Horizontal };

std::string_view axis_name(Axis axis);

/// Vertical: side A is the member cells with column < index.
/// Horizontal: side A is the member cells with row < index.
struct SplitLine {
  Axis axis = Axis::Vertical;
  int index = 0;
  bool operator==(const SplitLine&) const = default;
};

/// District id per cell, -1 off the state.
class DistrictMap {
 public:
  static constexpr int kOutside = -1;

  /// Throws INVALID_DISTRICT_MAP unless every id in [0, districtCount) is used
  /// and nothing else besides kOutside appears. A map may hold zero districts.
  DistrictMap(int width, int height, int districtCount, std::vector<int> assignment);

  int width() const { return width_; }
  int height() const { return height_; }
  int district_count() const { return districtCount_; }
  int at(int row, int col) const { return assignment_[static_cast<std::size_t>(row) * width_ + col]; }
  const std::vector<int>& assignment() const { return assignment_; }
  /// Member cells of one district.
  RegionMask district_mask(int id) const;

  bool operator==(const DistrictMap&) const = default;

 private:
  int width_;
  int height_;
  int districtCount_;
  std::vector<int> assignment_;
};

DistrictMap parse_district_map(std::string_view text);
std::string serialize_district_map(const DistrictMap& map);

/// Perpendicular to the longer bounding-box side; square boxes cut vertically.
Axis choose_axis(const RegionMask& mask);

/// Population per column (vertical) or per row (horizontal) of the member cells.
std::vector<double> slice_populations(const RegionMask& mask, const DensityGrid& density, Axis axis);
double side_a_population(const RegionMask& mask, const DensityGrid& density, SplitLine line);

/// Cut minimizing |pop(A) - targetFraction * pop(mask)|, smallest index on ties.
/// Falls back to the other axis when `axis` has no cut leaving both sides non-empty.
SplitLine best_split(const RegionMask& mask, const DensityGrid& density, Axis axis, double targetFraction);

/// The cut used by the recursion: axis from choose_axis, target districtsA / (districtsA + districtsB),
/// and each side keeps at least as many cells as districts it must hold.
SplitLine balanced_split(const RegionMask& mask, const DensityGrid& density, int districtsA, int districtsB);

std::pair<RegionMask, RegionMask> apply_split(const RegionMask& mask, SplitLine line);

struct SplitRecord {
  SplitLine line;
  int districtsA = 0;
  int districtsB = 0;
  double regionPopulation = 0.0;
  double targetPopulation = 0.0;  // side A target
  double sideAPopulation = 0.0;
  double maxSlicePopulation = 0.0;
};

struct SimpleDivision {
  DistrictMap map;
  std::vector<SplitRecord> splits;  // depth-first, A before B
};

DistrictMap divide_simple(const RegionMask& mask, const DensityGrid& density, int districts);
SimpleDivision divide_simple_traced(const RegionMask& mask, const DensityGrid& density, int districts);

namespace detail {

/// Given a region and the district counts for its two sides, return (sideA, sideB).
using Splitter = std::function<std::pair<RegionMask, RegionMask>(const RegionMask&, int, int)>;

/// Recursive bisection with ceil(m/2) districts on side A; ids are depth-first.
DistrictMap divide_recursive(const RegionMask& mask, int districts, const Splitter& splitter);

}  // namespace detail

}  // namespace redistrict
