#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "redistrict/griddata.hpp"
#include "redistrict/splitline.hpp"

namespace redistrict {

/// County context of one stretch of a split line.
///   Interior:   the same county on both sides of the cut
///   OnBoundary: different counties on the two sides; the cut already follows a border
///   Edge:       at least one side is off the region
enum class SegmentKind { Interior, OnBoundary, Edge };

/// Which way the divider runs between two consecutive intersection points.
enum class PathChoice : int { LeftOrUp = 1, Straight = 2, RightOrDown = 3 };

std::string_view segment_kind_name(SegmentKind kind);

/// County id used for a side of the line that is off the region.
inline constexpr int kOffRegion = -1;

struct LineSegment {
  int spanStart = 0;  // along-line coordinates, half-open
  int spanEnd = 0;
  SegmentKind kind = SegmentKind::Edge;
  int beforeCounty = kOffRegion;  // county on side A of the cut
  int afterCounty = kOffRegion;   // county on side B
  int county() const { return kind == SegmentKind::Interior ? beforeCounty : kOffRegion; }
};

/// points[0] is where the line enters the region, points.back() where it leaves.
/// segments[i] spans [points[i], points[i+1]).
struct IntersectionList {
  std::vector<int> points;
  std::vector<LineSegment> segments;
  std::size_t count() const { return points.size(); }
};

struct Lens {
  std::vector<Cell> cells;
  double s = 0.0;  // negative on the left/up side
};

struct SnapSegment {
  LineSegment segment;
  PathChoice path = PathChoice::Straight;
  Lens lens;
};

struct SnappedDivide {
  SplitLine baseLine;
  std::vector<int> points;
  std::vector<SnapSegment> segments;
  double finalDeviation = 0.0;
};

/// Walks the line (rows for a vertical cut, columns for a horizontal one) and
/// splits it wherever the pair (county before the cut, county after) changes.
/// Throws LINE_OFF_REGION when the line does not cross the region.
IntersectionList line_intersections(SplitLine line, const RegionMask& mask, const CountyGrid& counties);

/// Probes two cells past the segment start and picks the side on which county K
/// ends sooner; ties go left/up. Throws NOT_INTERIOR.
PathChoice initial_path(const LineSegment& segment, SplitLine line, const CountyGrid& counties,
                        const RegionMask& mask);

/// County-K cells in the segment span strictly on `side` of the cut.
Lens lens_region(const LineSegment& segment, PathChoice side, SplitLine line, const CountyGrid& counties,
                 const RegionMask& mask, const DensityGrid& density);

/// Reverts kept lenses to straight, closest s to the running total first, until |S| < delta.
std::vector<SnapSegment> greedy_adjust(std::vector<SnapSegment> segments, double delta);

/// Sum of s over segments whose path is not straight.
double kept_deviation(const std::vector<SnapSegment>& segments);

struct SnapResult {
  RegionMask sideA;
  RegionMask sideB;
  SnappedDivide divide;
};

/// Replaces the straight cut by county boundaries wherever the deviation budget allows.
/// minCellsA / minCellsB guard the recursion: if the kept lenses would leave a side
/// with fewer cells, the largest remaining lenses are reverted until it does not.
SnapResult snap_split(const RegionMask& mask, const DensityGrid& density, const CountyGrid& counties,
                      SplitLine line, double delta, std::size_t minCellsA = 1, std::size_t minCellsB = 1);

struct SnapRecord {
  SnappedDivide divide;
  int districtsA = 0;
  int districtsB = 0;
  double delta = 0.0;
  double regionPopulation = 0.0;
  double straightSideAPopulation = 0.0;
  double sideAPopulation = 0.0;
  std::vector<int> touchedCounties;  // sorted; counties adjacent to the straight cut
};

struct SnappedDivision {
  DistrictMap map;
  std::vector<SnapRecord> splits;  // depth-first, A before B
};

/// Recursive division with snapped cuts. delta = tolerance * statePopulation / districts
/// at every level. Throws INVALID_TOLERANCE unless tolerance lies in (0, 0.5).
DistrictMap divide_snapped(const RegionMask& mask, const DensityGrid& density, const CountyGrid& counties,
                           int districts, double tolerance);
SnappedDivision divide_snapped_traced(const RegionMask& mask, const DensityGrid& density,
                                      const CountyGrid& counties, int districts, double tolerance);

}  // namespace redistrict
