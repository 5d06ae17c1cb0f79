#include "redistrict/countysnap.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "redistrict/error.hpp"

namespace redistrict {
namespace {

// Lines are handled in (along, perpendicular) coordinates. For a vertical cut the
// along coordinate is the row and the perpendicular one the column.
struct LineFrame {
  SplitLine line;
  int alongExtent;
  int perpExtent;

  LineFrame(SplitLine l, const RegionMask& mask)
      : line(l),
        alongExtent(l.axis == Axis::Vertical ? mask.height() : mask.width()),
        perpExtent(l.axis == Axis::Vertical ? mask.width() : mask.height()) {}

  Cell cell(int along, int perp) const {
    return line.axis == Axis::Vertical ? Cell{along, perp} : Cell{perp, along};
  }
};

int county_or_off(const RegionMask& mask, const CountyGrid& counties, Cell cell) {
  return mask.contains(cell.row, cell.col) ? counties.at(cell.row, cell.col) : kOffRegion;
}

void require_interior(const LineSegment& segment) {
  if (segment.kind != SegmentKind::Interior) {
    throw Error(ErrorCode::NotInterior,
                std::string(segment_kind_name(segment.kind)) + " segment has no county to follow");
  }
}

std::size_t count_members(const std::vector<std::uint8_t>& member) {
  return static_cast<std::size_t>(std::count(member.begin(), member.end(), std::uint8_t{1}));
}

}  // namespace

std::string_view segment_kind_name(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::Interior: return "INTERIOR";
    case SegmentKind::OnBoundary: return "ON_BOUNDARY";
    case SegmentKind::Edge: return "EDGE";
  }
  return "EDGE";
}

IntersectionList line_intersections(SplitLine line, const RegionMask& mask, const CountyGrid& counties) {
  require_same_shape(mask, counties);
  const LineFrame frame(line, mask);
  if (line.index < 1 || line.index >= frame.perpExtent) {
    throw Error(ErrorCode::LineOffRegion, "cut index " + std::to_string(line.index) + " outside the grid");
  }
  bool anyA = false;
  bool anyB = false;
  for (const Cell& cell : mask.cells()) {
    ((line.axis == Axis::Vertical ? cell.col : cell.row) < line.index ? anyA : anyB) = true;
  }
  if (!anyA || !anyB) throw Error(ErrorCode::LineOffRegion, "cut does not pass through the region");

  std::vector<std::pair<int, int>> context(frame.alongExtent);
  int first = frame.alongExtent;
  int last = -1;
  for (int a = 0; a < frame.alongExtent; ++a) {
    context[a] = {county_or_off(mask, counties, frame.cell(a, line.index - 1)),
                  county_or_off(mask, counties, frame.cell(a, line.index))};
    if (context[a].first != kOffRegion || context[a].second != kOffRegion) {
      first = std::min(first, a);
      last = std::max(last, a);
    }
  }
  // Both sides are non-empty but nothing touches the cut: the mask is split by a gap.
  if (last < 0) throw Error(ErrorCode::LineOffRegion, "no region cell is adjacent to the cut");

  IntersectionList out;
  for (int a = first; a <= last; ++a) {
    if (a == first || context[a] != context[a - 1]) {
      out.points.push_back(a);
      LineSegment seg;
      seg.spanStart = a;
      seg.beforeCounty = context[a].first;
      seg.afterCounty = context[a].second;
      if (seg.beforeCounty == kOffRegion || seg.afterCounty == kOffRegion) {
        seg.kind = SegmentKind::Edge;
      } else if (seg.beforeCounty == seg.afterCounty) {
        seg.kind = SegmentKind::Interior;
      } else {
        seg.kind = SegmentKind::OnBoundary;
      }
      out.segments.push_back(seg);
    }
    out.segments.back().spanEnd = a + 1;
  }
  out.points.push_back(last + 1);
  return out;
}

PathChoice initial_path(const LineSegment& segment, SplitLine line, const CountyGrid& counties,
                        const RegionMask& mask) {
  require_interior(segment);
  require_same_shape(mask, counties);
  const LineFrame frame(line, mask);
  const int county = segment.county();
  const int probe = std::min(segment.spanStart + 2, segment.spanEnd - 1);

  auto run_length = [&](int perp, int step) {
    int n = 0;
    for (; perp >= 0 && perp < frame.perpExtent; perp += step, ++n) {
      if (county_or_off(mask, counties, frame.cell(probe, perp)) != county) break;
    }
    return n;
  };
  const int before = run_length(line.index - 1, -1);
  const int after = run_length(line.index, +1);
  return after < before ? PathChoice::RightOrDown : PathChoice::LeftOrUp;
}

Lens lens_region(const LineSegment& segment, PathChoice side, SplitLine line, const CountyGrid& counties,
                 const RegionMask& mask, const DensityGrid& density) {
  require_interior(segment);
  require_same_shape(mask, counties);
  require_same_shape(mask, density);
  if (side == PathChoice::Straight) throw Error(ErrorCode::MalformedInput, "a lens needs a side");
  const LineFrame frame(line, mask);
  const int county = segment.county();
  const bool leftOrUp = side == PathChoice::LeftOrUp;
  const int perpBegin = leftOrUp ? 0 : line.index;
  const int perpEnd = leftOrUp ? line.index : frame.perpExtent;

  Lens lens;
  double population = 0.0;
  // Row-major order keeps the cell list canonical for both axes.
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      const int along = line.axis == Axis::Vertical ? r : c;
      const int perp = line.axis == Axis::Vertical ? c : r;
      if (along < segment.spanStart || along >= segment.spanEnd) continue;
      if (perp < perpBegin || perp >= perpEnd) continue;
      if (!mask.contains(r, c) || counties.at(r, c) != county) continue;
      lens.cells.push_back({r, c});
      population += density.at(r, c);
    }
  }
  lens.s = leftOrUp ? -population : population;
  return lens;
}

double kept_deviation(const std::vector<SnapSegment>& segments) {
  double sum = 0.0;
  for (const auto& seg : segments)
    if (seg.path != PathChoice::Straight) sum += seg.lens.s;
  return sum;
}

std::vector<SnapSegment> greedy_adjust(std::vector<SnapSegment> segments, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::NonpositiveDelta, "delta must be positive");
  double total = kept_deviation(segments);
  while (std::abs(total) >= delta) {
    std::size_t pick = segments.size();
    double bestGap = 0.0;
    for (std::size_t i = 0; i < segments.size(); ++i) {
      if (segments[i].path == PathChoice::Straight) continue;
      const double gap = std::abs(total - segments[i].lens.s);
      if (pick == segments.size() || gap < bestGap) {
        pick = i;
        bestGap = gap;
      }
    }
    if (pick == segments.size()) break;  // everything straight, total is 0
    segments[pick].path = PathChoice::Straight;
    total = kept_deviation(segments);
  }
  return segments;
}

SnapResult snap_split(const RegionMask& mask, const DensityGrid& density, const CountyGrid& counties,
                      SplitLine line, double delta, std::size_t minCellsA, std::size_t minCellsB) {
  require_same_shape(mask, density);
  require_same_shape(mask, counties);
  if (!(delta > 0.0)) throw Error(ErrorCode::NonpositiveDelta, "delta must be positive");

  const IntersectionList crossings = line_intersections(line, mask, counties);
  auto [straightA, straightB] = apply_split(mask, line);

  std::vector<SnapSegment> segments;
  segments.reserve(crossings.segments.size());
  for (const LineSegment& seg : crossings.segments) {
    SnapSegment snap{seg, PathChoice::Straight, {}};
    if (seg.kind == SegmentKind::Interior) {
      snap.path = initial_path(seg, line, counties, mask);
      snap.lens = lens_region(seg, snap.path, line, counties, mask, density);
    }
    segments.push_back(std::move(snap));
  }
  std::vector<std::uint8_t> a;
  std::vector<std::uint8_t> b;
  auto assign = [&]() {
    a = straightA.member();
    b = straightB.member();
    for (const auto& seg : segments) {
      if (seg.path == PathChoice::Straight) continue;
      for (const Cell& cell : seg.lens.cells) {
        const std::size_t i = mask.index(cell.row, cell.col);
        a[i] = seg.path == PathChoice::RightOrDown;
        b[i] = seg.path == PathChoice::LeftOrUp;
      }
    }
  };
  // Both passes only ever revert segments, so this terminates at the straight cut at worst.
  while (true) {
    segments = greedy_adjust(std::move(segments), delta);
    assign();
    if (count_members(a) >= minCellsA && count_members(b) >= minCellsB) break;
    std::size_t pick = segments.size();
    for (std::size_t i = 0; i < segments.size(); ++i) {
      if (segments[i].path == PathChoice::Straight) continue;
      if (pick == segments.size() || segments[i].lens.cells.size() > segments[pick].lens.cells.size()) pick = i;
    }
    if (pick == segments.size()) break;
    segments[pick].path = PathChoice::Straight;
  }

  SnapResult out{RegionMask(mask.width(), mask.height(), std::move(a)),
                 RegionMask(mask.width(), mask.height(), std::move(b)),
                 SnappedDivide{line, crossings.points, std::move(segments), 0.0}};
  out.divide.finalDeviation = kept_deviation(out.divide.segments);
  return out;
}

SnappedDivision divide_snapped_traced(const RegionMask& mask, const DensityGrid& density,
                                      const CountyGrid& counties, int districts, double tolerance) {
  require_same_shape(mask, density);
  require_same_shape(mask, counties);
  if (!(tolerance > 0.0 && tolerance < 0.5)) throw Error(ErrorCode::InvalidTolerance, "tolerance must lie in (0, 0.5)");
  if (districts < 1) throw Error(ErrorCode::InvalidDistrictCount, "district count must be at least 1");
  if (!mask.within_state(counties)) throw Error(ErrorCode::MalformedInput, "mask covers cells outside the state");

  const double statePopulation = mask_population(mask, density);
  double delta = tolerance * statePopulation / districts;
  // A population-free state has s = 0 on every lens, so any positive budget behaves the same.
  if (!(delta > 0.0)) delta = 1.0;

  std::vector<SnapRecord> splits;
  auto splitter = [&](const RegionMask& region, int districtsA, int districtsB) {
    const SplitLine line = balanced_split(region, density, districtsA, districtsB);
    SnapResult snapped = snap_split(region, density, counties, line, delta, static_cast<std::size_t>(districtsA),
                                    static_cast<std::size_t>(districtsB));
    SnapRecord rec;
    rec.districtsA = districtsA;
    rec.districtsB = districtsB;
    rec.delta = delta;
    rec.regionPopulation = mask_population(region, density);
    rec.straightSideAPopulation = side_a_population(region, density, line);
    rec.sideAPopulation = mask_population(snapped.sideA, density);
    std::set<int> touched;
    for (const auto& seg : snapped.divide.segments) {
      if (seg.segment.beforeCounty != kOffRegion) touched.insert(seg.segment.beforeCounty);
      if (seg.segment.afterCounty != kOffRegion) touched.insert(seg.segment.afterCounty);
    }
    rec.touchedCounties.assign(touched.begin(), touched.end());
    rec.divide = std::move(snapped.divide);
    splits.push_back(std::move(rec));
    return std::pair{std::move(snapped.sideA), std::move(snapped.sideB)};
  };
  DistrictMap map = detail::divide_recursive(mask, districts, splitter);
  return {std::move(map), std::move(splits)};
}

DistrictMap divide_snapped(const RegionMask& mask, const DensityGrid& density, const CountyGrid& counties,
                           int districts, double tolerance) {
  return divide_snapped_traced(mask, density, counties, districts, tolerance).map;
}

}  // namespace redistrict
