#include "redistrict/splitline.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "redistrict/error.hpp"

namespace redistrict {
namespace {

struct AxisProfile {
  int lo = 0;  // first slice holding a member cell
  int hi = -1;
  std::vector<double> population;
  std::vector<std::size_t> cells;
};

AxisProfile profile(const RegionMask& mask, const DensityGrid& density, Axis axis) {
  const int extent = axis == Axis::Vertical ? mask.width() : mask.height();
  AxisProfile p;
  p.population.assign(extent, 0.0);
  p.cells.assign(extent, 0);
  p.lo = extent;
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (!mask.contains(r, c)) continue;
      const int k = axis == Axis::Vertical ? c : r;
      p.population[k] += density.at(r, c);
      ++p.cells[k];
      p.lo = std::min(p.lo, k);
      p.hi = std::max(p.hi, k);
    }
  }
  return p;
}

// Best cut on one axis with at least minA / minB member cells per side.
std::optional<SplitLine> best_on_axis(const RegionMask& mask, const DensityGrid& density, Axis axis,
                                      double targetFraction, std::size_t minA, std::size_t minB) {
  const AxisProfile p = profile(mask, density, axis);
  if (p.hi <= p.lo) return std::nullopt;

  std::size_t totalCells = 0;
  double totalPop = 0.0;
  for (int k = p.lo; k <= p.hi; ++k) {
    totalCells += p.cells[k];
    totalPop += p.population[k];
  }
  const double target = targetFraction * totalPop;
  const int midpoint = p.lo + (p.hi - p.lo + 1) / 2;

  std::optional<int> best;
  double bestScore = std::numeric_limits<double>::infinity();
  double prefixPop = 0.0;
  std::size_t prefixCells = 0;
  for (int c = p.lo + 1; c <= p.hi; ++c) {
    prefixPop += p.population[c - 1];
    prefixCells += p.cells[c - 1];
    if (prefixCells < minA || totalCells - prefixCells < minB) continue;
    // Without population every cut balances; the bounding-box midpoint is canonical.
    const double score = totalPop > 0 ? std::abs(prefixPop - target) : std::abs(double(c - midpoint));
    if (score < bestScore) {
      bestScore = score;
      best = c;
    }
  }
  if (!best) return std::nullopt;
  return SplitLine{axis, *best};
}

Axis other(Axis axis) { return axis == Axis::Vertical ? Axis::Horizontal : Axis::Vertical; }

}  // namespace

std::string_view axis_name(Axis axis) { return axis == Axis::Vertical ? "VERTICAL" : "HORIZONTAL"; }

DistrictMap::DistrictMap(int width, int height, int districtCount, std::vector<int> assignment)
    : width_(width), height_(height), districtCount_(districtCount), assignment_(std::move(assignment)) {
  if (width_ < 1 || height_ < 1) throw Error(ErrorCode::InvalidDistrictMap, "dimensions must be positive");
  if (assignment_.size() != static_cast<std::size_t>(width_) * height_) {
    throw Error(ErrorCode::InvalidDistrictMap, "assignment size does not match dimensions");
  }
  if (districtCount_ < 0) throw Error(ErrorCode::InvalidDistrictMap, "negative district count");
  std::vector<char> used(districtCount_, 0);
  for (int id : assignment_) {
    if (id == kOutside) continue;
    if (id < 0 || id >= districtCount_) {
      throw Error(ErrorCode::InvalidDistrictMap, "district id " + std::to_string(id) + " out of range");
    }
    used[id] = 1;
  }
  for (int id = 0; id < districtCount_; ++id) {
    if (!used[id]) throw Error(ErrorCode::InvalidDistrictMap, "district " + std::to_string(id) + " has no cells");
  }
}

RegionMask DistrictMap::district_mask(int id) const {
  std::vector<std::uint8_t> member(assignment_.size());
  for (std::size_t i = 0; i < member.size(); ++i) member[i] = assignment_[i] == id;
  return RegionMask(width_, height_, std::move(member));
}

DistrictMap parse_district_map(std::string_view text) {
  // Same CSV dialect as county grids, but -1 is allowed.
  std::vector<int> ids;
  int width = -1;
  int height = 0;
  std::size_t pos = 0;
  if (text.starts_with("\xEF\xBB\xBF")) pos = 3;
  std::vector<std::string_view> lines;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  auto blank = [](std::string_view s) { return s.find_first_not_of(" \t\r") == std::string_view::npos; };
  while (!lines.empty() && blank(lines.back())) lines.pop_back();
  if (lines.empty()) throw Error(ErrorCode::EmptyInput, "no rows");
  int maxId = DistrictMap::kOutside;
  for (std::string_view line : lines) {
    int fields = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      std::string field(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      const auto b = field.find_first_not_of(" \t\r");
      const auto e = field.find_last_not_of(" \t\r");
      field = b == std::string::npos ? std::string() : field.substr(b, e - b + 1);
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(field, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (field.empty() || used != field.size()) {
        throw Error(ErrorCode::UnparseableNumber, "'" + field + "' at row " + std::to_string(height));
      }
      if (v < DistrictMap::kOutside) throw Error(ErrorCode::InvalidDistrictMap, "district id below -1");
      ids.push_back(v);
      maxId = std::max(maxId, v);
      ++fields;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (width >= 0 && fields != width) throw Error(ErrorCode::RaggedRows, "row " + std::to_string(height));
    width = fields;
    ++height;
  }
  return DistrictMap(width, height, maxId + 1, std::move(ids));
}

std::string serialize_district_map(const DistrictMap& map) {
  std::string out;
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) {
      if (c) out += ',';
      out += std::to_string(map.at(r, c));
    }
    out += '\n';
  }
  return out;
}

Axis choose_axis(const RegionMask& mask) {
  const BoundingBox box = mask.bounding_box();
  return box.cols() >= box.rows() ? Axis::Vertical : Axis::Horizontal;
}

std::vector<double> slice_populations(const RegionMask& mask, const DensityGrid& density, Axis axis) {
  require_same_shape(mask, density);
  return profile(mask, density, axis).population;
}

double side_a_population(const RegionMask& mask, const DensityGrid& density, SplitLine line) {
  require_same_shape(mask, density);
  double sum = 0.0;
  for (int r = 0; r < mask.height(); ++r)
    for (int c = 0; c < mask.width(); ++c)
      if (mask.contains(r, c) && (line.axis == Axis::Vertical ? c : r) < line.index) sum += density.at(r, c);
  return sum;
}

SplitLine best_split(const RegionMask& mask, const DensityGrid& density, Axis axis, double targetFraction) {
  require_same_shape(mask, density);
  if (!(targetFraction > 0.0 && targetFraction < 1.0)) {
    throw Error(ErrorCode::InvalidTargetFraction, "target fraction must lie in (0, 1)");
  }
  if (mask.empty()) throw Error(ErrorCode::EmptyRegion, "cannot split an empty region");
  if (auto line = best_on_axis(mask, density, axis, targetFraction, 1, 1)) return *line;
  if (auto line = best_on_axis(mask, density, other(axis), targetFraction, 1, 1)) return *line;
  throw Error(ErrorCode::IndivisibleRegion, "region has no valid cut on either axis");
}

SplitLine balanced_split(const RegionMask& mask, const DensityGrid& density, int districtsA, int districtsB) {
  require_same_shape(mask, density);
  if (districtsA < 1 || districtsB < 1) throw Error(ErrorCode::InvalidDistrictCount, "each side needs a district");
  const Axis axis = choose_axis(mask);
  const double fraction = static_cast<double>(districtsA) / (districtsA + districtsB);
  const auto minA = static_cast<std::size_t>(districtsA);
  const auto minB = static_cast<std::size_t>(districtsB);
  if (auto line = best_on_axis(mask, density, axis, fraction, minA, minB)) return *line;
  if (auto line = best_on_axis(mask, density, other(axis), fraction, minA, minB)) return *line;
  throw Error(ErrorCode::IndivisibleRegion,
              "no axis-aligned cut leaves " + std::to_string(districtsA) + " and " + std::to_string(districtsB) +
                  " cells on the two sides");
}

std::pair<RegionMask, RegionMask> apply_split(const RegionMask& mask, SplitLine line) {
  std::vector<std::uint8_t> a(mask.member().size(), 0);
  std::vector<std::uint8_t> b(mask.member().size(), 0);
  bool anyA = false;
  bool anyB = false;
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (!mask.contains(r, c)) continue;
      const bool sideA = (line.axis == Axis::Vertical ? c : r) < line.index;
      (sideA ? a : b)[mask.index(r, c)] = 1;
      (sideA ? anyA : anyB) = true;
    }
  }
  if (!anyA || !anyB) {
    throw Error(ErrorCode::DegenerateCut, std::string(axis_name(line.axis)) + " cut at " +
                                              std::to_string(line.index) + " leaves a side empty");
  }
  return {RegionMask(mask.width(), mask.height(), std::move(a)),
          RegionMask(mask.width(), mask.height(), std::move(b))};
}

namespace detail {
namespace {

void recurse(const RegionMask& mask, int districts, int firstId, const Splitter& splitter, std::vector<int>& out) {
  if (districts == 1) {
    for (std::size_t i = 0; i < out.size(); ++i)
      if (mask.member()[i]) out[i] = firstId;
    return;
  }
  const int districtsA = (districts + 1) / 2;
  const int districtsB = districts / 2;
  auto [sideA, sideB] = splitter(mask, districtsA, districtsB);
  recurse(sideA, districtsA, firstId, splitter, out);
  recurse(sideB, districtsB, firstId + districtsA, splitter, out);
}

}  // namespace

DistrictMap divide_recursive(const RegionMask& mask, int districts, const Splitter& splitter) {
  if (districts < 1) throw Error(ErrorCode::InvalidDistrictCount, "district count must be at least 1");
  if (mask.empty()) throw Error(ErrorCode::EmptyRegion, "cannot divide an empty region");
  if (mask.count() < static_cast<std::size_t>(districts)) {
    throw Error(ErrorCode::TooFewCells, std::to_string(mask.count()) + " cells for " + std::to_string(districts) +
                                            " districts");
  }
  std::vector<int> assignment(mask.member().size(), DistrictMap::kOutside);
  recurse(mask, districts, 0, splitter, assignment);
  return DistrictMap(mask.width(), mask.height(), districts, std::move(assignment));
}

}  // namespace detail

SimpleDivision divide_simple_traced(const RegionMask& mask, const DensityGrid& density, int districts) {
  require_same_shape(mask, density);
  std::vector<SplitRecord> splits;
  auto splitter = [&](const RegionMask& region, int districtsA, int districtsB) {
    const SplitLine line = balanced_split(region, density, districtsA, districtsB);
    SplitRecord rec;
    rec.line = line;
    rec.districtsA = districtsA;
    rec.districtsB = districtsB;
    rec.regionPopulation = mask_population(region, density);
    rec.targetPopulation = rec.regionPopulation * districtsA / (districtsA + districtsB);
    auto sides = apply_split(region, line);
    rec.sideAPopulation = mask_population(sides.first, density);
    for (double s : slice_populations(region, density, line.axis)) rec.maxSlicePopulation = std::max(rec.maxSlicePopulation, s);
    splits.push_back(rec);
    return sides;
  };
  DistrictMap map = detail::divide_recursive(mask, districts, splitter);
  return {std::move(map), std::move(splits)};
}

DistrictMap divide_simple(const RegionMask& mask, const DensityGrid& density, int districts) {
  return divide_simple_traced(mask, density, districts).map;
}

}  // namespace redistrict
