#include "redistrict/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "redistrict/error.hpp"
#include "redistrict/pnm.hpp"

namespace redistrict {
namespace {

constexpr int kHues = 32;
constexpr int kTableSize = 256;
// Odd stride, so id -> slot is a permutation of the table and neighbouring ids get far-apart hues.
constexpr int kStride = 37;

struct Shade {
  double saturation;
  double value;
};
constexpr std::array<Shade, kTableSize / kHues> kShades{{
    {1.00, 1.00}, {0.55, 1.00}, {1.00, 0.75}, {0.55, 0.75},
    {1.00, 0.50}, {0.55, 0.50}, {0.30, 0.90}, {0.80, 0.62},
}};

Rgb hsv_to_rgb(double hueDegrees, double s, double v) {
  const double c = v * s;
  const double h = hueDegrees / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(h, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h) % 6) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = v - c;
  auto to8 = [&](double ch) { return static_cast<std::uint8_t>(std::lround((ch + m) * 255.0)); };
  return {to8(r), to8(g), to8(b)};
}

const std::array<Rgb, kTableSize>& color_table() {
  static const std::array<Rgb, kTableSize> table = [] {
    std::array<Rgb, kTableSize> t{};
    for (int i = 0; i < kTableSize; ++i) {
      const Shade shade = kShades[i / kHues];
      t[i] = hsv_to_rgb(360.0 * (i % kHues) / kHues, shade.saturation, shade.value);
    }
    return t;
  }();
  return table;
}

void require_same_shape(const DistrictMap& map, int width, int height) {
  if (map.width() != width || map.height() != height) {
    throw Error(ErrorCode::DimensionMismatch, "district map is " + std::to_string(map.height()) + "x" +
                                                  std::to_string(map.width()) + ", grid is " +
                                                  std::to_string(height) + "x" + std::to_string(width));
  }
}

}  // namespace

BalanceSummary population_summary(const DistrictMap& map, const DensityGrid& density) {
  require_same_shape(map, density.width(), density.height());
  if (map.district_count() < 1) throw Error(ErrorCode::InvalidDistrictMap, "map has no districts");
  BalanceSummary out;
  out.perDistrict.assign(map.district_count(), 0.0);
  for (std::size_t i = 0; i < map.assignment().size(); ++i) {
    const int id = map.assignment()[i];
    if (id != DistrictMap::kOutside) out.perDistrict[id] += density.cells()[i];
  }
  for (double p : out.perDistrict) out.totalPopulation += p;
  out.target = out.totalPopulation / map.district_count();
  if (out.target > 0.0) {
    for (double p : out.perDistrict) {
      out.maxDeviationPct = std::max(out.maxDeviationPct, std::abs(p - out.target) / out.target * 100.0);
    }
  }
  return out;
}

IntegritySummary county_split_count(const DistrictMap& map, const CountyGrid& counties) {
  require_same_shape(map, counties.width(), counties.height());
  std::map<int, int> firstDistrict;
  std::set<int> split;
  for (std::size_t i = 0; i < map.assignment().size(); ++i) {
    const int county = counties.cells()[i];
    const int id = map.assignment()[i];
    if (county == CountyGrid::kOutside || id == DistrictMap::kOutside) continue;
    auto [it, inserted] = firstDistrict.emplace(county, id);
    if (!inserted && it->second != id) split.insert(county);
  }
  IntegritySummary out;
  out.splitList.assign(split.begin(), split.end());
  out.splitCounties = static_cast<int>(out.splitList.size());
  return out;
}

Rgb district_color(int id) {
  const int slot = static_cast<int>((static_cast<long long>(id) % kTableSize + kTableSize) % kTableSize);
  return color_table()[(slot * kStride) % kTableSize];
}

std::string render_map(const DistrictMap& map) {
  std::vector<std::uint8_t> rgb;
  rgb.reserve(map.assignment().size() * 3);
  for (int id : map.assignment()) {
    const Rgb c = id == DistrictMap::kOutside ? Rgb{0, 0, 0} : district_color(id);
    rgb.push_back(c.red);
    rgb.push_back(c.green);
    rgb.push_back(c.blue);
  }
  return pnm::encode_ppm(map.width(), map.height(), rgb);
}

}  // namespace redistrict
