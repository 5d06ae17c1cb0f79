#include "redistrict/griddata.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "redistrict/error.hpp"
#include "redistrict/pnm.hpp"

namespace redistrict {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string where(std::size_t row, std::size_t col) {
  return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

// Splits into rows of trimmed fields. Trailing blank lines are dropped.
std::vector<std::vector<std::string_view>> split_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw Error(ErrorCode::EmptyInput, "no rows");

  std::vector<std::vector<std::string_view>> rows;
  rows.reserve(lines.size());
  for (std::string_view line : lines) {
    line = trim(line);
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      fields.push_back(trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos)));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty() && fields.size() != rows.front().size()) {
      throw Error(ErrorCode::RaggedRows, "row " + std::to_string(rows.size()) + " has " +
                                             std::to_string(fields.size()) + " fields, expected " +
                                             std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

template <typename T>
bool parse_number(std::string_view field, T& out) {
  if (field.starts_with('+')) field.remove_prefix(1);
  if (field.empty()) return false;
  const char* first = field.data();
  const char* last = first + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

DensityGrid::DensityGrid(int width, int height, std::vector<double> cells)
    : width_(width), height_(height), cells_(std::move(cells)) {
  if (width_ < 1 || height_ < 1) throw Error(ErrorCode::EmptyInput, "grid dimensions must be positive");
  if (cells_.size() != static_cast<std::size_t>(width_) * height_) {
    throw Error(ErrorCode::DimensionMismatch, "cell count does not match dimensions");
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!std::isfinite(cells_[i])) {
      throw Error(ErrorCode::UnparseableNumber, "non-finite density at " + where(i / width_, i % width_));
    }
    if (cells_[i] < 0) throw Error(ErrorCode::NegativeDensity, where(i / width_, i % width_));
  }
}

double DensityGrid::total() const {
  double sum = 0.0;
  for (double v : cells_) sum += v;
  return sum;
}

CountyGrid::CountyGrid(int width, int height, std::vector<int> cells)
    : width_(width), height_(height), cells_(std::move(cells)) {
  if (width_ < 1 || height_ < 1) throw Error(ErrorCode::EmptyInput, "grid dimensions must be positive");
  if (cells_.size() != static_cast<std::size_t>(width_) * height_) {
    throw Error(ErrorCode::DimensionMismatch, "cell count does not match dimensions");
  }
  bool any = false;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] < 0) throw Error(ErrorCode::NegativeId, where(i / width_, i % width_));
    any = any || cells_[i] != kOutside;
  }
  if (!any) throw Error(ErrorCode::AllOutside, "every cell is outside the state");
}

RegionMask::RegionMask(int width, int height, std::vector<std::uint8_t> member)
    : width_(width), height_(height), member_(std::move(member)) {
  if (width_ < 1 || height_ < 1) throw Error(ErrorCode::EmptyInput, "mask dimensions must be positive");
  if (member_.size() != static_cast<std::size_t>(width_) * height_) {
    throw Error(ErrorCode::DimensionMismatch, "member count does not match dimensions");
  }
  for (auto& m : member_) m = m ? 1 : 0;
}

RegionMask RegionMask::full(int width, int height) {
  return RegionMask(width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 1));
}

RegionMask RegionMask::none(int width, int height) {
  return RegionMask(width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, 0));
}

std::size_t RegionMask::count() const {
  return static_cast<std::size_t>(std::count(member_.begin(), member_.end(), std::uint8_t{1}));
}

BoundingBox RegionMask::bounding_box() const {
  BoundingBox box{height_, -1, width_, -1};
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      if (!member_[index(r, c)]) continue;
      box.minRow = std::min(box.minRow, r);
      box.maxRow = std::max(box.maxRow, r);
      box.minCol = std::min(box.minCol, c);
      box.maxCol = std::max(box.maxCol, c);
    }
  }
  if (box.maxRow < 0) throw Error(ErrorCode::EmptyRegion, "mask has no member cells");
  return box;
}

std::vector<Cell> RegionMask::cells() const {
  std::vector<Cell> out;
  for (int r = 0; r < height_; ++r)
    for (int c = 0; c < width_; ++c)
      if (member_[index(r, c)]) out.push_back({r, c});
  return out;
}

bool RegionMask::within_state(const CountyGrid& counties) const {
  if (counties.width() != width_ || counties.height() != height_) return false;
  for (std::size_t i = 0; i < member_.size(); ++i) {
    if (member_[i] && counties.cells()[i] == CountyGrid::kOutside) return false;
  }
  return true;
}

ColorPalette::ColorPalette(std::vector<PaletteEntry> entries) : entries_(std::move(entries)) {
  std::vector<Rgb> seen;
  seen.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (!std::isfinite(e.density)) throw Error(ErrorCode::MalformedPalette, "non-finite density");
    if (e.density < 0) throw Error(ErrorCode::NegativeDensity, "palette density below zero");
    seen.push_back(e.color);
  }
  std::sort(seen.begin(), seen.end());
  auto dup = std::adjacent_find(seen.begin(), seen.end());
  if (dup != seen.end()) {
    throw Error(ErrorCode::DuplicateColor, std::to_string(dup->red) + " " + std::to_string(dup->green) +
                                               " " + std::to_string(dup->blue));
  }
}

std::optional<double> ColorPalette::lookup(Rgb color) const {
  for (const auto& e : entries_)
    if (e.color == color) return e.density;
  return std::nullopt;
}

DensityGrid parse_density_grid(std::string_view text) {
  const auto rows = split_csv(text);
  const int height = static_cast<int>(rows.size());
  const int width = static_cast<int>(rows.front().size());
  std::vector<double> cells;
  cells.reserve(static_cast<std::size_t>(width) * height);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      double v = 0.0;
      if (!parse_number(rows[r][c], v) || !std::isfinite(v)) {
        throw Error(ErrorCode::UnparseableNumber, "'" + std::string(rows[r][c]) + "' at " + where(r, c));
      }
      if (v < 0) throw Error(ErrorCode::NegativeDensity, where(r, c));
      cells.push_back(v);
    }
  }
  return DensityGrid(width, height, std::move(cells));
}

CountyGrid parse_county_grid(std::string_view text) {
  const auto rows = split_csv(text);
  const int height = static_cast<int>(rows.size());
  const int width = static_cast<int>(rows.front().size());
  std::vector<int> cells;
  cells.reserve(static_cast<std::size_t>(width) * height);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      long long v = 0;
      if (!parse_number(rows[r][c], v)) {
        throw Error(ErrorCode::UnparseableNumber, "'" + std::string(rows[r][c]) + "' at " + where(r, c));
      }
      if (v < 0) throw Error(ErrorCode::NegativeId, where(r, c));
      if (v > 2'000'000'000LL) throw Error(ErrorCode::UnparseableNumber, "county id too large at " + where(r, c));
      cells.push_back(static_cast<int>(v));
    }
  }
  return CountyGrid(width, height, std::move(cells));
}

std::string serialize_density_grid(const DensityGrid& grid) {
  std::string out;
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) {
      if (c) out += ',';
      out += format_double(grid.at(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string serialize_county_grid(const CountyGrid& grid) {
  std::string out;
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) {
      if (c) out += ',';
      out += std::to_string(grid.at(r, c));
    }
    out += '\n';
  }
  return out;
}

ColorPalette parse_palette(std::string_view text) {
  std::vector<PaletteEntry> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string tok[5];
    int n = 0;
    while (n < 5 && fields >> tok[n]) ++n;
    if (n == 0) continue;
    if (n != 4) throw Error(ErrorCode::MalformedPalette, "line " + std::to_string(lineNo) + ": expected 'R G B density'");
    int rgb[3];
    for (int i = 0; i < 3; ++i) {
      if (!parse_number(std::string_view(tok[i]), rgb[i]) || rgb[i] < 0 || rgb[i] > 255) {
        throw Error(ErrorCode::MalformedPalette, "line " + std::to_string(lineNo) + ": bad channel '" + tok[i] + "'");
      }
    }
    double density = 0.0;
    if (!parse_number(std::string_view(tok[3]), density)) {
      throw Error(ErrorCode::MalformedPalette, "line " + std::to_string(lineNo) + ": bad density '" + tok[3] + "'");
    }
    entries.push_back({Rgb{static_cast<std::uint8_t>(rgb[0]), static_cast<std::uint8_t>(rgb[1]),
                           static_cast<std::uint8_t>(rgb[2])},
                       density});
  }
  return ColorPalette(std::move(entries));
}

bool looks_like_pnm(std::string_view bytes) {
  return bytes.size() >= 2 && bytes[0] == 'P' &&
         (bytes[1] == '2' || bytes[1] == '3' || bytes[1] == '5' || bytes[1] == '6');
}

DensityGrid parse_colored_map(std::string_view imageBytes, const ColorPalette& palette) {
  const pnm::Image img = pnm::decode(imageBytes);
  if (img.channels != 3) throw Error(ErrorCode::MalformedImage, "expected a P3 or P6 pixmap");
  auto to8 = [&](std::uint16_t v) {
    if (img.maxval == 255) return static_cast<std::uint8_t>(v);
    return static_cast<std::uint8_t>((static_cast<long>(v) * 255 + img.maxval / 2) / img.maxval);
  };
  std::vector<double> cells;
  cells.reserve(static_cast<std::size_t>(img.width) * img.height);
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      const std::size_t i = (static_cast<std::size_t>(r) * img.width + c) * 3;
      const Rgb color{to8(img.samples[i]), to8(img.samples[i + 1]), to8(img.samples[i + 2])};
      const auto density = palette.lookup(color);
      if (!density) {
        throw Error(ErrorCode::UnknownColor, "(" + std::to_string(color.red) + "," + std::to_string(color.green) +
                                                 "," + std::to_string(color.blue) + ") at " + where(r, c));
      }
      cells.push_back(*density);
    }
  }
  return DensityGrid(img.width, img.height, std::move(cells));
}

DensityGrid parse_graymap(std::string_view imageBytes, double scale) {
  if (!std::isfinite(scale) || scale < 0) throw Error(ErrorCode::MalformedInput, "gray scale must be finite and non-negative");
  const pnm::Image img = pnm::decode(imageBytes);
  if (img.channels != 1) throw Error(ErrorCode::MalformedImage, "expected a P2 or P5 graymap");
  std::vector<double> cells;
  cells.reserve(img.samples.size());
  for (std::uint16_t v : img.samples) cells.push_back(static_cast<double>(v) / img.maxval * scale);
  return DensityGrid(img.width, img.height, std::move(cells));
}

DensityGrid parse_density_image(std::string_view imageBytes, const ColorPalette* palette, double grayScale) {
  if (!looks_like_pnm(imageBytes)) throw Error(ErrorCode::MalformedImage, "not a netpbm image");
  if (imageBytes[1] == '2' || imageBytes[1] == '5') return parse_graymap(imageBytes, grayScale);
  if (palette == nullptr) throw Error(ErrorCode::MalformedInput, "color image requires a palette");
  return parse_colored_map(imageBytes, *palette);
}

RegionMask state_mask(const CountyGrid& counties) {
  std::vector<std::uint8_t> member(counties.cells().size());
  for (std::size_t i = 0; i < member.size(); ++i) member[i] = counties.cells()[i] != CountyGrid::kOutside;
  return RegionMask(counties.width(), counties.height(), std::move(member));
}

double mask_population(const RegionMask& mask, const DensityGrid& density) {
  require_same_shape(mask, density);
  double sum = 0.0;
  for (std::size_t i = 0; i < mask.member().size(); ++i)
    if (mask.member()[i]) sum += density.cells()[i];
  return sum;
}

namespace {
void check_dims(int w1, int h1, int w2, int h2, const char* what) {
  if (w1 != w2 || h1 != h2) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": " + std::to_string(h1) + "x" +
                                                  std::to_string(w1) + " vs " + std::to_string(h2) + "x" +
                                                  std::to_string(w2));
  }
}
}  // namespace

void require_same_shape(const DensityGrid& density, const CountyGrid& counties) {
  check_dims(density.width(), density.height(), counties.width(), counties.height(), "density vs county grid");
}
void require_same_shape(const RegionMask& mask, const DensityGrid& density) {
  check_dims(mask.width(), mask.height(), density.width(), density.height(), "mask vs density grid");
}
void require_same_shape(const RegionMask& mask, const CountyGrid& counties) {
  check_dims(mask.width(), mask.height(), counties.width(), counties.height(), "mask vs county grid");
}

}  // namespace redistrict
