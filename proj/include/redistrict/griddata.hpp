#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace redistrict {

struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

/// Inclusive cell bounds.
struct BoundingBox {
  int minRow = 0;
  int maxRow = -1;
  int minCol = 0;
  int maxCol = -1;

  int rows() const { return maxRow - minRow + 1; }
  int cols() const { return maxCol - minCol + 1; }
};

/// Population mass per cell, row-major.
class DensityGrid {
 public:
  DensityGrid(int width, int height, std::vector<double> cells);

  int width() const { return width_; }
  int height() const { return height_; }
  double at(int row, int col) const { return cells_[index(row, col)]; }
  const std::vector<double>& cells() const { return cells_; }
  double total() const;

  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * width_ + col;
  }

 private:
  int width_;
  int height_;
  std::vector<double> cells_;
};

/// County id per cell; 0 marks cells outside the state.
class CountyGrid {
 public:
  static constexpr int kOutside = 0;

  CountyGrid(int width, int height, std::vector<int> cells);

  int width() const { return width_; }
  int height() const { return height_; }
  int at(int row, int col) const { return cells_[index(row, col)]; }
  const std::vector<int>& cells() const { return cells_; }

  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * width_ + col;
  }

 private:
  int width_;
  int height_;
  std::vector<int> cells_;
};

/// The set of cells currently being divided.
class RegionMask {
 public:
  RegionMask(int width, int height, std::vector<std::uint8_t> member);
  static RegionMask full(int width, int height);
  static RegionMask none(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  bool contains(int row, int col) const {
    return row >= 0 && col >= 0 && row < height_ && col < width_ &&
           member_[index(row, col)] != 0;
  }
  const std::vector<std::uint8_t>& member() const { return member_; }

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  /// Throws EMPTY_REGION on an empty mask.
  BoundingBox bounding_box() const;
  std::vector<Cell> cells() const;
  /// True when no member cell sits on an OUTSIDE county cell.
  bool within_state(const CountyGrid& counties) const;

  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * width_ + col;
  }

  bool operator==(const RegionMask&) const = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> member_;
};

struct Rgb {
  std::uint8_t red = 0;
  std::uint8_t green = 0;
  std::uint8_t blue = 0;
  auto operator<=>(const Rgb&) const = default;
};

struct PaletteEntry {
  Rgb color;
  double density = 0.0;
};

class ColorPalette {
 public:
  ColorPalette() = default;
  explicit ColorPalette(std::vector<PaletteEntry> entries);

  const std::vector<PaletteEntry>& entries() const { return entries_; }
  std::optional<double> lookup(Rgb color) const;

 private:
  std::vector<PaletteEntry> entries_;
};

DensityGrid parse_density_grid(std::string_view text);
CountyGrid parse_county_grid(std::string_view text);
std::string serialize_density_grid(const DensityGrid& grid);
std::string serialize_county_grid(const CountyGrid& grid);

/// One "R G B density" entry per line; blank lines and '#' comments skipped.
ColorPalette parse_palette(std::string_view text);

/// P3/P6 pixmap, each pixel looked up in the palette.
DensityGrid parse_colored_map(std::string_view imageBytes, const ColorPalette& palette);
/// P2/P5 graymap, value v with maxval M becomes v / M * scale.
DensityGrid parse_graymap(std::string_view imageBytes, double scale);
/// Dispatches on the magic number. Pixmaps need a palette.
DensityGrid parse_density_image(std::string_view imageBytes, const ColorPalette* palette,
                                double grayScale);
bool looks_like_pnm(std::string_view bytes);

RegionMask state_mask(const CountyGrid& counties);
/// Sum of density over member cells. Throws DIMENSION_MISMATCH.
double mask_population(const RegionMask& mask, const DensityGrid& density);

void require_same_shape(const DensityGrid& density, const CountyGrid& counties);
void require_same_shape(const RegionMask& mask, const DensityGrid& density);
void require_same_shape(const RegionMask& mask, const CountyGrid& counties);

}  // namespace redistrict
