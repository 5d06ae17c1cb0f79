#pragma once

// Grid fixtures shared by the unit and acceptance suites.

#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "redistrict/griddata.hpp"

namespace fixtures {

using redistrict::CountyGrid;
using redistrict::DensityGrid;
using redistrict::RegionMask;

inline DensityGrid uniform(int width, int height, double value = 1.0) {
  return DensityGrid(width, height, std::vector<double>(static_cast<std::size_t>(width) * height, value));
}

inline CountyGrid one_county(int width, int height) {
  return CountyGrid(width, height, std::vector<int>(static_cast<std::size_t>(width) * height, 1));
}

// 4x4, density 1. County 1 is columns 0-1 plus cell (0,2); county 2 is the rest.
inline DensityGrid fixture_f_density() { return uniform(4, 4); }
inline CountyGrid fixture_f_counties() {
  return CountyGrid(4, 4, {1, 1, 1, 2,
                           1, 1, 2, 2,
                           1, 1, 2, 2,
                           1, 1, 2, 2});
}

// 1x8 uniform with four two-cell counties.
inline CountyGrid bands_counties() { return CountyGrid(8, 1, {1, 1, 2, 2, 3, 3, 4, 4}); }

// 64x64 synthetic states. Values are integers so population sums are exact.
constexpr int kStateSize = 64;

inline DensityGrid gaussian_clustered() {
  struct Blob { double row, col, sigma, peak; };
  const Blob blobs[] = {{12, 15, 5, 400}, {40, 50, 7, 250}, {50, 12, 4, 600}, {25, 38, 9, 150}, {58, 40, 3, 800}};
  std::vector<double> cells;
  for (int r = 0; r < kStateSize; ++r)
    for (int c = 0; c < kStateSize; ++c) {
      double v = 5.0;
      for (const Blob& b : blobs) {
        const double d2 = (r - b.row) * (r - b.row) + (c - b.col) * (c - b.col);
        v += b.peak * std::exp(-d2 / (2 * b.sigma * b.sigma));
      }
      cells.push_back(std::round(v));
    }
  return DensityGrid(kStateSize, kStateSize, std::move(cells));
}

inline DensityGrid bimodal_cities() {
  std::vector<double> cells;
  for (int r = 0; r < kStateSize; ++r)
    for (int c = 0; c < kStateSize; ++c) {
      const double d1 = std::hypot(r - 16.0, c - 18.0);
      const double d2 = std::hypot(r - 47.0, c - 44.0);
      cells.push_back(std::round(2.0 + 3000.0 / (1.0 + d1 * d1) + 2000.0 / (1.0 + 0.5 * d2 * d2)));
    }
  return DensityGrid(kStateSize, kStateSize, std::move(cells));
}

// Sixteen counties on a 4x4 block layout whose borders wobble one cell either side of
// the equal-population cuts at 16, 32 and 48. Density rises slowly from west to east.
inline int wobble(int t, int phase) {
  const int k = ((t + phase) / 4) % 4;
  return k == 1 ? 1 : (k == 3 ? -1 : 0);
}

inline CountyGrid wobbly_counties() {
  std::vector<int> cells;
  for (int r = 0; r < kStateSize; ++r)
    for (int c = 0; c < kStateSize; ++c) {
      int colBlock = 0;
      int rowBlock = 0;
      for (int k = 1; k <= 3; ++k) {
        if (c >= 16 * k + wobble(r, k)) ++colBlock;
        if (r >= 16 * k + wobble(c, 2 * k + 1)) ++rowBlock;
      }
      cells.push_back(4 * rowBlock + colBlock + 1);
    }
  return CountyGrid(kStateSize, kStateSize, std::move(cells));
}

inline DensityGrid wobbly_density() {
  std::vector<double> cells;
  for (int r = 0; r < kStateSize; ++r)
    for (int c = 0; c < kStateSize; ++c) cells.push_back(10.0 + ((r * 7 + c * 13) % 5));
  return DensityGrid(kStateSize, kStateSize, std::move(cells));
}

inline bool connected(const CountyGrid& counties, int county) {
  const int w = counties.width();
  const int h = counties.height();
  std::vector<char> seen(counties.cells().size(), 0);
  std::size_t total = 0;
  int start = -1;
  for (std::size_t i = 0; i < counties.cells().size(); ++i) {
    if (counties.cells()[i] == county) {
      ++total;
      if (start < 0) start = static_cast<int>(i);
    }
  }
  if (start < 0) return true;
  std::queue<int> q;
  q.push(start);
  seen[start] = 1;
  std::size_t reached = 0;
  while (!q.empty()) {
    const int i = q.front();
    q.pop();
    ++reached;
    const int r = i / w;
    const int c = i % w;
    const int nr[] = {r - 1, r + 1, r, r};
    const int nc[] = {c, c, c - 1, c + 1};
    for (int k = 0; k < 4; ++k) {
      if (nr[k] < 0 || nc[k] < 0 || nr[k] >= h || nc[k] >= w) continue;
      const int j = nr[k] * w + nc[k];
      if (!seen[j] && counties.cells()[j] == county) {
        seen[j] = 1;
        q.push(j);
      }
    }
  }
  return reached == total;
}

struct RandomState {
  DensityGrid density;
  CountyGrid counties;
};

// Voronoi counties on a random grid; regenerated until every county is 4-connected.
// Cells with county 0 (outside) appear in a random corner notch when `notch` is set.
inline RandomState random_state(std::mt19937& rng, int minSide, int maxSide, int maxCounties, bool notch) {
  std::uniform_int_distribution<int> side(minSide, maxSide);
  while (true) {
    const int w = side(rng);
    const int h = side(rng);
    std::uniform_int_distribution<int> nc(1, maxCounties);
    const int k = nc(rng);
    std::vector<std::pair<int, int>> seeds;
    std::uniform_int_distribution<int> rr(0, h - 1), cc(0, w - 1);
    for (int i = 0; i < k; ++i) seeds.emplace_back(rr(rng), cc(rng));
    const int notchRows = notch ? std::uniform_int_distribution<int>(0, h / 3)(rng) : 0;
    const int notchCols = notch ? std::uniform_int_distribution<int>(0, w / 3)(rng) : 0;
    std::vector<int> ids;
    std::vector<double> dens;
    std::uniform_int_distribution<int> dv(0, 9);
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c) {
        dens.push_back(dv(rng));
        if (r < notchRows && c < notchCols) {
          ids.push_back(0);
          continue;
        }
        int best = 0;
        long bestD = -1;
        for (int i = 0; i < k; ++i) {
          const long d = long(r - seeds[i].first) * (r - seeds[i].first) + long(c - seeds[i].second) * (c - seeds[i].second);
          if (bestD < 0 || d < bestD) {
            bestD = d;
            best = i;
          }
        }
        ids.push_back(best + 1);
      }
    bool anyInside = false;
    for (int id : ids) anyInside = anyInside || id != 0;
    if (!anyInside) continue;
    CountyGrid counties(w, h, ids);
    bool ok = true;
    std::set<int> present(ids.begin(), ids.end());
    for (int id : present)
      if (id != 0 && !connected(counties, id)) ok = false;
    if (!ok) continue;
    return {DensityGrid(w, h, std::move(dens)), std::move(counties)};
  }
}

}  // namespace fixtures
