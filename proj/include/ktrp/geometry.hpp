#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace ktrp {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Grid cell of the unit square at resolution m. Column i = floor(m x), row
// j = floor(m y); points on the far boundary (x = 1 or y = 1) are clamped
// into the last column/row, and interior grid lines belong to the higher
// cell. Out-of-range coordinates are clamped as well.
struct Cell {
  std::int64_t col = 0;
  std::int64_t row = 0;

  // Row-major linear index (rows run along y), matching Density storage.
  std::uint64_t linear(std::int64_t m) const {
    return static_cast<std::uint64_t>(row) * static_cast<std::uint64_t>(m) +
           static_cast<std::uint64_t>(col);
  }
};

inline std::int64_t grid_coordinate(double v, std::int64_t m) {
  const double scaled = std::floor(v * static_cast<double>(m));
  if (!(scaled > 0.0)) return 0;  // also catches NaN
  if (scaled >= static_cast<double>(m)) return m - 1;
  return static_cast<std::int64_t>(scaled);
}

inline Cell cell_of(const Point& p, std::int64_t m) {
  return Cell{grid_coordinate(p.x, m), grid_coordinate(p.y, m)};
}

}  // namespace ktrp
