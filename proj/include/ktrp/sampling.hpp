#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ktrp/density.hpp"
#include "ktrp/geometry.hpp"

namespace ktrp {

// SplitMix64 finalizer: a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based splittable generator.
///
/// A stream is identified by (seed, stream index); its k-th output is
/// mix64(key + (k + 1) * golden) with key = mix64(seed ^ mix64(stream)).
/// Streams can therefore be materialized independently and in any order,
/// which keeps parallel and sequential runs bit-identical.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0) : state_(mix64(seed ^ mix64(stream))) {}

  std::uint64_t next() {
    state_ += kGolden;
    return mix64(state_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

namespace detail {

// (c + u) / m may round across a grid line; nudge the coordinate back into cell c.
inline double snap_into_cell(double v, std::int64_t c, std::int64_t m) {
  while (grid_coordinate(v, m) < c) v = std::nextafter(v, 2.0);
  while (grid_coordinate(v, m) > c) v = std::nextafter(v, -1.0);
  return v;
}

}  // namespace detail

struct SampleSet {
  std::vector<Point> points;
  std::uint64_t seed = 0;
  std::string density_id;

  std::size_t size() const { return points.size(); }
  const Point& operator[](std::size_t i) const { return points[i]; }
};

/// Draws n i.i.d. points from d. Point i uses its own substream (seed, i):
/// one uniform picks the cell by inverse CDF over f_k / m^2, two more place
/// the point uniformly inside that cell.
inline SampleSet sample_points(const Density& d, std::size_t n, std::uint64_t seed) {
  const int m = d.resolution();
  const auto values = d.values();
  std::vector<double> cdf(values.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    acc += values[k];
    cdf[k] = acc;
  }
  const double total = acc;

  SampleSet out;
  out.seed = seed;
  out.density_id = d.id();
  out.points.reserve(n);
  const double side = 1.0 / m;
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 rng(seed, i);
    const double target = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    if (it == cdf.end()) --it;
    // Trailing zero cells are only reachable through rounding at the top end.
    while (values[static_cast<std::size_t>(it - cdf.begin())] <= 0.0) --it;
    const auto k = static_cast<std::size_t>(it - cdf.begin());
    const auto col = static_cast<std::int64_t>(k % m);
    const auto row = static_cast<std::int64_t>(k / m);

    Point p{(static_cast<double>(col) + rng.uniform()) * side, (static_cast<double>(row) + rng.uniform()) * side};
    p.x = detail::snap_into_cell(p.x, col, m);
    p.y = detail::snap_into_cell(p.y, row, m);
    out.points.push_back(p);
  }
  return out;
}

struct CellCounts {
  int m = 1;
  std::vector<std::size_t> counts;  // row-major, N_k

  std::size_t at(int col, int row) const { return counts[static_cast<std::size_t>(row) * m + col]; }
  std::size_t total() const {
    std::size_t sum = 0;
    for (auto c : counts) sum += c;
    return sum;
  }
};

inline CellCounts cell_counts(const SampleSet& s, int m) {
  if (m < 1) throw DomainError("grid resolution must be >= 1");
  CellCounts out{m, std::vector<std::size_t>(static_cast<std::size_t>(m) * m, 0)};
  for (const auto& p : s.points) ++out.counts[cell_of(p, m).linear(m)];
  return out;
}

}  // namespace ktrp
