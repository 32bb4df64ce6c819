#pragma once

// Test-only reference computations. Everything here is written against the
// raw definitions (cell sums, permutation enumeration) and shares no code
// path with the library routines it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "ktrp/density.hpp"
#include "ktrp/geometry.hpp"

namespace ktrp::oracle {

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// g_alpha(f, x) straight from its two-branch definition, with every integral
// evaluated by summing over grid cells.
inline double g_alpha_pointwise(const Density& d, double alpha, double fx) {
  const int m = d.resolution();
  const double cell = 1.0 / (static_cast<double>(m) * m);
  double below = 0.0;     // int sqrt(f) 1{f < f(x)}
  double at_most = 0.0;   // int sqrt(f) 1{f <= f(x)}
  double level_area = 0.0;
  for (double v : d.values()) {
    if (v < fx) below += std::sqrt(v) * cell;
    if (v <= fx) at_most += std::sqrt(v) * cell;
    if (v == fx) level_area += cell;
  }
  if (level_area == 0.0) return fx * std::pow(below, alpha);
  return std::sqrt(fx) * (std::pow(at_most, alpha + 1.0) - std::pow(below, alpha + 1.0)) /
         ((alpha + 1.0) * level_area);
}

// Plain Monte Carlo quadrature of g_alpha over the unit square.
inline Estimate mc_g_alpha(const Density& d, double alpha, std::size_t samples, std::uint64_t seed) {
  const int m = d.resolution();
  std::vector<double> per_cell(d.values().size());
  for (std::size_t k = 0; k < per_cell.size(); ++k) {
    const double v = d.values()[k];
    per_cell[k] = v > 0.0 ? g_alpha_pointwise(d, alpha, v) : 0.0;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = u(rng), y = u(rng);
    const int col = std::min(m - 1, static_cast<int>(x * m));
    const int row = std::min(m - 1, static_cast<int>(y * m));
    const double g = per_cell[static_cast<std::size_t>(row) * m + col];
    sum += g;
    sum_sq += g * g;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, sum_sq / n - mean * mean);
  return {mean, std::sqrt(var / n)};
}

inline double euclid(const Point& a, const Point& b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  return std::sqrt(dx * dx + dy * dy);
}

inline double path_len(const std::vector<Point>& pts, const std::vector<std::size_t>& order) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) total += euclid(pts[order[i]], pts[order[i + 1]]);
  return total;
}

// Latency of each visit recomputed from scratch (O(k^2)).
inline double psi_value(const std::vector<Point>& pts, const std::vector<std::size_t>& order, double alpha) {
  double total = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    double li = 0.0;
    for (std::size_t j = 0; j < i; ++j) li += euclid(pts[order[j]], pts[order[j + 1]]);
    total += std::pow(li, alpha);
  }
  return total;
}

inline double min_path_over_orders(const std::vector<Point>& pts, std::vector<std::size_t> ids) {
  std::sort(ids.begin(), ids.end());
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, path_len(pts, ids));
  } while (std::next_permutation(ids.begin(), ids.end()));
  return best;
}

inline double brute_tsp_path(const std::vector<Point>& pts) {
  std::vector<std::size_t> ids(pts.size());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  return min_path_over_orders(pts, ids);
}

inline double brute_k_tsp(const std::vector<Point>& pts, std::size_t k) {
  const std::size_t n = pts.size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) ids.push_back(i);
    best = std::min(best, min_path_over_orders(pts, ids));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

inline double brute_psi(const std::vector<Point>& pts, double alpha) {
  std::vector<std::size_t> ids(pts.size());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, psi_value(pts, ids, alpha));
  } while (std::next_permutation(ids.begin(), ids.end()));
  return best;
}

inline double closest_pair(const std::vector<Point>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, euclid(pts[i], pts[j]));
  return best;
}

// sum_i (sum_{j<i} 1/sqrt(w_order[j]))^alpha.
inline double block_cost(const std::vector<double>& w, const std::vector<std::size_t>& order, double alpha) {
  double total = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    double prefix = 0.0;
    for (std::size_t j = 0; j < i; ++j) prefix += 1.0 / std::sqrt(w[order[j]]);
    total += std::pow(prefix, alpha);
  }
  return total;
}

inline double brute_block_min(const std::vector<double>& w, double alpha) {
  std::vector<std::size_t> ids(w.size());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, block_cost(w, ids, alpha));
  } while (std::next_permutation(ids.begin(), ids.end()));
  return best;
}

// Pearson chi-square statistic of observed counts against expected probabilities.
inline double chi_square(const std::vector<std::size_t>& counts, const std::vector<double>& probs) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  double stat = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (probs[k] <= 0.0) continue;
    const double e = probs[k] * total;
    const double diff = static_cast<double>(counts[k]) - e;
    stat += diff * diff / e;
  }
  return stat;
}

// int g_alpha for f(x, y) = 2x on the unit square, from the continuum formula
// g = 2x (int_0^x sqrt(2s) ds)^alpha = 2x ((2 sqrt 2 / 3) x^{3/2})^alpha.
inline double g_alpha_linear_ramp(double alpha) {
  return 2.0 * std::pow(2.0 * std::sqrt(2.0) / 3.0, alpha) / (1.5 * alpha + 2.0);
}

inline std::vector<Point> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

}  // namespace ktrp::oracle
