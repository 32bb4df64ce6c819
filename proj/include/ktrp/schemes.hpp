#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ktrp/density.hpp"
#include "ktrp/errors.hpp"
#include "ktrp/objectives.hpp"
#include "ktrp/sampling.hpp"
#include "ktrp/solvers.hpp"

namespace ktrp {

// k at or below which the densest-cell scheme routes its k points exactly.
inline constexpr std::size_t kDensestCellExactK = 10;

/// Grid fineness m_a = max(1, floor((1/a) sqrt(n^(1 + 1/(k-1)) / (k-1)))) at
/// which a cell holding k of the n points appears with constant probability.
inline std::int64_t ktsp_partition_resolution(std::size_t n, std::size_t k, double a) {
  if (!(a > 0.0)) throw DomainError("partition scale a must be > 0");
  if (k < 2) throw DomainError("k-TSP needs k >= 2");
  if (n < k) throw Infeasible("k exceeds n");
  const long double km1 = static_cast<long double>(k - 1);
  const long double radicand = std::pow(static_cast<long double>(n), 1.0L + 1.0L / km1) / km1;
  long double m = std::sqrt(radicand) / static_cast<long double>(a);
  // pow may land a hair under an exact integer (e.g. 100^1.5); absorb that before flooring.
  m = std::floor(m * (1.0L + 1e-15L));
  // 2^31 cells per side is far beyond anything a sample can populate.
  m = std::min(m, static_cast<long double>(std::int64_t{1} << 31));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(m));
}

namespace detail {

struct BusiestCell {
  Cell cell;
  std::size_t count = 0;
};

// Most populated cell at resolution m, ties to the lowest row-major index.
// Sorting cell keys keeps this O(n log n) however fine the grid is.
inline BusiestCell busiest_cell(const SampleSet& s, std::int64_t m) {
  std::vector<std::uint64_t> keys;
  keys.reserve(s.size());
  for (const auto& p : s.points) keys.push_back(cell_of(p, m).linear(m));
  std::sort(keys.begin(), keys.end());
  BusiestCell best;
  std::uint64_t best_key = 0;
  for (std::size_t i = 0; i < keys.size();) {
    std::size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    if (j - i > best.count) {
      best.count = j - i;
      best_key = keys[i];
    }
    i = j;
  }
  const auto um = static_cast<std::uint64_t>(m);
  best.cell = Cell{static_cast<std::int64_t>(best_key % um), static_cast<std::int64_t>(best_key / um)};
  return best;
}

inline SampleSet restrict_to(const SampleSet& s, std::span<const std::size_t> ids) {
  SampleSet sub;
  sub.seed = s.seed;
  sub.density_id = s.density_id;
  sub.points.reserve(ids.size());
  for (auto i : ids) sub.points.push_back(s[i]);
  return sub;
}

}  // namespace detail

struct DensestCellChoice {
  std::int64_t resolution = 1;  // grid the cell was finally taken from
  Cell cell;
  std::vector<std::size_t> selected;  // the k chosen indices, ascending
};

/// Cell selection of the densest-cell scheme, exposed for inspection.
///
/// Starts at ktsp_partition_resolution(n, k, a) and halves the grid until the
/// busiest cell holds k points; keeps the k points closest to that cell's
/// centre (ties to the lower index).
inline DensestCellChoice densest_cell_selection(const SampleSet& s, std::size_t k, double a = 1.0) {
  const std::size_t n = s.size();
  if (k < 2) throw DomainError("k-TSP needs k >= 2");
  if (k > n) throw Infeasible("k = " + std::to_string(k) + " exceeds the " + std::to_string(n) + " available points");
  std::int64_t m = ktsp_partition_resolution(n, k, a);
  detail::BusiestCell busiest = detail::busiest_cell(s, m);
  while (busiest.count < k) {
    m = std::max<std::int64_t>(1, m / 2);
    busiest = detail::busiest_cell(s, m);
  }

  const double side = 1.0 / static_cast<double>(m);
  const Point centre{(static_cast<double>(busiest.cell.col) + 0.5) * side,
                     (static_cast<double>(busiest.cell.row) + 0.5) * side};
  std::vector<std::pair<double, std::size_t>> inside;
  for (std::size_t i = 0; i < n; ++i) {
    const Cell c = cell_of(s[i], m);
    if (c.col == busiest.cell.col && c.row == busiest.cell.row) inside.emplace_back(squared_distance(s[i], centre), i);
  }
  std::sort(inside.begin(), inside.end());
  DensestCellChoice choice{m, busiest.cell, {}};
  for (std::size_t i = 0; i < k; ++i) choice.selected.push_back(inside[i].second);
  std::sort(choice.selected.begin(), choice.selected.end());
  return choice;
}

/// k-TSP approximation: a TSP path through k points of the most crowded grid
/// cell. The path is exact for k <= 10 and nearest-neighbour + 2-opt above.
inline Tour ktsp_densest_cell(const SampleSet& s, std::size_t k, double a = 1.0) {
  const DensestCellChoice choice = densest_cell_selection(s, k, a);
  if (k <= kDensestCellExactK) {
    const Tour local = exact_tsp_path(detail::restrict_to(s, choice.selected));
    Tour tour;
    for (auto i : local.order) tour.order.push_back(choice.selected[i]);
    return tour;
  }
  return heuristic_tsp_path(s, choice.selected);
}

/// sum_i Psi_alpha(sum_{j<i} 1/sqrt(w_order[j])): the latency cost of visiting
/// unit blocks of density w in the given order.
inline double block_objective(std::span<const double> weights, std::span<const std::size_t> order, double alpha) {
  double prefix = 0.0;
  double total = 0.0;
  for (auto idx : order) {
    total += std::pow(prefix, alpha);
    prefix += 1.0 / std::sqrt(weights[idx]);
  }
  return total;
}

/// Block order minimizing block_objective: decreasing weight (increasing
/// 1/sqrt(w)), ties by original index.
inline std::vector<std::size_t> optimal_block_order(std::span<const double> weights, double alpha) {
  if (!(alpha >= 1.0)) throw DomainError("alpha must be >= 1");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("block weights must be positive and finite");
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  return order;
}

inline std::vector<std::size_t> optimal_block_order(const std::vector<double>& weights, double alpha) {
  return optimal_block_order(std::span<const double>(weights), alpha);
}

/// Where the sweep takes its cell ranking from: the sample's own cell counts,
/// or a known density on the same grid.
struct OrderSource {
  const Density* density = nullptr;

  static OrderSource empirical() { return {}; }
  static OrderSource known(const Density& d) { return OrderSource{&d}; }
  bool is_empirical() const { return density == nullptr; }
};

/// Cells in sweep order: decreasing density value (or point count), ties by
/// row-major index.
inline std::vector<std::size_t> sweep_cell_order(const CellCounts& counts, OrderSource source) {
  const int m = counts.m;
  if (!source.is_empirical() && source.density->resolution() != m)
    throw ConfigError("density resolution " + std::to_string(source.density->resolution()) +
                      " does not match sweep grid " + std::to_string(m));
  std::vector<std::size_t> cells(static_cast<std::size_t>(m) * m);
  std::iota(cells.begin(), cells.end(), std::size_t{0});
  if (source.is_empirical()) {
    std::stable_sort(cells.begin(), cells.end(),
                     [&](std::size_t a, std::size_t b) { return counts.counts[a] > counts.counts[b]; });
  } else {
    const auto values = source.density->values();
    std::stable_sort(cells.begin(), cells.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  }
  return cells;
}

/// Psi-TRP approximation: visit grid cells by decreasing density, running a
/// TSP path inside each nonempty cell. Each cell's path starts at its point
/// nearest the previous endpoint; the first cell's path is unconstrained.
inline Tour psitrp_sweep(const SampleSet& s, int m, OrderSource source = OrderSource::empirical()) {
  if (m < 1) throw ConfigError("sweep grid resolution must be >= 1");
  const CellCounts counts = cell_counts(s, m);
  const auto cell_sequence = sweep_cell_order(counts, source);

  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(m) * m);
  for (std::size_t i = 0; i < s.size(); ++i) members[cell_of(s[i], m).linear(m)].push_back(i);

  Tour tour;
  tour.order.reserve(s.size());
  for (auto cell : cell_sequence) {
    const auto& ids = members[cell];
    if (ids.empty()) continue;
    Tour part;
    if (tour.order.empty()) {
      part = heuristic_tsp_path(s, ids);
    } else {
      const Point& last = s[tour.order.back()];
      std::size_t entry = ids.front();
      for (auto i : ids)
        if (squared_distance(last, s[i]) < squared_distance(last, s[entry])) entry = i;
      part = heuristic_tsp_path(s, ids, entry);
    }
    tour.order.insert(tour.order.end(), part.order.begin(), part.order.end());
  }
  return tour;
}

/// k-TSP variant for k proportional to n: the first k visits of the sweep.
/// Experimental; no rate guarantee is attached to it.
inline Tour sweep_truncated_ktsp(const SampleSet& s, std::size_t k, int m,
                                 OrderSource source = OrderSource::empirical()) {
  if (k < 1 || k > s.size()) throw Infeasible("k must lie in [1, n]");
  Tour tour = psitrp_sweep(s, m, source);
  tour.order.resize(k);
  return tour;
}

}  // namespace ktrp
