#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "ktrp/density.hpp"
#include "ktrp/objectives.hpp"
#include "ktrp/sampling.hpp"
#include "ktrp/schemes.hpp"
#include "ktrp/solvers.hpp"
#include "oracles.hpp"

namespace ktrp {
namespace {

SampleSet make_set(std::vector<Point> pts) {
  SampleSet s;
  s.points = std::move(pts);
  return s;
}

TEST(PartitionResolution, Examples) {
  EXPECT_EQ(ktsp_partition_resolution(100, 3, 1.0), 22);
  EXPECT_EQ(ktsp_partition_resolution(10000, 2, 1.0), 10000);
  EXPECT_EQ(ktsp_partition_resolution(5, 5, 1.0), 1);
  EXPECT_EQ(ktsp_partition_resolution(8, 8, 4.0), 1);
  EXPECT_EQ(ktsp_partition_resolution(100, 3, 2.0), 11);
}

TEST(PartitionResolution, Errors) {
  EXPECT_THROW(ktsp_partition_resolution(100, 3, 0.0), DomainError);
  EXPECT_THROW(ktsp_partition_resolution(100, 3, -1.0), DomainError);
  EXPECT_THROW(ktsp_partition_resolution(100, 1, 1.0), DomainError);
  EXPECT_THROW(ktsp_partition_resolution(3, 4, 1.0), Infeasible);
}

TEST(DensestCell, DegeneratesToExactTspWhenKIsN) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SampleSet s = sample_points(uniform_density(), 7, seed);
    const Tour scheme = ktsp_densest_cell(s, 7);
    EXPECT_EQ(scheme, exact_tsp_path(s));
  }
}

TEST(DensestCell, NeverBeatsExactKTsp) {
  for (std::size_t k : {2u, 3u, 4u}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const SampleSet s = sample_points(uniform_density(), 8, seed);
      const Tour t = ktsp_densest_cell(s, k);
      ASSERT_EQ(t.size(), k);
      EXPECT_GE(path_length(s, t), path_length(s, exact_k_tsp(s, k)));
    }
  }
}

// A tight 2x2 block of pitch delta at a cell centre plus one lattice point per
// other cell: the scheme must route the block.
TEST(DensestCell, PicksTightCluster) {
  const std::size_t k = 4;
  const double delta = 1e-3;
  const int m = 6;
  std::vector<Point> pts;
  const Point centre{1.5 / m, 1.5 / m};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) pts.push_back({centre.x + (a - 0.5) * delta, centre.y + (b - 0.5) * delta});
  for (int row = 0; row < m; ++row)
    for (int col = 0; col < m; ++col)
      if (row != 1 || col != 1) pts.push_back({(col + 0.3) / m, (row + 0.7) / m});
  const SampleSet s = make_set(pts);
  ASSERT_EQ(ktsp_partition_resolution(s.size(), k, 1.0), m);

  const Tour t = ktsp_densest_cell(s, k);
  std::vector<std::size_t> chosen = t.order;
  std::sort(chosen.begin(), chosen.end());
  EXPECT_EQ(chosen, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_LE(path_length(s, t), (k - 1) * 2.0 * delta * std::sqrt(2.0));
}

TEST(DensestCell, CoarsensUntilACellHoldsK) {
  // Spread points, one per cell of a fine grid: the busiest cell only reaches k after halving.
  std::vector<Point> pts;
  for (int row = 0; row < 8; ++row)
    for (int col = 0; col < 8; ++col) pts.push_back({(col + 0.5) / 8, (row + 0.5) / 8});
  const SampleSet s = make_set(pts);
  const auto choice = densest_cell_selection(s, 5);
  EXPECT_LT(choice.resolution, ktsp_partition_resolution(64, 5, 1.0));
  EXPECT_EQ(choice.selected.size(), 5u);
  for (auto i : choice.selected) {
    const Cell c = cell_of(s[i], choice.resolution);
    EXPECT_EQ(c.col, choice.cell.col);
    EXPECT_EQ(c.row, choice.cell.row);
  }
  EXPECT_THROW(ktsp_densest_cell(s, 65), Infeasible);
}

TEST(DensestCell, LargeKUsesHeuristicPath) {
  const SampleSet s = sample_points(uniform_density(), 400, 3);
  const Tour t = ktsp_densest_cell(s, 25);
  EXPECT_EQ(t.size(), 25u);
  EXPECT_EQ(std::set<std::size_t>(t.order.begin(), t.order.end()).size(), 25u);
}

TEST(DensestCell, Sandwich) {
  // exact_k_tsp <= scheme <= heuristic path over the same selected points.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SampleSet s = sample_points(uniform_density(), 10, 50 + seed);
    for (std::size_t k : {3u, 5u}) {
      const double exact = path_length(s, exact_k_tsp(s, k));
      const double scheme = path_length(s, ktsp_densest_cell(s, k));
      const double heuristic = path_length(s, heuristic_tsp_path(s, densest_cell_selection(s, k).selected));
      EXPECT_LE(exact, scheme);
      EXPECT_LE(scheme, heuristic + 1e-12);
    }
  }
}

TEST(BlockOrder, Examples) {
  EXPECT_EQ(optimal_block_order(std::vector<double>{1, 4, 9}, 2.0), (std::vector<std::size_t>{2, 1, 0}));
  EXPECT_EQ(optimal_block_order(std::vector<double>{2, 2, 2, 2}, 1.0), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(optimal_block_order(std::vector<double>{1, 3, 3}, 1.0), (std::vector<std::size_t>{1, 2, 0}));
}

TEST(BlockOrder, Errors) {
  EXPECT_THROW(optimal_block_order(std::vector<double>{1, 0}, 1.0), DomainError);
  EXPECT_THROW(optimal_block_order(std::vector<double>{1, -2}, 1.0), DomainError);
  EXPECT_THROW(optimal_block_order(std::vector<double>{1, 2}, 0.5), DomainError);
}

TEST(BlockOrder, ExhaustivelyOptimal) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (double alpha : {1.0, 2.0, 3.0}) {
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<double> w(6);
      for (auto& v : w) v = u(rng);
      const auto order = optimal_block_order(w, alpha);
      EXPECT_LE(oracle::block_cost(w, order, alpha), oracle::brute_block_min(w, alpha));
      EXPECT_EQ(block_objective(w, order, alpha), oracle::block_cost(w, order, alpha));
    }
  }
}

TEST(BlockOrder, ScaleInvariant) {
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> w(1 + rng() % 9);
    for (auto& v : w) v = u(rng);
    const double c = u(rng);
    std::vector<double> scaled = w;
    for (auto& v : scaled) v *= c;
    EXPECT_EQ(optimal_block_order(w, 2.0), optimal_block_order(scaled, 2.0));
  }
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  return ids;
}

TEST(Sweep, SingleCellIsPlainHeuristic) {
  const SampleSet s = sample_points(uniform_density(), 60, 4);
  EXPECT_EQ(psitrp_sweep(s, 1), heuristic_tsp_path(s, all_indices(60)));
}

TEST(Sweep, VisitsEveryPointOnce) {
  const Density d = make_density(std::vector<double>{5, 1, 2, 0, 3, 1, 1, 1, 4}, 3);
  for (int m : {1, 2, 3, 5}) {
    const SampleSet s = sample_points(d, 300, static_cast<std::uint64_t>(m));
    const Tour t = psitrp_sweep(s, m);
    ASSERT_EQ(t.size(), s.size());
    std::vector<std::size_t> sorted = t.order;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, all_indices(s.size()));
  }
  EXPECT_TRUE(psitrp_sweep(SampleSet{}, 2).order.empty());
}

TEST(Sweep, CellsInDecreasingDensityOrder) {
  const Density d = make_density(std::vector<double>{1, 4, 2, 3}, 2);
  const SampleSet s = sample_points(uniform_density(), 200, 9);
  const Tour t = psitrp_sweep(s, 2, OrderSource::known(d));
  // Expected cell sequence: 1 (value 4), 3, 2, 0.
  std::vector<std::uint64_t> seen;
  for (auto i : t.order) {
    const auto cell = cell_of(s[i], 2).linear(2);
    if (seen.empty() || seen.back() != cell) seen.push_back(cell);
  }
  EXPECT_EQ(seen, (std::vector<std::uint64_t>{1, 3, 2, 0}));
}

TEST(Sweep, SkipsEmptyLowDensityCells) {
  const Density d = make_density(std::vector<double>{3, 1, 3, 1}, 2);
  // Points only in the high-density column (cells 0 and 2).
  std::vector<Point> pts = oracle::random_points(30, 12);
  for (auto& p : pts) p.x *= 0.5;
  const SampleSet s = make_set(pts);
  const Tour t = psitrp_sweep(s, 2, OrderSource::known(d));

  std::vector<std::size_t> bottom, top;
  for (std::size_t i = 0; i < pts.size(); ++i) (pts[i].y < 0.5 ? bottom : top).push_back(i);
  Tour expected = heuristic_tsp_path(s, bottom);
  std::size_t entry = top.front();
  for (auto i : top)
    if (squared_distance(s[expected.order.back()], s[i]) < squared_distance(s[expected.order.back()], s[entry])) entry = i;
  const Tour rest = heuristic_tsp_path(s, top, entry);
  expected.order.insert(expected.order.end(), rest.order.begin(), rest.order.end());
  EXPECT_EQ(t, expected);
}

TEST(Sweep, ResolutionMismatchIsConfigError) {
  const SampleSet s = sample_points(uniform_density(), 10, 1);
  EXPECT_THROW(psitrp_sweep(s, 3, OrderSource::known(uniform_density(2))), ConfigError);
}

TEST(Sweep, NeverBeatsExactPsiTrp) {
  double worst = 1.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SampleSet s = sample_points(uniform_density(), 8, 1000 + seed);
    const double scheme = psi_objective(s, psitrp_sweep(s, 2), 1.0);
    const double exact = psi_objective(s, exact_psi_trp(s, 1.0), 1.0);
    EXPECT_GE(scheme, exact);
    worst = std::max(worst, scheme / exact);
  }
  std::cout << "[ info ] max sweep/exact psi ratio (n=8, m=2, alpha=1): " << worst << "\n";
}

// Ranking cells by decreasing count beats the reversed ranking on the block
// objective sum_k N_k Psi(travel before cell k).
TEST(Sweep, DecreasingOrderBeatsReversedOnBlockObjective) {
  const Density d = make_density(std::vector<double>{6, 1, 3, 0.5}, 2);
  int tested = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const SampleSet s = sample_points(d, 400, seed);
    const CellCounts counts = cell_counts(s, 2);
    std::set<std::size_t> distinct(counts.counts.begin(), counts.counts.end());
    if (distinct.size() != counts.counts.size()) continue;
    ++tested;

    const auto order = sweep_cell_order(counts, OrderSource::empirical());
    std::vector<double> travel(4, 0.0);
    for (std::size_t c = 0; c < 4; ++c) {
      std::vector<std::size_t> ids;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (cell_of(s[i], 2).linear(2) == c) ids.push_back(i);
      if (!ids.empty()) travel[c] = path_length(s, heuristic_tsp_path(s, ids));
    }
    for (double alpha : {1.0, 2.0}) {
      auto cost = [&](const std::vector<std::size_t>& seq) {
        double elapsed = 0.0, total = 0.0;
        for (auto c : seq) {
          total += static_cast<double>(counts.counts[c]) * std::pow(elapsed, alpha);
          elapsed += travel[c];
        }
        return total;
      };
      std::vector<std::size_t> reversed(order.rbegin(), order.rend());
      EXPECT_LE(cost(order), cost(reversed));
    }
  }
  EXPECT_GT(tested, 20);
}

TEST(Schemes, Deterministic) {
  const SampleSet s = sample_points(make_density(std::vector<double>{1, 2, 3, 4}, 2), 300, 5);
  EXPECT_EQ(psitrp_sweep(s, 3), psitrp_sweep(s, 3));
  EXPECT_EQ(ktsp_densest_cell(s, 4), ktsp_densest_cell(s, 4));
}

TEST(SweepTruncated, TakesSweepPrefix) {
  const SampleSet s = sample_points(uniform_density(), 100, 6);
  const Tour full = psitrp_sweep(s, 2);
  const Tour part = sweep_truncated_ktsp(s, 30, 2);
  ASSERT_EQ(part.size(), 30u);
  EXPECT_TRUE(std::equal(part.order.begin(), part.order.end(), full.order.begin()));
  EXPECT_THROW(sweep_truncated_ktsp(s, 101, 2), Infeasible);
}

}  // namespace
}  // namespace ktrp
