#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ktrp/errors.hpp"
#include "ktrp/objectives.hpp"
#include "ktrp/sampling.hpp"

namespace ktrp {

// Largest instance the subset dynamic program accepts (2^n * n^2 work).
inline constexpr std::size_t kExactPathBudget = 12;
// Largest instance exact_psi_trp enumerates (n! orders with pruning).
inline constexpr std::size_t kExactPsiBudget = 10;

namespace detail {

inline double tie_tolerance(double value) { return 1e-12 * std::max(1.0, std::abs(value)); }

inline std::vector<double> distance_matrix(const SampleSet& s) {
  const std::size_t n = s.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = distance(s[i], s[j]);
  return d;
}

// best(S, v): shortest open path visiting exactly the vertex set S and
// starting at v in S. Paths are reversible, so this is also the shortest
// path over S ending at v.
class SubsetPathTable {
 public:
  explicit SubsetPathTable(const SampleSet& s) : n_(s.size()), dist_(distance_matrix(s)) {
    const std::uint32_t full = 1u << n_;
    best_.assign(static_cast<std::size_t>(full) * n_, std::numeric_limits<double>::infinity());
    for (std::uint32_t set = 1; set < full; ++set) {
      for (std::size_t v = 0; v < n_; ++v) {
        if (!(set >> v & 1u)) continue;
        const std::uint32_t rest = set & ~(1u << v);
        if (rest == 0) {
          at(set, v) = 0.0;
          continue;
        }
        double value = std::numeric_limits<double>::infinity();
        for (std::size_t u = 0; u < n_; ++u)
          if (rest >> u & 1u) value = std::min(value, dist(v, u) + at(rest, u));
        at(set, v) = value;
      }
    }
  }

  double best(std::uint32_t set, std::size_t v) const { return best_[static_cast<std::size_t>(set) * n_ + v]; }
  double dist(std::size_t a, std::size_t b) const { return dist_[a * n_ + b]; }
  std::size_t size() const { return n_; }

  // Lexicographically smallest order among all paths whose vertex set is in
  // `sets` and whose length is within tolerance of `optimum`.
  Tour lexicographic_optimum(const std::vector<std::uint32_t>& sets, double optimum) const {
    const double limit = optimum + tie_tolerance(optimum);
    Tour tour;
    std::vector<std::uint32_t> states;
    std::size_t current = n_;
    for (std::size_t v = 0; v < n_ && current == n_; ++v) {
      for (auto set : sets)
        if ((set >> v & 1u) && best(set, v) <= limit) {
          current = v;
          states.push_back(set);
        }
    }
    tour.order.push_back(current);
    double travelled = 0.0;
    while (std::popcount(states.front()) > 1) {
      std::size_t next = n_;
      std::vector<std::uint32_t> next_states;
      for (auto set : states) {
        const std::uint32_t rest = set & ~(1u << current);
        for (std::size_t u = 0; u < n_ && u <= next; ++u) {
          if (!(rest >> u & 1u)) continue;
          if (travelled + dist(current, u) + best(rest, u) > limit) continue;
          if (u < next) {
            next = u;
            next_states.clear();
          }
          next_states.push_back(rest);
        }
      }
      std::sort(next_states.begin(), next_states.end());
      next_states.erase(std::unique(next_states.begin(), next_states.end()), next_states.end());
      travelled += dist(current, next);
      current = next;
      states = std::move(next_states);
      tour.order.push_back(current);
    }
    return tour;
  }

 private:
  double& at(std::uint32_t set, std::size_t v) { return best_[static_cast<std::size_t>(set) * n_ + v]; }

  std::size_t n_;
  std::vector<double> dist_;
  std::vector<double> best_;
};

}  // namespace detail

/// Minimum-length open path through all points (subset dynamic program).
/// Ties resolve to the lexicographically smallest order.
inline Tour exact_tsp_path(const SampleSet& s) {
  const std::size_t n = s.size();
  if (n == 0) throw Infeasible("cannot route an empty instance");
  if (n > kExactPathBudget)
    throw BudgetExceeded("exact TSP path supports at most " + std::to_string(kExactPathBudget) + " points, got " +
                         std::to_string(n));
  if (n == 1) return Tour{{0}};
  const detail::SubsetPathTable table(s);
  const std::uint32_t full = (1u << n) - 1u;
  double optimum = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < n; ++v) optimum = std::min(optimum, table.best(full, v));
  return table.lexicographic_optimum({full}, optimum);
}

/// Minimum-length open path visiting exactly k of the n points.
inline Tour exact_k_tsp(const SampleSet& s, std::size_t k) {
  const std::size_t n = s.size();
  if (k < 2) throw DomainError("k-TSP needs k >= 2");
  if (k > n) throw Infeasible("k = " + std::to_string(k) + " exceeds the " + std::to_string(n) + " available points");
  if (n > kExactPathBudget)
    throw BudgetExceeded("exact k-TSP supports at most " + std::to_string(kExactPathBudget) + " points, got " +
                         std::to_string(n));
  const detail::SubsetPathTable table(s);
  std::vector<std::uint32_t> sets;
  double optimum = std::numeric_limits<double>::infinity();
  for (std::uint32_t set = 1; set < (1u << n); ++set) {
    if (static_cast<std::size_t>(std::popcount(set)) != k) continue;
    sets.push_back(set);
    for (std::size_t v = 0; v < n; ++v)
      if (set >> v & 1u) optimum = std::min(optimum, table.best(set, v));
  }
  return table.lexicographic_optimum(sets, optimum);
}

namespace detail {

// Depth-first enumeration of visit orders in lexicographic order. A branch is
// cut once its partial objective plus the cheapest possible completion can no
// longer beat the incumbent by more than the tie tolerance.
class PsiEnumerator {
 public:
  PsiEnumerator(const SampleSet& s, double alpha) : n_(s.size()), alpha_(alpha), dist_(distance_matrix(s)) {}

  Tour solve(double upper_bound) {
    best_ = upper_bound + 2.0 * tie_tolerance(upper_bound);
    path_.clear();
    for (std::size_t v = 0; v < n_; ++v) {
      path_.push_back(v);
      descend(1u << v, 0.0, 0.0);
      path_.pop_back();
    }
    return Tour{best_order_};
  }

 private:
  void descend(std::uint32_t used, double elapsed, double partial) {
    const std::size_t remaining = n_ - path_.size();
    if (remaining == 0) {
      if (partial < best_ - tie_tolerance(best_)) {
        best_ = partial;
        best_order_ = path_;
      }
      return;
    }
    const std::size_t current = path_.back();
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < n_; ++u)
      if (!(used >> u & 1u)) nearest = std::min(nearest, dist_[current * n_ + u]);
    const double bound = partial + static_cast<double>(remaining) * std::pow(elapsed + nearest, alpha_);
    if (bound >= best_ - tie_tolerance(best_)) return;

    for (std::size_t u = 0; u < n_; ++u) {
      if (used >> u & 1u) continue;
      const double arrival = elapsed + dist_[current * n_ + u];
      path_.push_back(u);
      descend(used | (1u << u), arrival, partial + std::pow(arrival, alpha_));
      path_.pop_back();
    }
  }

  std::size_t n_;
  double alpha_;
  std::vector<double> dist_;
  std::vector<std::size_t> path_;
  std::vector<std::size_t> best_order_;
  double best_ = 0.0;
};

}  // namespace detail

/// Order of all points minimizing sum_i l_i^alpha, by exhaustive search.
inline Tour exact_psi_trp(const SampleSet& s, double alpha) {
  if (!(alpha >= 1.0)) throw DomainError("alpha must be >= 1");
  const std::size_t n = s.size();
  if (n == 0) throw Infeasible("cannot route an empty instance");
  if (n > kExactPsiBudget)
    throw BudgetExceeded("exact psi-TRP supports at most " + std::to_string(kExactPsiBudget) + " points, got " +
                         std::to_string(n));
  if (n == 1) return Tour{{0}};

  // Incumbent: best nearest-neighbour order over all start points.
  double upper = std::numeric_limits<double>::infinity();
  for (std::size_t start = 0; start < n; ++start) {
    Tour t{{start}};
    std::vector<bool> used(n, false);
    used[start] = true;
    for (std::size_t step = 1; step < n; ++step) {
      std::size_t next = n;
      for (std::size_t u = 0; u < n; ++u)
        if (!used[u] && (next == n || distance(s[t.order.back()], s[u]) < distance(s[t.order.back()], s[next])))
          next = u;
      used[next] = true;
      t.order.push_back(next);
    }
    upper = std::min(upper, psi_objective(s, t, alpha));
  }
  return detail::PsiEnumerator(s, alpha).solve(upper);
}

/// Constant-factor TSP path on a subset of the points: nearest-neighbour
/// construction followed by first-improvement 2-opt.
///
/// Without `start` the walk begins at the lowest index of the subset and 2-opt
/// may move both endpoints. With `start` that point stays first. At most
/// 50 * |subset| improvement passes are made.
inline Tour heuristic_tsp_path(const SampleSet& s, std::span<const std::size_t> subset,
                               std::optional<std::size_t> start = std::nullopt) {
  if (subset.empty()) throw InvalidTour("heuristic TSP needs a nonempty subset");
  std::vector<std::size_t> ids(subset.begin(), subset.end());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) throw InvalidTour("subset has duplicate indices");
  if (ids.back() >= s.size()) throw InvalidTour("subset index out of range");
  const std::size_t p = ids.size();

  std::size_t first = 0;
  if (start) {
    auto it = std::lower_bound(ids.begin(), ids.end(), *start);
    if (it == ids.end() || *it != *start) throw InvalidTour("start point is not in the subset");
    first = static_cast<std::size_t>(it - ids.begin());
  }

  // Nearest neighbour over local positions; ties go to the lower index.
  std::vector<std::size_t> order;
  order.reserve(p);
  std::vector<bool> used(p, false);
  order.push_back(first);
  used[first] = true;
  for (std::size_t step = 1; step < p; ++step) {
    const Point& here = s[ids[order.back()]];
    std::size_t next = p;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < p; ++u) {
      if (used[u]) continue;
      const double d = squared_distance(here, s[ids[u]]);
      if (d < best) {
        best = d;
        next = u;
      }
    }
    used[next] = true;
    order.push_back(next);
  }

  std::vector<Point> pts(p);
  for (std::size_t i = 0; i < p; ++i) pts[i] = s[ids[order[i]]];
  auto d = [&pts](std::size_t a, std::size_t b) { return distance(pts[a], pts[b]); };

  const std::size_t lo = start ? 1 : 0;
  const std::size_t max_passes = 50 * p;
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    bool improved = false;
    for (std::size_t i = lo; i + 1 < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j) {
        double delta = 0.0;
        if (i > 0) delta += d(i - 1, j) - d(i - 1, i);
        if (j + 1 < p) delta += d(i, j + 1) - d(j, j + 1);
        if (delta < -1e-12) {
          std::reverse(pts.begin() + static_cast<std::ptrdiff_t>(i), pts.begin() + static_cast<std::ptrdiff_t>(j) + 1);
          std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i), order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
          improved = true;
        }
      }
    }
    if (!improved) break;
  }

  Tour tour;
  tour.order.reserve(p);
  for (auto local : order) tour.order.push_back(ids[local]);
  return tour;
}

inline Tour heuristic_tsp_path(const SampleSet& s, const std::vector<std::size_t>& subset,
                               std::optional<std::size_t> start = std::nullopt) {
  return heuristic_tsp_path(s, std::span<const std::size_t>(subset), start);
}

}  // namespace ktrp
