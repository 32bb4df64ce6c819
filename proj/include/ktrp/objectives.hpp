#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ktrp/errors.hpp"
#include "ktrp/geometry.hpp"
#include "ktrp/sampling.hpp"

namespace ktrp {

/// Service order over a SampleSet: distinct point indices, possibly a strict
/// subset of the instance (k-TSP). Always an open path, never closed.
struct Tour {
  std::vector<std::size_t> order;

  std::size_t size() const { return order.size(); }
  friend bool operator==(const Tour&, const Tour&) = default;
};

inline void validate_tour(const SampleSet& s, const Tour& t) {
  if (t.order.empty()) throw InvalidTour("tour must visit at least one point");
  std::vector<bool> seen(s.size(), false);
  for (auto idx : t.order) {
    if (idx >= s.size()) throw InvalidTour("tour index " + std::to_string(idx) + " out of range");
    if (seen[idx]) throw InvalidTour("tour index " + std::to_string(idx) + " visited twice");
    seen[idx] = true;
  }
}

enum class ObjectiveKind { path_length, latency, psi };

struct ObjectiveValue {
  ObjectiveKind kind = ObjectiveKind::path_length;
  double alpha = 1.0;  // psi only
  double value = 0.0;
};

inline double path_length(const SampleSet& s, const Tour& t) {
  validate_tour(s, t);
  double length = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) length += distance(s[t.order[i - 1]], s[t.order[i]]);
  return length;
}

namespace detail {

// Sum over visits of Psi(l_i), where l_i is the distance travelled before the
// i-th visit. pow(x, 1.0) == x exactly, so alpha = 1 reproduces the plain sum.
inline double latency_sum(const SampleSet& s, const Tour& t, double alpha, bool plain) {
  double elapsed = 0.0;
  double total = 0.0;  // l_1 = 0 contributes nothing
  for (std::size_t i = 1; i < t.size(); ++i) {
    elapsed += distance(s[t.order[i - 1]], s[t.order[i]]);
    total += plain ? elapsed : std::pow(elapsed, alpha);
  }
  return total;
}

}  // namespace detail

/// Sum of latencies l_i = sum_{j<i} |x_{j+1} - x_j|; the first visit waits 0.
inline double total_latency(const SampleSet& s, const Tour& t) {
  validate_tour(s, t);
  const double total = detail::latency_sum(s, t, 1.0, true);
#ifndef NDEBUG
  // Edge-weighted form: sum_i (n - i) d_i.
  double weighted = 0.0;
  const std::size_t n = t.size();
  for (std::size_t i = 1; i < n; ++i)
    weighted += static_cast<double>(n - i) * distance(s[t.order[i - 1]], s[t.order[i]]);
  assert(std::abs(weighted - total) <= 1e-12 * std::max(1.0, total));
#endif
  return total;
}

/// sum_i (l_i)^alpha for the power disutility Psi_alpha(x) = x^alpha.
inline double psi_objective(const SampleSet& s, const Tour& t, double alpha) {
  if (!(alpha >= 1.0)) throw DomainError("alpha must be >= 1");
  validate_tour(s, t);
  return detail::latency_sum(s, t, alpha, false);
}

inline ObjectiveValue evaluate(const SampleSet& s, const Tour& t, ObjectiveKind kind, double alpha = 1.0) {
  switch (kind) {
    case ObjectiveKind::path_length:
      return {kind, alpha, path_length(s, t)};
    case ObjectiveKind::latency:
      return {kind, 1.0, total_latency(s, t)};
    case ObjectiveKind::psi:
      return {kind, alpha, psi_objective(s, t, alpha)};
  }
  return {};
}

}  // namespace ktrp
