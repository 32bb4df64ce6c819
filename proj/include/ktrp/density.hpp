#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ktrp/errors.hpp"
#include "ktrp/geometry.hpp"

namespace ktrp {

/// Piecewise-constant probability density on an m x m grid over [0,1]^2.
///
/// Cell (col, row) covers [col/m, (col+1)/m) x [row/m, (row+1)/m) and holds the
/// value f_k, stored row-major (k = row * m + col). Values are nonnegative and
/// integrate to one: sum_k f_k / m^2 = 1.
class Density {
 public:
  int resolution() const { return m_; }
  double cell_area() const { return 1.0 / (static_cast<double>(m_) * m_); }
  std::span<const double> values() const { return values_; }

  double value(int col, int row) const { return values_[static_cast<std::size_t>(row) * m_ + col]; }
  double value_at(const Point& p) const { return values_[cell_of(p, m_).linear(m_)]; }

  /// sup of the density, i.e. the bound on the smoothed (Lebesgue derivative) density.
  double max_value() const { return *std::max_element(values_.begin(), values_.end()); }

  /// Smallest strictly positive cell value (f_*).
  double min_positive_value() const {
    double best = 0.0;
    for (double v : values_)
      if (v > 0.0 && (best == 0.0 || v < best)) best = v;
    return best;
  }

  /// Lebesgue measure of {f > 0}.
  double support_area() const {
    const auto positive = std::count_if(values_.begin(), values_.end(), [](double v) { return v > 0.0; });
    return static_cast<double>(positive) / (static_cast<double>(m_) * m_);
  }

  /// Stable 64-bit FNV-1a digest of (m, values) rendered as 16 hex digits.
  std::string id() const {
    std::uint64_t h = 14695981039346656037ULL;
    auto mix = [&h](const void* data, std::size_t len) {
      const auto* bytes = static_cast<const unsigned char*>(data);
      for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ULL;
      }
    };
    const std::int64_t m = m_;
    mix(&m, sizeof m);
    for (double v : values_) mix(&v, sizeof v);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  friend bool operator==(const Density&, const Density&) = default;

 private:
  Density(int m, std::vector<double> values) : m_(m), values_(std::move(values)) {}

  int m_ = 1;
  std::vector<double> values_;

  friend Density make_density(std::span<const double> raw, int m);
  friend Density refine(const Density& d, int beta);
};

/// Normalizes nonnegative cell weights into a probability density.
inline Density make_density(std::span<const double> raw, int m) {
  if (m < 1) throw InvalidDensity("grid resolution must be >= 1");
  const auto cells = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
  if (raw.size() != cells)
    throw InvalidDensity("expected " + std::to_string(cells) + " cell values, got " + std::to_string(raw.size()));
  double total = 0.0;
  for (double v : raw) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidDensity("cell values must be finite and nonnegative");
    total += v;
  }
  if (!(total > 0.0)) throw InvalidDensity("at least one cell value must be positive");

  const double integral = total / static_cast<double>(cells);
  std::vector<double> values(raw.begin(), raw.end());
  for (double& v : values) v /= integral;
  return Density(m, std::move(values));
}

inline Density make_density(const std::vector<double>& raw, int m) {
  return make_density(std::span<const double>(raw), m);
}

inline Density uniform_density(int m = 1) {
  return make_density(std::vector<double>(static_cast<std::size_t>(m) * m, 1.0), m);
}

/// Distinct positive density values with their level-set areas and the
/// sqrt-mass / probability mass lying strictly below each level.
struct LevelDecomposition {
  std::vector<double> levels;       // z_1 < ... < z_S
  std::vector<double> areas;        // h(z_s) = |{f = z_s}|
  std::vector<double> below_mass;   // eta_s = int sqrt(f) 1{f < z_s}
  std::vector<double> below_prob;   // F^-(z_s) = int f 1{f < z_s}

  std::size_t size() const { return levels.size(); }

  double total_area() const { return std::accumulate(areas.begin(), areas.end(), 0.0); }

  /// int sqrt(f) over the whole support.
  double sqrt_mass() const {
    if (levels.empty()) return 0.0;
    return below_mass.back() + std::sqrt(levels.back()) * areas.back();
  }

  /// Probability mass strictly above level s, i.e. 1 - F(z_s) with F(y) = int f 1{f <= y}.
  double mass_above(std::size_t s) const {
    double mass = 0.0;
    for (std::size_t t = size(); t-- > s + 1;) mass += levels[t] * areas[t];
    return mass;
  }
};

inline LevelDecomposition level_decomposition(const Density& d) {
  std::vector<double> sorted;
  sorted.reserve(d.values().size());
  for (double v : d.values())
    if (v > 0.0) sorted.push_back(v);
  std::sort(sorted.begin(), sorted.end());

  const double cells = static_cast<double>(d.resolution()) * d.resolution();
  LevelDecomposition out;
  double eta = 0.0;
  double prob = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double z = sorted[i];
    const double h = static_cast<double>(j - i) / cells;
    out.levels.push_back(z);
    out.areas.push_back(h);
    out.below_mass.push_back(eta);
    out.below_prob.push_back(prob);
    eta += std::sqrt(z) * h;
    prob += z * h;
    i = j;
  }
  return out;
}

/// int g_alpha(f, x) dx in closed form.
///
/// Every level of a piecewise-constant density has positive area, so each one
/// contributes sqrt(z) [(eta + sqrt(z) h)^(alpha+1) - eta^(alpha+1)] / (alpha+1).
inline double g_alpha_integral(const LevelDecomposition& levels, double alpha) {
  if (!(alpha >= 1.0)) throw DomainError("alpha must be >= 1");
  double total = 0.0;
  for (std::size_t s = 0; s < levels.size(); ++s) {
    const double root = std::sqrt(levels.levels[s]);
    const double eta = levels.below_mass[s];
    const double upper = eta + root * levels.areas[s];
    total += root * (std::pow(upper, alpha + 1.0) - std::pow(eta, alpha + 1.0)) / (alpha + 1.0);
  }
  return total;
}

inline double g_alpha_integral(const Density& d, double alpha) {
  if (!(alpha >= 1.0)) throw DomainError("alpha must be >= 1");
  return g_alpha_integral(level_decomposition(d), alpha);
}

struct GfValue {
  double y0 = 0.0;
  double gf = 0.0;
};

/// Rate functional of the k = kappa * n regime.
///
/// y0 is the smallest level whose strictly-higher mass 1 - F(y0) is <= kappa;
/// gf = int sqrt(f) 1{f > y0} + (kappa - (1 - F(y0))) / sqrt(y0).
inline GfValue g_f_fraction(const LevelDecomposition& levels, double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0)) throw DomainError("kappa must lie in (0, 1]");
  if (levels.size() == 0) throw InvalidDensity("density has no positive level");
  for (std::size_t s = 0; s < levels.size(); ++s) {
    const double above = levels.mass_above(s);
    if (above <= kappa) {
      const double z = levels.levels[s];
      double sqrt_above = 0.0;
      for (std::size_t t = levels.size(); t-- > s + 1;) sqrt_above += std::sqrt(levels.levels[t]) * levels.areas[t];
      return GfValue{z, sqrt_above + (kappa - above) / std::sqrt(z)};
    }
  }
  // Unreachable: nothing lies above the top level.
  const double z = levels.levels.back();
  return GfValue{z, kappa / std::sqrt(z)};
}

inline GfValue g_f_fraction(const Density& d, double kappa) {
  return g_f_fraction(level_decomposition(d), kappa);
}

/// Splits every cell into beta x beta equal cells carrying the same value.
inline Density refine(const Density& d, int beta) {
  if (beta < 1) throw DomainError("refinement factor must be >= 1");
  const int m = d.resolution();
  const int fine = m * beta;
  std::vector<double> values(static_cast<std::size_t>(fine) * fine);
  for (int row = 0; row < fine; ++row)
    for (int col = 0; col < fine; ++col)
      values[static_cast<std::size_t>(row) * fine + col] = d.value(col / beta, row / beta);
  return Density(fine, std::move(values));
}

/// Cell-average (smoothed) density of an arbitrary nonnegative function.
///
/// Each cell value is the mean of `sampler` over an r x r midpoint lattice in
/// the cell (r = points_per_axis); the result is normalized by make_density.
inline Density cell_average_from_function(const std::function<double(double, double)>& sampler, int m,
                                          int points_per_axis) {
  if (m < 1) throw InvalidDensity("grid resolution must be >= 1");
  if (points_per_axis < 1) throw DomainError("need at least one quadrature point per axis");
  const double side = 1.0 / m;
  const double step = side / points_per_axis;
  std::vector<double> raw(static_cast<std::size_t>(m) * m);
  for (int row = 0; row < m; ++row) {
    for (int col = 0; col < m; ++col) {
      double sum = 0.0;
      for (int a = 0; a < points_per_axis; ++a) {
        for (int b = 0; b < points_per_axis; ++b) {
          const double x = col * side + (a + 0.5) * step;
          const double y = row * side + (b + 0.5) * step;
          const double v = sampler(x, y);
          if (!std::isfinite(v) || v < 0.0) throw InvalidFunction("sampler must be finite and nonnegative");
          sum += v;
        }
      }
      raw[static_cast<std::size_t>(row) * m + col] = sum / (static_cast<double>(points_per_axis) * points_per_axis);
    }
  }
  return make_density(raw, m);
}

}  // namespace ktrp
