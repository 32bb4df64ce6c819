#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <json.hpp>

#include "ktrp/density.hpp"
#include "ktrp/errors.hpp"
#include "ktrp/io.hpp"
#include "ktrp/objectives.hpp"
#include "ktrp/sampling.hpp"
#include "ktrp/schemes.hpp"
#include "ktrp/solvers.hpp"

namespace ktrp {

enum class Problem { ktsp, psitrp, oracle_compare };
enum class SolverChoice { scheme, exact };
enum class KtspVariant { densest_cell, sweep_truncated };

// Largest n at which the rate harnesses swap in the exact oracles.
inline constexpr std::size_t kRateExactKtspMaxN = 10;
inline constexpr std::size_t kRateExactPsiMaxN = 9;

struct Checks {
  std::optional<std::pair<double, double>> slope_range;
  bool bracket_floor = false;
  std::optional<double> max_relative_variation;
  bool oracle_dominance = false;
  bool ratios_at_least_one = false;

  bool any() const {
    return slope_range || bracket_floor || max_relative_variation || oracle_dominance || ratios_at_least_one;
  }
};

struct ExperimentConfig {
  Problem problem = Problem::ktsp;
  Density density = uniform_density();
  std::vector<std::size_t> n_values;
  std::optional<std::size_t> k;   // fixed k
  std::optional<double> rho;      // k = ceil(rho n)
  double alpha = 1.0;
  std::size_t trials = 1;
  std::uint64_t base_seed = 0;
  SolverChoice solver = SolverChoice::scheme;
  double a = 1.0;                 // densest-cell partition scale
  int m = 1;                      // sweep grid
  bool order_by_density = false;  // sweep ranks cells by the known density instead of counts
  KtspVariant ktsp_variant = KtspVariant::densest_cell;
  Problem compare = Problem::ktsp;  // problem scored by oracle_compare
  Checks checks;

  std::size_t k_for(std::size_t n) const {
    if (k) return *k;
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(*rho * static_cast<double>(n) - 1e-9)));
  }

  OrderSource order_source() const { return order_by_density ? OrderSource::known(density) : OrderSource::empirical(); }
};

/// Per-trial seed: base_seed XOR a bijective hash of (n, trial).
inline std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t n, std::size_t trial) {
  return base_seed ^ mix64((static_cast<std::uint64_t>(n) << 32) ^ static_cast<std::uint64_t>(trial));
}

struct TrialRow {
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double objective = 0.0;
  std::string solver;
};

struct NSummary {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  // k-TSP: mean (f_max n)^{(1+1/(k-1))/2} / (k-1) * A^{1/(2(k-1))}; psi-TRP: mean / n^{1+alpha/2}.
  double normalized = 0.0;
  std::optional<double> gf_ratio;  // mean / (sqrt(n) g_f(k/n)) when k grows with n
  std::size_t dominance_violations = 0;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double half_width = std::numeric_limits<double>::quiet_NaN();  // 95% confidence
  std::size_t points = 0;
  bool flagged = false;  // fewer than 3 points
};

struct RatioSummary {
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRow> rows;
  std::vector<NSummary> per_n;
  std::optional<SlopeFit> slope;
  double predicted_exponent = 0.0;
  std::optional<double> g_alpha_integral;
  std::optional<double> c_tilde_alpha;
  std::optional<double> bracket_floor;
  std::optional<double> relative_variation;
  std::optional<RatioSummary> ratios;
  std::vector<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

/// Tightened lower-bound constant 1 / ((pi e)^{alpha/2} (alpha + 1)).
inline double c_tilde_alpha(double alpha) {
  return 1.0 / (std::pow(std::numbers::pi * std::numbers::e, alpha / 2.0) * (alpha + 1.0));
}

/// Ordinary least squares of log(mean) on log(n).
inline SlopeFit fit_log_log(const std::vector<double>& ns, const std::vector<double>& means) {
  SlopeFit fit;
  fit.points = ns.size();
  fit.flagged = ns.size() < 3;
  if (ns.size() < 2) return fit;
  const auto count = static_cast<double>(ns.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    sx += std::log(ns[i]);
    sy += std::log(means[i]);
  }
  const double mx = sx / count;
  const double my = sy / count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double dx = std::log(ns[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(means[i]) - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (ns.size() >= 3) {
    double rss = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double r = std::log(means[i]) - (fit.intercept + fit.slope * std::log(ns[i]));
      rss += r * r;
    }
    const double dof = count - 2.0;
    const double se = std::sqrt(rss / dof / sxx);
    const boost::math::students_t dist(dof);
    fit.half_width = boost::math::quantile(boost::math::complement(dist, 0.025)) * se;
  }
  return fit;
}

namespace detail {

inline void validate_common(const ExperimentConfig& cfg) {
  if (cfg.n_values.empty()) throw ConfigError("n_values must not be empty");
  for (std::size_t i = 1; i < cfg.n_values.size(); ++i)
    if (cfg.n_values[i] <= cfg.n_values[i - 1]) throw ConfigError("n_values must be strictly increasing");
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  if (!(cfg.alpha >= 1.0)) throw ConfigError("alpha must be >= 1");
  if (!(cfg.a > 0.0)) throw ConfigError("scheme.a must be > 0");
  if (cfg.m < 1) throw ConfigError("scheme.m must be >= 1");
  if (cfg.order_by_density && cfg.density.resolution() != cfg.m)
    throw ConfigError("order_source=density needs scheme.m equal to the density resolution");
}

inline void validate_rate(const ExperimentConfig& cfg) {
  validate_common(cfg);
  if (cfg.n_values.size() < 3) throw ConfigError("slope fitting needs at least 3 n_values");
}

inline void validate_k(const ExperimentConfig& cfg) {
  if (cfg.k.has_value() == cfg.rho.has_value()) throw ConfigError("exactly one of k and rho must be set");
  if (cfg.rho && !(*cfg.rho > 0.0 && *cfg.rho <= 1.0)) throw ConfigError("rho must lie in (0, 1]");
  for (auto n : cfg.n_values) {
    const std::size_t k = cfg.k_for(n);
    if (k < 2 || k > n) throw ConfigError("need 2 <= k <= n for every n (n=" + std::to_string(n) + ")");
  }
}

inline NSummary summarize(std::size_t n, const std::vector<double>& values) {
  NSummary s;
  s.n = n;
  s.trials = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double var = ss / static_cast<double>(values.size() - 1);
    s.std_error = std::sqrt(var / static_cast<double>(values.size()));
  }
  return s;
}

inline void attach_slope(ExperimentReport& report) {
  std::vector<double> ns, means;
  for (const auto& s : report.per_n) {
    ns.push_back(static_cast<double>(s.n));
    means.push_back(s.mean);
  }
  report.slope = fit_log_log(ns, means);
}

inline double ktsp_scheme_objective(const ExperimentConfig& cfg, const SampleSet& s, std::size_t k) {
  const Tour t = cfg.ktsp_variant == KtspVariant::densest_cell ? ktsp_densest_cell(s, k, cfg.a)
                                                               : sweep_truncated_ktsp(s, k, cfg.m, cfg.order_source());
  return path_length(s, t);
}

inline std::string ktsp_scheme_name(const ExperimentConfig& cfg) {
  return cfg.ktsp_variant == KtspVariant::densest_cell ? "ktsp_densest_cell" : "sweep_truncated_ktsp";
}

inline std::string format_value(double v) { return io::format_double(v); }

}  // namespace detail

/// Monte Carlo k-TSP rate experiment: mean path length per n, its normalized
/// form and the log-log slope (predicted -(1 + 1/(k-1))/2 for fixed k).
inline ExperimentReport run_ktsp_rate(const ExperimentConfig& cfg) {
  detail::validate_rate(cfg);
  detail::validate_k(cfg);
  ExperimentReport report;
  report.config = cfg;
  const double f_max = cfg.density.max_value();
  const double area = cfg.density.support_area();
  const LevelDecomposition levels = level_decomposition(cfg.density);

  for (auto n : cfg.n_values) {
    const std::size_t k = cfg.k_for(n);
    const bool exact = cfg.solver == SolverChoice::exact && n <= kRateExactKtspMaxN;
    std::vector<double> values;
    std::size_t violations = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t seed = trial_seed(cfg.base_seed, n, trial);
      const SampleSet s = sample_points(cfg.density, n, seed);
      const double scheme = detail::ktsp_scheme_objective(cfg, s, k);
      report.rows.push_back({n, trial, seed, scheme, detail::ktsp_scheme_name(cfg)});
      if (exact) {
        const double best = path_length(s, exact_k_tsp(s, k));
        report.rows.push_back({n, trial, seed, best, "exact_k_tsp"});
        if (best > scheme) ++violations;
        values.push_back(best);
      } else {
        values.push_back(scheme);
      }
    }
    NSummary summary = detail::summarize(n, values);
    summary.k = k;
    summary.dominance_violations = violations;
    const double km1 = static_cast<double>(k - 1);
    const double e = 0.5 * (1.0 + 1.0 / km1);
    summary.normalized = summary.mean * std::pow(f_max * static_cast<double>(n), e) / km1 *
                         std::pow(area, 1.0 / (2.0 * km1));
    if (cfg.rho) {
      const double kappa = static_cast<double>(k) / static_cast<double>(n);
      summary.gf_ratio = summary.mean / (std::sqrt(static_cast<double>(n)) * g_f_fraction(levels, kappa).gf);
    }
    report.per_n.push_back(summary);
  }
  detail::attach_slope(report);
  report.predicted_exponent = cfg.k ? -0.5 * (1.0 + 1.0 / static_cast<double>(*cfg.k - 1)) : 0.5;

  const Checks& checks = cfg.checks;
  if (checks.slope_range) {
    const auto [lo, hi] = *checks.slope_range;
    const double slope = report.slope->slope;
    report.checks.push_back({"slope_range", slope >= lo && slope <= hi,
                             "slope " + detail::format_value(slope) + " in [" + detail::format_value(lo) + ", " +
                                 detail::format_value(hi) + "]"});
  }
  if (checks.oracle_dominance) {
    std::size_t total = 0;
    for (const auto& s : report.per_n) total += s.dominance_violations;
    report.checks.push_back({"oracle_dominance", total == 0, std::to_string(total) + " trials with exact > scheme"});
  }
  return report;
}

/// Monte Carlo psi-TRP experiment: ratio_n = mean objective / n^{1+alpha/2}
/// against the computable floor c~_alpha * int g_alpha.
inline ExperimentReport run_psitrp_rate(const ExperimentConfig& cfg) {
  detail::validate_rate(cfg);
  ExperimentReport report;
  report.config = cfg;
  const double integral = g_alpha_integral(cfg.density, cfg.alpha);
  report.g_alpha_integral = integral;
  report.c_tilde_alpha = c_tilde_alpha(cfg.alpha);
  report.bracket_floor = *report.c_tilde_alpha * integral;
  report.predicted_exponent = 1.0 + cfg.alpha / 2.0;
  const OrderSource source = cfg.order_source();

  for (auto n : cfg.n_values) {
    const bool exact = cfg.solver == SolverChoice::exact && n <= kRateExactPsiMaxN;
    std::vector<double> values;
    std::size_t violations = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t seed = trial_seed(cfg.base_seed, n, trial);
      const SampleSet s = sample_points(cfg.density, n, seed);
      const double scheme = psi_objective(s, psitrp_sweep(s, cfg.m, source), cfg.alpha);
      report.rows.push_back({n, trial, seed, scheme, "psitrp_sweep"});
      if (exact) {
        const double best = psi_objective(s, exact_psi_trp(s, cfg.alpha), cfg.alpha);
        report.rows.push_back({n, trial, seed, best, "exact_psi_trp"});
        if (best > scheme) ++violations;
        values.push_back(best);
      } else {
        values.push_back(scheme);
      }
    }
    NSummary summary = detail::summarize(n, values);
    summary.dominance_violations = violations;
    summary.normalized = summary.mean / std::pow(static_cast<double>(n), report.predicted_exponent);
    report.per_n.push_back(summary);
  }
  detail::attach_slope(report);

  // (max - min) / min of ratio_n over the three largest n.
  const std::size_t top = std::min<std::size_t>(3, report.per_n.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = report.per_n.size() - top; i < report.per_n.size(); ++i) {
    lo = std::min(lo, report.per_n[i].normalized);
    hi = std::max(hi, report.per_n[i].normalized);
  }
  report.relative_variation = (hi - lo) / lo;

  const Checks& checks = cfg.checks;
  if (checks.bracket_floor) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& s : report.per_n) worst = std::min(worst, s.normalized);
    report.checks.push_back({"bracket_floor", worst >= *report.bracket_floor,
                             "min ratio_n " + detail::format_value(worst) + " >= floor " +
                                 detail::format_value(*report.bracket_floor)});
  }
  if (checks.max_relative_variation) {
    report.checks.push_back({"relative_variation", *report.relative_variation < *checks.max_relative_variation,
                             "relative variation " + detail::format_value(*report.relative_variation) + " < " +
                                 detail::format_value(*checks.max_relative_variation)});
  }
  if (checks.oracle_dominance) {
    std::size_t total = 0;
    for (const auto& s : report.per_n) total += s.dominance_violations;
    report.checks.push_back({"oracle_dominance", total == 0, std::to_string(total) + " trials with exact > scheme"});
  }
  return report;
}

/// Per-trial scheme / exact ratios on instances small enough for the oracles.
inline ExperimentReport run_oracle_comparison(const ExperimentConfig& cfg) {
  detail::validate_common(cfg);
  if (cfg.compare == Problem::oracle_compare) throw ConfigError("compare must be ktsp or psitrp");
  const std::size_t budget = std::min(kExactPathBudget, kExactPsiBudget);
  if (cfg.n_values.back() > budget)
    throw BudgetExceeded("oracle comparison supports n <= " + std::to_string(budget));
  if (cfg.compare == Problem::ktsp) detail::validate_k(cfg);

  ExperimentReport report;
  report.config = cfg;
  std::vector<double> ratios;
  const OrderSource source = cfg.order_source();
  for (auto n : cfg.n_values) {
    std::vector<double> scheme_values;
    std::size_t violations = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t seed = trial_seed(cfg.base_seed, n, trial);
      const SampleSet s = sample_points(cfg.density, n, seed);
      double scheme = 0.0;
      double best = 0.0;
      if (cfg.compare == Problem::ktsp) {
        const std::size_t k = cfg.k_for(n);
        scheme = detail::ktsp_scheme_objective(cfg, s, k);
        best = path_length(s, exact_k_tsp(s, k));
        report.rows.push_back({n, trial, seed, scheme, detail::ktsp_scheme_name(cfg)});
        report.rows.push_back({n, trial, seed, best, "exact_k_tsp"});
      } else {
        scheme = psi_objective(s, psitrp_sweep(s, cfg.m, source), cfg.alpha);
        best = psi_objective(s, exact_psi_trp(s, cfg.alpha), cfg.alpha);
        report.rows.push_back({n, trial, seed, scheme, "psitrp_sweep"});
        report.rows.push_back({n, trial, seed, best, "exact_psi_trp"});
      }
      if (best > scheme) ++violations;
      ratios.push_back(best > 0.0 ? scheme / best : (scheme > 0.0 ? std::numeric_limits<double>::infinity() : 1.0));
      scheme_values.push_back(scheme);
    }
    NSummary summary = detail::summarize(n, scheme_values);
    if (cfg.compare == Problem::ktsp) summary.k = cfg.k_for(n);
    summary.dominance_violations = violations;
    report.per_n.push_back(summary);
  }
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t c = sorted.size();
  const double median = c % 2 ? sorted[c / 2] : 0.5 * (sorted[c / 2 - 1] + sorted[c / 2]);
  report.ratios = RatioSummary{sorted.front(), median, sorted.back(), c};
  if (cfg.checks.ratios_at_least_one || cfg.checks.oracle_dominance) {
    report.checks.push_back({"ratios_at_least_one", sorted.front() >= 1.0,
                             "min ratio " + detail::format_value(sorted.front())});
  }
  return report;
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.problem) {
    case Problem::ktsp:
      return run_ktsp_rate(cfg);
    case Problem::psitrp:
      return run_psitrp_rate(cfg);
    case Problem::oracle_compare:
      return run_oracle_comparison(cfg);
  }
  throw ConfigError("unknown problem");
}

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

inline std::string problem_name(Problem p) {
  switch (p) {
    case Problem::ktsp:
      return "ktsp";
    case Problem::psitrp:
      return "psitrp";
    case Problem::oracle_compare:
      return "oracle_compare";
  }
  return "?";
}

inline Problem parse_problem(const std::string& s) {
  if (s == "ktsp") return Problem::ktsp;
  if (s == "psitrp") return Problem::psitrp;
  if (s == "oracle_compare") return Problem::oracle_compare;
  throw ConfigError("unknown problem '" + s + "'");
}

}  // namespace detail

inline io::json config_to_json(const ExperimentConfig& cfg) {
  io::json j{{"schema", io::kSchemaVersion},
             {"problem", detail::problem_name(cfg.problem)},
             {"density", io::density_to_json(cfg.density)},
             {"n_values", cfg.n_values},
             {"alpha", cfg.alpha},
             {"trials", cfg.trials},
             {"base_seed", cfg.base_seed},
             {"solver", cfg.solver == SolverChoice::exact ? "exact" : "scheme"},
             {"scheme",
              {{"a", cfg.a},
               {"m", cfg.m},
               {"order_source", cfg.order_by_density ? "density" : "empirical"},
               {"ktsp_variant", cfg.ktsp_variant == KtspVariant::densest_cell ? "densest_cell" : "sweep_truncated"}}}};
  if (cfg.k) j["k"] = *cfg.k;
  if (cfg.rho) j["rho"] = *cfg.rho;
  if (cfg.problem == Problem::oracle_compare) j["compare"] = detail::problem_name(cfg.compare);
  io::json checks = io::json::object();
  if (cfg.checks.slope_range) checks["slope_range"] = {cfg.checks.slope_range->first, cfg.checks.slope_range->second};
  if (cfg.checks.bracket_floor) checks["bracket_floor"] = true;
  if (cfg.checks.max_relative_variation) checks["max_relative_variation"] = *cfg.checks.max_relative_variation;
  if (cfg.checks.oracle_dominance) checks["oracle_dominance"] = true;
  if (cfg.checks.ratios_at_least_one) checks["ratios_at_least_one"] = true;
  j["checks"] = checks;
  return j;
}

/// Parses an experiment config document. The density is given inline as
/// {"m": ..., "values": [...]}; missing optional fields take their defaults.
inline ExperimentConfig config_from_json(const io::json& j) {
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (j.contains("schema") && j.at("schema").get<int>() != io::kSchemaVersion)
      throw ConfigError("unsupported config schema");
    ExperimentConfig cfg;
    cfg.problem = detail::parse_problem(j.at("problem").get<std::string>());
    if (j.contains("density")) cfg.density = io::density_from_json(j.at("density"));
    cfg.n_values = j.at("n_values").get<std::vector<std::size_t>>();
    if (j.contains("k")) cfg.k = j.at("k").get<std::size_t>();
    if (j.contains("rho")) cfg.rho = j.at("rho").get<double>();
    cfg.alpha = j.value("alpha", 1.0);
    cfg.trials = j.value("trials", std::size_t{1});
    cfg.base_seed = j.value("base_seed", std::uint64_t{0});
    const std::string solver = j.value("solver", std::string("scheme"));
    if (solver == "exact")
      cfg.solver = SolverChoice::exact;
    else if (solver != "scheme")
      throw ConfigError("solver must be scheme or exact");
    if (j.contains("scheme")) {
      const auto& s = j.at("scheme");
      cfg.a = s.value("a", 1.0);
      cfg.m = s.value("m", 1);
      const std::string order = s.value("order_source", std::string("empirical"));
      if (order != "empirical" && order != "density") throw ConfigError("order_source must be empirical or density");
      cfg.order_by_density = order == "density";
      const std::string variant = s.value("ktsp_variant", std::string("densest_cell"));
      if (variant == "sweep_truncated")
        cfg.ktsp_variant = KtspVariant::sweep_truncated;
      else if (variant != "densest_cell")
        throw ConfigError("ktsp_variant must be densest_cell or sweep_truncated");
    }
    if (cfg.problem == Problem::oracle_compare)
      cfg.compare = detail::parse_problem(j.value("compare", std::string("ktsp")));
    if (j.contains("checks")) {
      const auto& c = j.at("checks");
      if (c.value("enabled", true)) {
        if (c.contains("slope_range")) {
          const auto r = c.at("slope_range").get<std::vector<double>>();
          if (r.size() != 2 || r[0] > r[1]) throw ConfigError("slope_range must be [lo, hi]");
          cfg.checks.slope_range = std::make_pair(r[0], r[1]);
        }
        cfg.checks.bracket_floor = c.value("bracket_floor", false);
        if (c.contains("max_relative_variation"))
          cfg.checks.max_relative_variation = c.at("max_relative_variation").get<double>();
        cfg.checks.oracle_dominance = c.value("oracle_dominance", false);
        cfg.checks.ratios_at_least_one = c.value("ratios_at_least_one", false);
      }
    }
    return cfg;
  } catch (const io::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const InvalidDensity& e) {
    throw ConfigError(std::string("config density: ") + e.what());
  }
}

/// One row per (n, trial, solver): n,trial,seed,objective,solver.
inline std::string report_to_csv(const ExperimentReport& r) {
  std::string out = "n,trial,seed,objective,solver\n";
  for (const auto& row : r.rows)
    out += std::to_string(row.n) + "," + std::to_string(row.trial) + "," + std::to_string(row.seed) + "," +
           io::format_double(row.objective) + "," + row.solver + "\n";
  return out;
}

inline io::json report_to_json(const ExperimentReport& r) {
  io::json per_n = io::json::array();
  for (const auto& s : r.per_n) {
    io::json e{{"n", s.n},
               {"trials", s.trials},
               {"mean", s.mean},
               {"std_error", s.std_error},
               {"normalized", s.normalized},
               {"dominance_violations", s.dominance_violations}};
    if (s.k) e["k"] = s.k;
    if (s.gf_ratio) e["gf_ratio"] = *s.gf_ratio;
    per_n.push_back(e);
  }
  io::json j{{"schema", io::kSchemaVersion},
             {"config", config_to_json(r.config)},
             {"per_n", per_n},
             {"predicted_exponent", r.predicted_exponent}};
  if (r.slope) {
    j["slope"] = {{"slope", r.slope->slope},
                  {"intercept", r.slope->intercept},
                  {"half_width", r.slope->half_width},
                  {"points", r.slope->points},
                  {"flagged", r.slope->flagged}};
  }
  if (r.g_alpha_integral) j["g_alpha_integral"] = *r.g_alpha_integral;
  if (r.c_tilde_alpha) j["c_tilde_alpha"] = *r.c_tilde_alpha;
  if (r.bracket_floor) j["bracket_floor"] = *r.bracket_floor;
  if (r.relative_variation) j["relative_variation"] = *r.relative_variation;
  if (r.ratios)
    j["ratios"] = {{"min", r.ratios->min}, {"median", r.ratios->median}, {"max", r.ratios->max}, {"count", r.ratios->count}};
  io::json checks = io::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = checks;
  j["passed"] = r.passed();
  return j;
}

}  // namespace ktrp
