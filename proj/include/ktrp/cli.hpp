#pragma once

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "ktrp/density.hpp"
#include "ktrp/errors.hpp"
#include "ktrp/experiments.hpp"
#include "ktrp/io.hpp"
#include "ktrp/objectives.hpp"
#include "ktrp/sampling.hpp"
#include "ktrp/schemes.hpp"
#include "ktrp/solvers.hpp"

// Command implementations behind the `ktrp` executable. Each returns the
// process exit code so the commands can be driven in-process by tests.
namespace ktrp::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kBudgetExceeded = 3,
  kInfeasible = 4,
  kCheckFailed = 5,
};

/// Runs `body`, translating library errors into the exit-code contract.
inline int guarded(const std::function<int()>& body, std::ostream& err = std::cerr) {
  try {
    return body();
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const Infeasible& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

inline void ensure_dir(const std::string& dir) { std::filesystem::create_directories(dir); }

inline std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

struct GenArgs {
  std::string density_file;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out_dir;
};

/// Writes <out>/points.csv and <out>/manifest.json.
inline int cmd_gen(const GenArgs& args, std::ostream& err = std::cerr) {
  return guarded(
      [&] {
        const Density d = io::load_density(args.density_file);
        const SampleSet s = sample_points(d, args.n, args.seed);
        ensure_dir(args.out_dir);
        io::write_file(join(args.out_dir, "points.csv"), io::points_to_csv(s));
        io::write_file(join(args.out_dir, "manifest.json"), io::manifest_json(s, d).dump(2) + "\n");
        return kOk;
      },
      err);
}

struct SolveArgs {
  std::string points_file;
  std::string problem;  // tsp | ktsp | psitrp
  std::string mode;     // exact | scheme
  std::optional<std::size_t> k;
  double alpha = 1.0;
  int m = 1;
  double a = 1.0;
  std::optional<std::string> density_file;  // sweep ranks cells by this density
  bool prescale = false;
  std::string out_dir;
};

struct Prescaling {
  double x0 = 0.0;
  double y0 = 0.0;
  double scale = 1.0;
};

/// Uniform affine map of the bounding box onto a corner of [0,1]^2 (aspect kept).
inline Prescaling fit_unit_square(const std::vector<Point>& pts) {
  Prescaling p;
  if (pts.empty()) return p;
  double x1 = pts[0].x, y1 = pts[0].y;
  p.x0 = pts[0].x;
  p.y0 = pts[0].y;
  for (const auto& q : pts) {
    p.x0 = std::min(p.x0, q.x);
    p.y0 = std::min(p.y0, q.y);
    x1 = std::max(x1, q.x);
    y1 = std::max(y1, q.y);
  }
  const double side = std::max(x1 - p.x0, y1 - p.y0);
  p.scale = side > 0.0 ? side : 1.0;
  return p;
}

/// Writes <out>/tour.json with the order and its objective values.
inline int cmd_solve(const SolveArgs& args, std::ostream& err = std::cerr) {
  return guarded(
      [&] {
        SampleSet original;
        original.points = io::points_from_csv(io::read_file(args.points_file));
        if (original.points.empty()) throw io::ParseError("points file has no points");

        SampleSet working = original;
        std::optional<Prescaling> prescaling;
        if (args.prescale) {
          prescaling = fit_unit_square(original.points);
          for (auto& p : working.points) {
            p.x = std::clamp((p.x - prescaling->x0) / prescaling->scale, 0.0, 1.0);
            p.y = std::clamp((p.y - prescaling->y0) / prescaling->scale, 0.0, 1.0);
          }
        } else if (args.mode == "scheme") {
          for (const auto& p : working.points)
            if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0)
              throw ConfigError("points must lie in [0,1]^2 for grid schemes; pass --prescale");
        }
        if (args.mode != "exact" && args.mode != "scheme") throw ConfigError("mode must be exact or scheme");
        if (!(args.alpha >= 1.0)) throw DomainError("alpha must be >= 1");

        std::optional<Density> density;
        if (args.density_file) density = io::load_density(*args.density_file);
        const OrderSource source = density ? OrderSource::known(*density) : OrderSource::empirical();
        const bool exact = args.mode == "exact";

        Tour tour;
        if (args.problem == "tsp") {
          if (exact) {
            tour = exact_tsp_path(working);
          } else {
            std::vector<std::size_t> all(working.size());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
            tour = heuristic_tsp_path(working, all);
          }
        } else if (args.problem == "ktsp") {
          if (!args.k) throw ConfigError("ktsp needs --k");
          tour = exact ? exact_k_tsp(working, *args.k) : ktsp_densest_cell(working, *args.k, args.a);
        } else if (args.problem == "psitrp") {
          tour = exact ? exact_psi_trp(working, args.alpha) : psitrp_sweep(working, args.m, source);
        } else {
          throw ConfigError("problem must be tsp, ktsp or psitrp");
        }

        io::json objectives{{"path_length", path_length(original, tour)}};
        if (tour.size() == original.size()) {
          objectives["latency"] = total_latency(original, tour);
          objectives["psi"] = psi_objective(original, tour, args.alpha);
        }
        io::json out{{"schema", io::kSchemaVersion},
                     {"problem", args.problem},
                     {"mode", args.mode},
                     {"n", original.size()},
                     {"alpha", args.alpha},
                     {"order", io::tour_to_json(tour)},
                     {"objectives", objectives}};
        if (args.k) out["k"] = *args.k;
        if (prescaling)
          out["prescaling"] = {{"x0", prescaling->x0}, {"y0", prescaling->y0}, {"scale", prescaling->scale}};
        ensure_dir(args.out_dir);
        io::write_file(join(args.out_dir, "tour.json"), out.dump(2) + "\n");
        return kOk;
      },
      err);
}

struct RateArgs {
  std::string config_file;
  std::string out_dir;
};

/// Writes <out>/trials.csv and <out>/summary.json; exit 5 when a configured
/// check fails.
inline int cmd_rate(const RateArgs& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return guarded(
      [&] {
        const ExperimentConfig cfg = config_from_json(io::parse_json(io::read_file(args.config_file), args.config_file));
        const ExperimentReport report = run_experiment(cfg);
        ensure_dir(args.out_dir);
        io::write_file(join(args.out_dir, "trials.csv"), report_to_csv(report));
        io::write_file(join(args.out_dir, "summary.json"), report_to_json(report).dump(2) + "\n");
        for (const auto& c : report.checks) out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
        return report.passed() ? kOk : kCheckFailed;
      },
      err);
}

}  // namespace ktrp::cli
