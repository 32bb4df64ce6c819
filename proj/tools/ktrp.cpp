#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ktrp/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"k-TSP / psi-TRP rate toolkit"};
  app.require_subcommand(1);

  ktrp::cli::GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Sample points from a grid density");
  gen_cmd->add_option("--density", gen.density_file, "Density JSON {\"m\":..,\"values\":[..]}")->required();
  gen_cmd->add_option("--n", gen.n, "Number of points")->required();
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed")->required();
  gen_cmd->add_option("--out", gen.out_dir, "Output directory")->required();

  ktrp::cli::SolveArgs solve;
  std::size_t k = 0;
  std::string density_file;
  auto* solve_cmd = app.add_subcommand("solve", "Route a point set");
  solve_cmd->add_option("--points", solve.points_file, "Points CSV with header x,y")->required();
  solve_cmd->add_option("--problem", solve.problem, "tsp | ktsp | psitrp")->required();
  solve_cmd->add_option("--mode", solve.mode, "exact | scheme")->required();
  auto* k_opt = solve_cmd->add_option("--k", k, "Points to visit (ktsp)");
  solve_cmd->add_option("--alpha", solve.alpha, "Latency exponent (>= 1)");
  solve_cmd->add_option("--m", solve.m, "Sweep grid resolution (psitrp scheme)");
  solve_cmd->add_option("--a", solve.a, "Partition scale (ktsp scheme)");
  auto* density_opt = solve_cmd->add_option("--density", density_file, "Rank sweep cells by this density");
  solve_cmd->add_flag("--prescale", solve.prescale, "Map the points' bounding box into [0,1]^2");
  solve_cmd->add_option("--out", solve.out_dir, "Output directory")->required();

  ktrp::cli::RateArgs rate;
  auto* rate_cmd = app.add_subcommand("rate", "Run a Monte Carlo rate experiment");
  rate_cmd->add_option("--config", rate.config_file, "Experiment config JSON")->required();
  rate_cmd->add_option("--out", rate.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ktrp::cli::kInputError;
  }

  if (*gen_cmd) return ktrp::cli::cmd_gen(gen);
  if (*solve_cmd) {
    if (*k_opt) solve.k = k;
    if (*density_opt) solve.density_file = density_file;
    return ktrp::cli::cmd_solve(solve);
  }
  return ktrp::cli::cmd_rate(rate);
}
