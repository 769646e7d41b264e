#include <CLI11.hpp>

#include <iostream>

#include "ncinterp/cli.hpp"

int main(int argc, char** argv) {
  using namespace ncinterp;
  CLI::App app{"Non-commutative Caratheodory / Caratheodory-Fejer feasibility tools"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* check = app.add_subcommand("check", "search contractive nilpotent tuples for a violation");
  check->add_option("--problem", cfg.problem, "caratheodory or cf (must match the instance)")
      ->check(CLI::IsMember({"caratheodory", "cf"}));
  check->add_option("--instance", cfg.instance_path, "instance JSON")->required();
  check->add_option("--samples", cfg.budget.samples, "random samples")->capture_default_str();
  check->add_option("--max-dim", cfg.budget.max_dim, "largest sampled dimension (0 = size of the word set)")
      ->capture_default_str();
  check->add_option("--opt-iters", cfg.budget.opt_iters, "refinement iterations")->capture_default_str();
  check->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  check->add_option("--tol", cfg.tol, "violation tolerance")->capture_default_str();
  check->add_option("--test-lambda", cfg.test_lambda_path, "word set whose nilpotent tuples are searched");
  check->add_option("--extra-tuples", cfg.extra_tuples_path, "tuples added to the sample set");
  check->add_option("--out", cfg.out_path, "report path (stdout when omitted)");
  check->add_flag("-v,--verbose", cfg.verbose, "print timing");

  auto* classical = app.add_subcommand("classical", "one-variable Toeplitz / Schur criterion");
  classical->add_option("--data", cfg.data_path, "data JSON")->required();
  classical->add_option("--tol", cfg.tol, "tolerance")->capture_default_str();

  auto* gen = app.add_subcommand("gen", "generate a feasible instance from a random moment realization");
  gen->add_option("--n-vars", cfg.n_vars, "number of variables")->required();
  gen->add_option("--lambda", cfg.lambda_path, "word set JSON")->required();
  gen->add_option("--dim-h", cfg.dim_h, "state dimension (0 = max(n_vars, dim_y) + 2)")->capture_default_str();
  gen->add_option("--dim-y", cfg.dim_y, "coefficient dimension")->capture_default_str();
  gen->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  gen->add_option("--out", cfg.out_path, "instance path")->required();

  std::string scenario;
  auto* repro = app.add_subcommand("repro", "scripted reproduction scenarios");
  repro->add_option("name", scenario, "example-4-9 | example-4-10 | classical-equivalence")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  if (*check) return cmd_check(cfg, std::cout, std::cerr);
  if (*classical) return cmd_classical(cfg, std::cout, std::cerr);
  if (*gen) return cmd_gen(cfg, std::cout, std::cerr);
  return cmd_repro(scenario, std::cout, std::cerr);
}
