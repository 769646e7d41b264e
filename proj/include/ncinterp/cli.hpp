#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ncinterp/criteria.hpp"

namespace ncinterp {

/// Exit codes of the command-line tool.
inline constexpr int kExitNoViolation = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitInvalidInput = 2;

struct RunConfig {
  std::string problem;  // "caratheodory" or "cf"; empty = take it from the instance
  std::string instance_path;
  std::string test_lambda_path;
  std::string extra_tuples_path;
  std::string data_path;
  std::string lambda_path;
  std::string out_path;
  Budget budget;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int n_vars = 1;
  int dim_h = 0;
  int dim_y = 1;
  bool verbose = false;
};

/// Runs the feasibility search on an instance file. Writes the report JSON to
/// out_path (stdout when empty). Returns 0 / 1 / 2 as documented above.
int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// One-variable Toeplitz / Schur test of a data file.
int cmd_classical(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Writes a generated feasible instance to out_path and its realization to
/// the sibling file with extension .cert.json.
int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Scripted scenarios: example-4-9, example-4-10, classical-equivalence.
/// Prints one line per step and a final PASS / FAIL; returns 0 on PASS.
int cmd_repro(const std::string& name, std::ostream& out, std::ostream& err);

/// Path of the certificate written next to an instance file.
std::string certificate_path(const std::string& instance_path);

}  // namespace ncinterp
