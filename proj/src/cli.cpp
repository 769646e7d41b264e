#include "ncinterp/cli.hpp"

#include <iostream>

#include "ncinterp/errors.hpp"
#include "ncinterp/io.hpp"
#include "ncinterp/realization.hpp"
#include "ncinterp/repro.hpp"

namespace ncinterp {

namespace {

std::string problem_name(const Instance& inst) {
  return std::holds_alternative<CaratheodoryInstance>(inst) ? "caratheodory" : "cf";
}

// Word set file: {"n_vars": N, "words": [...]} or a bare array of words.
AdmissibleSet read_test_lambda(const std::string& path, int n_vars) {
  const Json j = read_json_file(path);
  if (j.is_array()) return word_set_from_json(Json{{"n_vars", n_vars}, {"words", j}});
  return word_set_from_json(j);
}

// A single tuple, an array of tuples, or {"tuples": [...]}.
std::vector<MatrixTuple> read_tuples(const std::string& path) {
  const Json j = read_json_file(path);
  const Json& list = j.is_object() && j.contains("tuples") ? j.at("tuples") : j;
  std::vector<MatrixTuple> out;
  if (list.is_array()) {
    for (const Json& t : list) out.push_back(tuple_from_json(t));
  } else {
    out.push_back(tuple_from_json(list));
  }
  return out;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
  }
  return kExitInvalidInput;
}

}  // namespace

std::string certificate_path(const std::string& instance_path) {
  const std::string ext = ".json";
  if (instance_path.size() > ext.size() &&
      instance_path.compare(instance_path.size() - ext.size(), ext.size(), ext) == 0) {
    return instance_path.substr(0, instance_path.size() - ext.size()) + ".cert.json";
  }
  return instance_path + ".cert.json";
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.instance_path.empty()) throw InvalidInput("--instance is required");
    if (cfg.budget.samples < 1) throw InvalidInput("--samples must be at least 1");
    if (!(cfg.tol > 0.0)) throw InvalidInput("--tol must be positive");
    const Instance inst = instance_from_json(read_json_file(cfg.instance_path));
    const std::string problem = problem_name(inst);
    if (!cfg.problem.empty() && cfg.problem != problem) {
      throw InvalidInput("--problem " + cfg.problem + " does not match the instance (" + problem + ")");
    }
    const int n_vars = std::visit([](const auto& i) { return i.n_vars(); }, inst);

    CheckOptions opts;
    opts.budget = cfg.budget;
    opts.seed = cfg.seed;
    opts.tol = cfg.tol;
    if (!cfg.test_lambda_path.empty()) opts.test_lambda = read_test_lambda(cfg.test_lambda_path, n_vars);
    if (!cfg.extra_tuples_path.empty()) opts.extra_tuples = read_tuples(cfg.extra_tuples_path);

    const FeasibilityReport rep = std::holds_alternative<CaratheodoryInstance>(inst)
                                      ? nc_caratheodory_check(std::get<CaratheodoryInstance>(inst), opts)
                                      : nc_cf_check(std::get<CFInstance>(inst), opts);
    const Json j = report_to_json(rep, problem);
    if (cfg.out_path.empty()) {
      out << j.dump(2) << '\n';
    } else {
      write_json_file(cfg.out_path, j);
      out << to_string(rep.verdict) << " violation=" << rep.violation << " trials=" << rep.trials << '\n';
    }
    if (cfg.verbose) err << "elapsed " << rep.elapsed_seconds << " s\n";
    return rep.verdict == Verdict::InfeasibleWithWitness ? kExitInfeasible : kExitNoViolation;
  });
}

int cmd_classical(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.data_path.empty()) throw InvalidInput("--data is required");
    const Json j = read_json_file(cfg.data_path);
    std::string problem;
    std::vector<Matrix> seq;
    if (j.is_object() && j.contains("lambda")) {
      const Instance inst = instance_from_json(j);
      problem = problem_name(inst);
      seq = std::visit([](const auto& i) { return one_variable_sequence(i); }, inst);
    } else {
      if (!j.is_object()) throw InvalidInput("data must be a JSON object");
      const bool has_c = j.contains("c");
      const bool has_s = j.contains("s");
      problem = j.contains("problem") ? j.at("problem").get<std::string>() : (has_c ? "caratheodory" : "cf");
      const char* key = problem == "caratheodory" ? "c" : "s";
      if (problem != "caratheodory" && problem != "cf") throw InvalidInput("unknown problem \"" + problem + "\"");
      if (!(problem == "caratheodory" ? has_c : has_s)) throw InvalidInput(std::string("missing field \"") + key + "\"");
      const Json& arr = j.at(key);
      if (!arr.is_array() || arr.empty()) throw InvalidInput(std::string("\"") + key + "\" must be a non-empty array");
      for (const Json& m : arr) seq.push_back(matrix_from_json(m));
      for (const Matrix& m : seq) {
        if (m.rows() != seq[0].rows() || m.cols() != seq[0].cols()) throw InvalidInput("coefficients differ in shape");
      }
      if (problem == "caratheodory") {
        const Matrix& c0 = seq[0];
        if (c0.rows() != c0.cols() || (c0 - c0.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
          throw InvalidInput("c_0 must be self-adjoint");
        }
      }
    }
    bool feasible = false;
    if (problem == "caratheodory") {
      const double lmin = min_eigenvalue(build_toeplitz(seq));
      feasible = lmin >= -cfg.tol;
      out << "caratheodory lambda_min(T_c) = " << lmin;
    } else {
      const double norm = spectral_norm(build_schur_matrix(seq));
      feasible = norm <= 1.0 + cfg.tol;
      out << "cf ||T_s|| = " << norm;
    }
    out << ' ' << (feasible ? "feasible" : "infeasible") << '\n';
    return feasible ? kExitNoViolation : kExitInfeasible;
  });
}

int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.lambda_path.empty()) throw InvalidInput("--lambda is required");
    if (cfg.out_path.empty()) throw InvalidInput("--out is required");
    const AdmissibleSet lambda = read_test_lambda(cfg.lambda_path, cfg.n_vars);
    if (lambda.n_vars() != cfg.n_vars) throw InvalidInput("--n-vars disagrees with the word set file");
    const Eigen::Index dim_h = cfg.dim_h > 0 ? cfg.dim_h : std::max(cfg.n_vars, cfg.dim_y) + 2;
    const GeneratedInstance g = gen_feasible_instance(cfg.n_vars, lambda, dim_h, cfg.dim_y, cfg.seed);
    write_json_file(cfg.out_path, instance_to_json(g.instance));
    const std::string cert = certificate_path(cfg.out_path);
    write_json_file(cert, certificate_to_json(g));
    out << "wrote " << cfg.out_path << " and " << cert << '\n';
    return kExitNoViolation;
  });
}

int cmd_repro(const std::string& name, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    bool pass = false;
    if (name == "example-4-9") {
      pass = repro_example_4_9(out);
    } else if (name == "example-4-10") {
      pass = repro_example_4_10(out);
    } else if (name == "classical-equivalence") {
      pass = repro_classical_equivalence(out);
    } else {
      throw InvalidInput("unknown scenario \"" + name + "\" (example-4-9, example-4-10, classical-equivalence)");
    }
    return pass ? 0 : 1;
  });
}

}  // namespace ncinterp
