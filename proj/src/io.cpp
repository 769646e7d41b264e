#include "ncinterp/io.hpp"

#include "ncinterp/errors.hpp"

#include <fstream>
#include <sstream>

namespace ncinterp {

namespace {

Complex entry_from_json(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw InvalidInput("matrix entry must be a number or an [re, im] pair, got " + e.dump());
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InvalidInput(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

int int_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) throw InvalidInput(std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

WordSet words_from_json(const Json& arr, int n_vars) {
  if (!arr.is_array()) throw InvalidInput("word list must be an array of strings");
  WordSet ws;
  for (const Json& w : arr) {
    if (!w.is_string()) throw InvalidInput("words must be strings like \"1.2\"");
    Word word = Word::parse(w.get<std::string>());
    if (word.max_letter() > n_vars) throw InvalidInput("word \"" + word.to_string() + "\" exceeds n_vars");
    ws.insert(std::move(word));
  }
  return ws;
}

Json words_to_json(const WordSet& ws) {
  Json arr = Json::array();
  for (const Word& w : ws) arr.push_back(w.to_string());
  return arr;
}

std::map<Word, Matrix> coeffs_from_json(const Json& j, int n_vars) {
  if (!j.is_object()) throw InvalidInput("\"coeffs\" must be an object keyed by words");
  std::map<Word, Matrix> out;
  for (const auto& [key, value] : j.items()) {
    Word w = Word::parse(key);
    if (w.max_letter() > n_vars) throw InvalidInput("coefficient key \"" + key + "\" exceeds n_vars");
    if (!out.emplace(w, matrix_from_json(value)).second) throw InvalidInput("duplicate coefficient key \"" + key + "\"");
  }
  return out;
}

Json coeffs_to_json(const std::map<Word, Matrix>& coeffs) {
  Json obj = Json::object();
  for (const auto& [w, c] : coeffs) obj[w.to_string()] = matrix_to_json(c);
  return obj;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (j.is_number()) return Matrix::Constant(1, 1, entry_from_json(j));
  if (!j.is_array() || j.empty()) throw InvalidInput("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw InvalidInput("matrix rows must be non-empty arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw InvalidInput("ragged matrix rows");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = entry_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Json word_set_to_json(const AdmissibleSet& lambda) {
  return Json{{"n_vars", lambda.n_vars()}, {"words", words_to_json(lambda.words())}};
}

AdmissibleSet word_set_from_json(const Json& j) {
  const int n = int_field(j, "n_vars");
  return AdmissibleSet(n, words_from_json(field(j, "words"), n));
}

Json ncpoly_to_json(const NcPoly& p) {
  return Json{{"n_vars", p.n_vars()},
              {"order", p.order()},
              {"out_dim", p.out_dim()},
              {"in_dim", p.in_dim()},
              {"coeffs", coeffs_to_json(p.coeffs())}};
}

NcPoly ncpoly_from_json(const Json& j) {
  const int n = int_field(j, "n_vars");
  NcPoly p(n, int_field(j, "out_dim"), int_field(j, "in_dim"), int_field(j, "order"));
  for (const auto& [w, c] : coeffs_from_json(field(j, "coeffs"), n)) p.set(w, c);
  return p;
}

Json tuple_to_json(const MatrixTuple& t) {
  Json mats = Json::array();
  for (const Matrix& m : t.mats()) mats.push_back(matrix_to_json(m));
  return Json{{"n_vars", t.n_vars()}, {"dim", t.dim()}, {"mats", std::move(mats)}};
}

MatrixTuple tuple_from_json(const Json& j) {
  const int n = int_field(j, "n_vars");
  const Json& arr = field(j, "mats");
  if (!arr.is_array() || static_cast<int>(arr.size()) != n) throw InvalidInput("\"mats\" must hold n_vars matrices");
  std::vector<Matrix> mats;
  for (const Json& m : arr) mats.push_back(matrix_from_json(m));
  MatrixTuple t(std::move(mats));
  if (j.contains("dim") && int_field(j, "dim") != t.dim()) throw InvalidInput("\"dim\" disagrees with the matrices");
  return t;
}

Json instance_to_json(const Instance& inst) {
  if (const auto* c = std::get_if<CaratheodoryInstance>(&inst)) {
    return Json{{"problem", "caratheodory"},
                {"n_vars", c->n_vars()},
                {"lambda", words_to_json(c->lambda().words())},
                {"coeffs", coeffs_to_json(c->data().coeffs())},
                {"dims", Json{{"y", c->dim()}}}};
  }
  const auto& s = std::get<CFInstance>(inst);
  return Json{{"problem", "cf"},
              {"n_vars", s.n_vars()},
              {"lambda", words_to_json(s.lambda().words())},
              {"coeffs", coeffs_to_json(s.coeffs())},
              {"dims", Json{{"y", s.out_dim()}, {"u", s.in_dim()}}}};
}

Instance instance_from_json(const Json& j) {
  const Json& problem = field(j, "problem");
  if (!problem.is_string()) throw InvalidInput("\"problem\" must be a string");
  const int n = int_field(j, "n_vars");
  AdmissibleSet lambda(n, words_from_json(field(j, "lambda"), n));
  std::map<Word, Matrix> coeffs = coeffs_from_json(field(j, "coeffs"), n);

  // dims may be omitted when at least one coefficient fixes them
  auto dim_of = [&](const char* key, bool rows) -> Eigen::Index {
    if (j.contains("dims") && j.at("dims").contains(key)) return int_field(j.at("dims"), key);
    if (coeffs.empty()) throw InvalidInput(std::string("missing dims.") + key);
    const Matrix& c = coeffs.begin()->second;
    return rows ? c.rows() : c.cols();
  };

  const std::string name = problem.get<std::string>();
  if (name == "caratheodory") {
    const Eigen::Index y = dim_of("y", true);
    return CaratheodoryInstance(HermitianData(std::move(lambda), y, std::move(coeffs)));
  }
  if (name == "cf") {
    const Eigen::Index y = dim_of("y", true);
    const Eigen::Index u = dim_of("u", false);
    return CFInstance(std::move(lambda), y, u, std::move(coeffs));
  }
  throw InvalidInput("unknown problem \"" + name + "\" (expected caratheodory or cf)");
}

Json report_to_json(const FeasibilityReport& r, const std::string& problem) {
  return Json{{"schema_version", kReportSchemaVersion},
              {"problem", problem},
              {"verdict", to_string(r.verdict)},
              {"violation", r.violation},
              {"witness", r.witness ? tuple_to_json(*r.witness) : Json(nullptr)},
              {"witness_trial", r.witness_trial},
              {"trials", r.trials},
              {"seed", r.seed},
              {"tol", r.tol},
              {"budget", Json{{"samples", r.budget.samples},
                              {"max_dim", r.budget.max_dim},
                              {"opt_iters", r.budget.opt_iters}}}};
}

Json certificate_to_json(const GeneratedInstance& g) {
  return Json{{"lambda", word_set_to_json(g.instance.lambda())},
              {"G", tuple_to_json(g.realization.g())},
              {"V", matrix_to_json(g.realization.v())},
              {"instance", instance_to_json(g.instance)}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("write failed for " + path);
}

}  // namespace ncinterp
