#include "ncinterp/repro.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "ncinterp/errors.hpp"

namespace ncinterp {

namespace {

Matrix scalar(double x) { return Matrix::Constant(1, 1, x); }

WordSet example_words() { return {Word{}, Word{1}, Word{2}, Word{1, 2}, Word{2, 1}}; }

bool step(std::ostream& out, const std::string& what, bool ok) {
  out << "  " << (ok ? "ok   " : "FAIL ") << what << '\n';
  return ok;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

CaratheodoryInstance example_4_9_instance() {
  std::map<Word, Matrix> c{{Word{}, scalar(1.0)},     {Word{1}, scalar(0.5)},     {Word{2}, scalar(0.5)},
                           {Word{1, 2}, scalar(0.25)}, {Word{2, 1}, scalar(0.25)}};
  return CaratheodoryInstance(HermitianData(AdmissibleSet(2, example_words()), 1, std::move(c)));
}

AdmissibleSet example_4_9_widened(int squared_letter) {
  if (squared_letter != 1 && squared_letter != 2) throw InvalidInput("squared letter must be 1 or 2");
  WordSet ws = example_words();
  ws.insert(Word{squared_letter, squared_letter});
  return AdmissibleSet(2, std::move(ws));
}

MatrixTuple example_4_9_tuple(bool swapped) {
  Matrix t1 = Matrix::Zero(3, 3);
  t1(0, 1) = 1.0;
  t1(1, 2) = 1.0;
  Matrix t2 = Matrix::Zero(3, 3);
  t2(0, 1) = 1.0;
  return swapped ? MatrixTuple({t2, t1}) : MatrixTuple({t1, t2});
}

std::vector<Matrix> random_caratheodory_sequence(int m, Eigen::Index d, bool feasible, std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::Index h = m + 1 + d;
  const Matrix g = random_unitary(h, rng);
  const Matrix v = random_isometry(h, d, rng);
  std::vector<Matrix> c;
  Matrix power = Matrix::Identity(h, h);
  for (int k = 0; k <= m; ++k) {
    c.push_back(v.adjoint() * power * v);
    power = power * g;
  }
  c[0] = Matrix::Identity(d, d);
  if (!feasible) {
    std::uniform_real_distribution<double> size(0.0, 0.6);
    const double eps = size(rng);
    for (int k = 1; k <= m; ++k) c[static_cast<std::size_t>(k)] += eps * complex_gaussian(d, d, rng);
  }
  return c;
}

std::vector<Matrix> random_schur_sequence(int m, Eigen::Index d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Matrix> s;
  for (int k = 0; k <= m; ++k) s.push_back(complex_gaussian(d, d, rng));
  const double norm = spectral_norm(build_schur_matrix(s));
  std::uniform_real_distribution<double> target(0.5, 1.5);
  const double scale = target(rng) / norm;
  for (Matrix& x : s) x *= scale;
  return s;
}

CaratheodoryInstance one_variable_caratheodory(const std::vector<Matrix>& c) {
  if (c.empty()) throw InvalidInput("empty coefficient sequence");
  const int m = static_cast<int>(c.size()) - 1;
  std::map<Word, Matrix> coeffs;
  Word w;
  for (const Matrix& ck : c) {
    coeffs.emplace(w, ck);
    w = concat(w, Word::letter(1));
  }
  return CaratheodoryInstance(HermitianData(lambda_m(1, m), c[0].rows(), std::move(coeffs)));
}

CFInstance one_variable_cf(const std::vector<Matrix>& s) {
  if (s.empty()) throw InvalidInput("empty coefficient sequence");
  const int m = static_cast<int>(s.size()) - 1;
  std::map<Word, Matrix> coeffs;
  Word w;
  for (const Matrix& sk : s) {
    coeffs.emplace(w, sk);
    w = concat(w, Word::letter(1));
  }
  return CFInstance(lambda_m(1, m), s[0].rows(), s[0].cols(), std::move(coeffs));
}

bool repro_example_4_9(std::ostream& out) {
  out << "example-4-9\n";
  bool pass = true;
  const CaratheodoryInstance inst = example_4_9_instance();
  const MatrixTuple t = example_4_9_tuple();
  const AdmissibleSet wide = example_4_9_widened(1);

  const Matrix m = herm_eval(inst.data(), t);
  Matrix expected(3, 3);
  expected << 1, 1, 0.25, 1, 1, 0.5, 0.25, 0.5, 1;
  pass &= step(out, "2Re p(T) = [[1,1,1/4],[1,1,1/2],[1/4,1/2,1]]", (m - expected).cwiseAbs().maxCoeff() <= 1e-12);
  const double det = m.determinant().real();
  pass &= step(out, "det 2Re p(T) = " + fmt(det) + " (expected -1/16)", std::abs(det + 1.0 / 16.0) <= 1e-9);
  const double lmin = min_eigenvalue(m);
  pass &= step(out, "lambda_min 2Re p(T) = " + fmt(lmin) + " < 0", lmin < 0.0);
  pass &= step(out, "T contractive", check_contractive(t).verdict);
  pass &= step(out, "T nilpotent for the widened set", check_lambda_nilpotent(t, wide).verdict);
  pass &= step(out, "T not nilpotent for the original set (T1^2 != 0)",
               !check_lambda_nilpotent(t, inst.lambda()).verdict);

  CheckOptions with_tuple;
  with_tuple.test_lambda = wide;
  with_tuple.extra_tuples = {t};
  const FeasibilityReport r1 = nc_caratheodory_check(inst, with_tuple);
  pass &= step(out, "widened set, reference pair in the sample set: " + to_string(r1.verdict) + ", violation " +
                        fmt(r1.violation),
               r1.verdict == Verdict::InfeasibleWithWitness);

  CheckOptions search_only;
  search_only.test_lambda = wide;
  const FeasibilityReport r2 = nc_caratheodory_check(inst, search_only);
  pass &= step(out, "widened set, search only: " + to_string(r2.verdict) + ", violation " + fmt(r2.violation),
               r2.verdict == Verdict::InfeasibleWithWitness);

  CheckOptions mirrored;
  mirrored.test_lambda = example_4_9_widened(2);
  mirrored.extra_tuples = {example_4_9_tuple(true)};
  const FeasibilityReport r3 = nc_caratheodory_check(inst, mirrored);
  pass &= step(out, "mirrored set with swapped pair: " + to_string(r3.verdict),
               r3.verdict == Verdict::InfeasibleWithWitness);

  const FeasibilityReport r4 = nc_caratheodory_check(inst, CheckOptions{});
  pass &= step(out, "original set, 2000 samples: " + to_string(r4.verdict) + ", min eigenvalue " + fmt(r4.violation),
               r4.verdict == Verdict::NoViolationFound);

  out << (pass ? "PASS" : "FAIL") << '\n';
  return pass;
}

bool repro_example_4_10(std::ostream& out) {
  out << "example-4-10\n";
  bool pass = true;
  constexpr int m = 3;
  WordSet powers;
  Word w;
  for (int k = 0; k <= m; ++k) {
    powers.insert(w);
    w = concat(w, Word::letter(1));
  }
  const AdmissibleSet lambda(2, powers);

  bool second_zero = true;
  for (int i = 0; i < 200; ++i) {
    const MatrixTuple t = sample_nilpotent(lambda, mix_seed(410, static_cast<std::uint64_t>(i)));
    second_zero &= !(t[1].array() != Complex(0.0, 0.0)).any();
  }
  pass &= step(out, "200 nilpotent samples all have T2 = 0", second_zero);

  auto two_var = [&](const std::vector<Matrix>& c) {
    std::map<Word, Matrix> coeffs;
    Word v;
    for (const Matrix& ck : c) {
      coeffs.emplace(v, ck);
      v = concat(v, Word::letter(1));
    }
    return CaratheodoryInstance(HermitianData(lambda, c[0].rows(), std::move(coeffs)));
  };

  const std::vector<Matrix> good = random_caratheodory_sequence(m, 1, true, 4101);
  const CaratheodoryInstance feasible = two_var(good);
  pass &= step(out, "feasible data pass the Toeplitz test", classical_caratheodory(good));
  const FeasibilityReport own = nc_caratheodory_check(feasible, CheckOptions{});
  pass &= step(out, "own set: " + to_string(own.verdict) + ", min eigenvalue " + fmt(own.violation),
               own.verdict == Verdict::NoViolationFound);
  CheckOptions wide;
  wide.test_lambda = lambda_m(2, m);
  const FeasibilityReport full = nc_caratheodory_check(feasible, wide);
  pass &= step(out, "all words of length <= 3: " + to_string(full.verdict) + ", min eigenvalue " +
                        fmt(full.violation),
               full.verdict == Verdict::NoViolationFound);

  const std::vector<Matrix> bad{scalar(1.0), scalar(1.0), scalar(0.0), scalar(0.0)};
  const CaratheodoryInstance infeasible = two_var(bad);
  pass &= step(out, "data (1, 1, 0, 0) fail the Toeplitz test", !classical_caratheodory(bad));
  const FeasibilityReport r = nc_caratheodory_check(infeasible, CheckOptions{});
  pass &= step(out, "own set: " + to_string(r.verdict) + ", min eigenvalue " + fmt(r.violation),
               r.verdict == Verdict::InfeasibleWithWitness);

  out << (pass ? "PASS" : "FAIL") << '\n';
  return pass;
}

bool repro_classical_equivalence(std::ostream& out, int instances) {
  out << "classical-equivalence\n";
  std::uniform_int_distribution<int> order(1, 4);
  int cara_agree = 0;
  int cf_agree = 0;
  int cara_feasible = 0;
  int cf_feasible = 0;
  CheckOptions opts;
  opts.budget.samples = 300;
  for (int i = 0; i < instances; ++i) {
    Rng rng(mix_seed(2024, static_cast<std::uint64_t>(i)));
    const int m = order(rng);
    const auto c = random_caratheodory_sequence(m, 1, i % 2 == 0, mix_seed(rng(), 1));
    const bool classical_c = classical_caratheodory(c);
    opts.seed = static_cast<std::uint64_t>(i);
    const bool nc_c = nc_caratheodory_check(one_variable_caratheodory(c), opts).verdict == Verdict::NoViolationFound;
    cara_agree += classical_c == nc_c;
    cara_feasible += classical_c;

    const auto s = random_schur_sequence(m, 1, mix_seed(rng(), 2));
    const bool classical_s = classical_cf(s);
    const bool nc_s = nc_cf_check(one_variable_cf(s), opts).verdict == Verdict::NoViolationFound;
    cf_agree += classical_s == nc_s;
    cf_feasible += classical_s;
  }
  bool pass = true;
  pass &= step(out, "Caratheodory: " + std::to_string(cara_agree) + "/" + std::to_string(instances) +
                        " agree with Toeplitz (" + std::to_string(cara_feasible) + " feasible)",
               cara_agree == instances);
  pass &= step(out, "Caratheodory-Fejer: " + std::to_string(cf_agree) + "/" + std::to_string(instances) +
                        " agree with Schur (" + std::to_string(cf_feasible) + " feasible)",
               cf_agree == instances);
  out << (pass ? "PASS" : "FAIL") << '\n';
  return pass;
}

}  // namespace ncinterp
