#include "ncinterp/criteria.hpp"

#include "ncinterp/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

namespace ncinterp {

Matrix standard_shift(int m) {
  if (m < 0) throw InvalidInput("standard_shift: negative order");
  Matrix s = Matrix::Zero(m + 1, m + 1);
  for (int i = 1; i <= m; ++i) s(i, i - 1) = 1.0;
  return s;
}

namespace {

void check_blocks(const std::vector<Matrix>& c, bool square) {
  if (c.empty()) throw InvalidInput("empty coefficient sequence");
  for (const Matrix& m : c) {
    if (m.rows() != c[0].rows() || m.cols() != c[0].cols()) throw DimensionError("coefficient blocks differ in shape");
  }
  if (square && c[0].rows() != c[0].cols()) throw DimensionError("coefficient blocks must be square");
}

}  // namespace

Matrix build_toeplitz(const std::vector<Matrix>& c) {
  check_blocks(c, true);
  const Eigen::Index d = c[0].rows();
  const auto n = static_cast<Eigen::Index>(c.size());
  Matrix t = Matrix::Zero(n * d, n * d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index k = i - j;
      t.block(i * d, j * d, d, d) = k >= 0 ? c[static_cast<std::size_t>(k)] : Matrix(c[static_cast<std::size_t>(-k)].adjoint());
    }
  }
  return t;
}

Matrix build_schur_matrix(const std::vector<Matrix>& s) {
  check_blocks(s, false);
  const Eigen::Index r = s[0].rows();
  const Eigen::Index c = s[0].cols();
  const auto n = static_cast<Eigen::Index>(s.size());
  Matrix t = Matrix::Zero(n * r, n * c);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) t.block(i * r, j * c, r, c) = s[static_cast<std::size_t>(i - j)];
  }
  return t;
}

bool classical_caratheodory(const std::vector<Matrix>& c, double tol) {
  return min_eigenvalue(build_toeplitz(c)) >= -tol;
}

bool classical_cf(const std::vector<Matrix>& s, double tol) { return spectral_norm(build_schur_matrix(s)) <= 1.0 + tol; }

CaratheodoryInstance::CaratheodoryInstance(HermitianData data) : data_(std::move(data)) {
  const double lmin = min_eigenvalue(data_.coeff(Word{}));
  if (lmin < -1e-10) {
    throw InvalidInput("c_{} must be positive semidefinite (min eigenvalue " + std::to_string(lmin) + ")");
  }
}

CFInstance::CFInstance(AdmissibleSet lambda, Eigen::Index out_dim, Eigen::Index in_dim,
                       std::map<Word, Matrix> coeffs)
    : lambda_(std::move(lambda)), out_dim_(out_dim), in_dim_(in_dim), coeffs_(std::move(coeffs)) {
  if (out_dim_ < 1 || in_dim_ < 1) throw InvalidInput("coefficient dimensions must be positive");
  if (lambda_.empty()) throw InvalidInput("Lambda must be non-empty");
  for (const auto& [w, c] : coeffs_) {
    if (!lambda_.contains(w)) throw InvalidInput("coefficient key \"" + w.to_string() + "\" is not in Lambda");
    if (c.rows() != out_dim_ || c.cols() != in_dim_) {
      throw InvalidInput("coefficient \"" + w.to_string() + "\" has the wrong shape");
    }
  }
}

Matrix CFInstance::coeff(const Word& w) const {
  auto it = coeffs_.find(w);
  return it == coeffs_.end() ? Matrix::Zero(out_dim_, in_dim_) : it->second;
}

NcPoly CFInstance::poly() const {
  NcPoly q(n_vars(), out_dim_, in_dim_, static_cast<int>(lambda_.max_length()));
  for (const auto& [w, c] : coeffs_) q.set(w, c);
  return q;
}

namespace {

template <class Coeff>
std::vector<Matrix> sequence_of(const AdmissibleSet& lambda, const Coeff& coeff) {
  if (lambda.n_vars() != 1) throw InvalidInput("one-variable data expected (n_vars = 1)");
  const int m = static_cast<int>(lambda.max_length());
  if (!(lambda == lambda_m(1, m))) throw InvalidInput("Lambda must be {0, ..., m} for one-variable data");
  std::vector<Matrix> out;
  Word w;
  for (int k = 0; k <= m; ++k) {
    out.push_back(coeff(w));
    w = concat(w, Word::letter(1));
  }
  return out;
}

}  // namespace

std::vector<Matrix> one_variable_sequence(const CaratheodoryInstance& inst) {
  return sequence_of(inst.lambda(), [&](const Word& w) { return inst.data().coeff(w); });
}

std::vector<Matrix> one_variable_sequence(const CFInstance& inst) {
  return sequence_of(inst.lambda(), [&](const Word& w) { return inst.coeff(w); });
}

std::string to_string(Verdict v) {
  return v == Verdict::InfeasibleWithWitness ? "INFEASIBLE_WITH_WITNESS" : "NO_VIOLATION_FOUND";
}

double caratheodory_violation(const CaratheodoryInstance& inst, const MatrixTuple& t) {
  return -min_eigenvalue(herm_eval(inst.data(), t));
}

double cf_violation(const CFInstance& inst, const MatrixTuple& t) {
  return spectral_norm(eval_right(inst.poly(), t)) - 1.0;
}

MatrixTuple witness_search(const Objective& objective, const MatrixTuple& start, const AdmissibleSet& lambda,
                           int iters, double step, std::uint64_t seed) {
  const Eigen::Index n = start.dim();
  const int nv = start.n_vars();
  if (iters <= 0 || n == 0) return start;
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> sigma;
  for (const Matrix& m : start.mats()) sigma.push_back(std::min(1.0, spectral_norm(m)));

  auto build = [&](const Matrix& a, const Matrix& a_inv, const std::vector<double>& s) {
    std::vector<Matrix> mats;
    for (int k = 0; k < nv; ++k) {
      Matrix m = a_inv * start[static_cast<std::size_t>(k)] * a;
      const double norm = spectral_norm(m);
      if (norm > 0.0) m *= s[static_cast<std::size_t>(k)] / norm;
      mats.push_back(std::move(m));
    }
    return MatrixTuple(std::move(mats));
  };

  constexpr double kMaxSimilarityCond = 1e6;
  Matrix a = Matrix::Identity(n, n);
  MatrixTuple best = start;
  double best_score = objective(start);
  // one proposal; returns true and moves the state on strict improvement
  auto try_move = [&](const Matrix& g, const std::vector<double>& z) {
    const Matrix a_new = a * (Matrix::Identity(n, n) + step * g);
    std::vector<double> s_new = sigma;
    for (std::size_t k = 0; k < s_new.size(); ++k) s_new[k] = std::min(1.0, s_new[k] * std::exp(step * z[k]));
    Matrix a_inv;
    try {
      a_inv = guarded_inverse(a_new, kMaxSimilarityCond);
    } catch (const SingularError&) {
      return false;
    }
    MatrixTuple candidate = build(a_new, a_inv, s_new);
    const double score = objective(candidate);
    if (!(score > best_score)) return false;
    best_score = score;
    best = std::move(candidate);
    a = a_new;
    sigma = std::move(s_new);
    return true;
  };

  for (int it = 0; it < iters && step > 1e-8; ++it) {
    const Matrix g = complex_gaussian(n, n, rng) / std::sqrt(static_cast<double>(n));
    std::vector<double> z(sigma.size());
    for (double& v : z) v = normal(rng);
    bool moved = try_move(g, z);
    if (!moved) {
      // mirrored proposal
      for (double& v : z) v = -v;
      moved = try_move(-g, z);
    }
    // roughly the one-fifth success rule
    step = moved ? std::min(step * 1.5, 1.0) : step * 0.9;
  }
  if (!check_lambda_nilpotent(best, lambda).verdict || !check_contractive(best).verdict) return start;
  return best;
}

namespace {

struct Candidate {
  double score;
  int trial;
  MatrixTuple tuple;
};

bool better(const Candidate& a, const Candidate& b) {
  return a.score > b.score || (a.score == b.score && a.trial < b.trial);
}

struct SearchResult {
  Candidate best;
  bool validated = false;
  int trials = 0;
};

// Sample schedule: shift, half and tenth of the shift, extra tuples, then
// `samples` random draws. When the tested set is some Λ_m every fifth random
// draw is a block-triangular tuple instead of a weighted shift.
SearchResult run_search(const Objective& objective, const AdmissibleSet& test_lambda, const CheckOptions& opts) {
  if (opts.budget.samples < 0) throw InvalidInput("samples must be non-negative");
  if (opts.budget.opt_iters < 0) throw InvalidInput("opt_iters must be non-negative");
  if (!(opts.tol > 0.0)) throw InvalidInput("tol must be positive");
  const Eigen::Index max_dim =
      opts.budget.max_dim > 0 ? opts.budget.max_dim : static_cast<Eigen::Index>(test_lambda.size());
  const int n_vars = test_lambda.n_vars();
  const int m = static_cast<int>(test_lambda.max_length());
  const bool is_lambda_m = test_lambda.size() > 1 && test_lambda == lambda_m(n_vars, m);

  for (const MatrixTuple& t : opts.extra_tuples) {
    if (t.n_vars() != n_vars) throw InvalidInput("extra tuple has the wrong number of matrices");
    if (!check_contractive(t).verdict) throw InvalidInput("extra tuple is not contractive");
    if (!check_lambda_nilpotent(t, test_lambda).verdict) {
      throw InvalidInput("extra tuple is not nilpotent for the tested word set");
    }
  }

  std::vector<Candidate> top;
  const auto keep = static_cast<std::size_t>(std::max(1, opts.refine_top));
  int trial = 0;
  auto consider = [&](MatrixTuple t) {
    Candidate c{objective(t), trial++, std::move(t)};
    auto pos = std::find_if(top.begin(), top.end(), [&](const Candidate& o) { return better(c, o); });
    if (pos != top.end() || top.size() < keep) {
      top.insert(pos, std::move(c));
      if (top.size() > keep) top.pop_back();
    }
  };

  const MatrixTuple shift = test_lambda.size() == 1 ? MatrixTuple::zero(n_vars, 1) : shift_tuple(test_lambda);
  consider(shift);
  consider(shift.scaled(0.5));
  consider(shift.scaled(0.1));
  for (const MatrixTuple& t : opts.extra_tuples) consider(t);

  SamplerParams params;
  params.max_dim = max_dim;
  for (int i = 0; i < opts.budget.samples; ++i) {
    const std::uint64_t sub = mix_seed(opts.seed, static_cast<std::uint64_t>(i));
    if (is_lambda_m && i % 5 == 4) {
      Rng rng(sub);
      std::vector<Eigen::Index> dims(static_cast<std::size_t>(m + 1), 1);
      Eigen::Index total = m + 1;
      std::uniform_int_distribution<int> extra(0, 1);
      for (auto& d : dims) {
        if (total < max_dim && extra(rng) == 1) {
          ++d;
          ++total;
        }
      }
      consider(block_triangular_nilpotent(n_vars, dims, mix_seed(sub, 1)));
    } else {
      consider(sample_nilpotent(test_lambda, sub, params));
    }
  }

  // Refinement keeps each candidate's trial index so ties stay deterministic.
  for (std::size_t r = 0; r < top.size(); ++r) {
    if (opts.budget.opt_iters == 0) break;
    MatrixTuple refined = witness_search(objective, top[r].tuple, test_lambda, opts.budget.opt_iters, 0.25,
                                         mix_seed(opts.seed ^ 0x5eedULL, r));
    const double score = objective(refined);
    if (score > top[r].score) {
      top[r].score = score;
      top[r].tuple = std::move(refined);
    }
  }
  std::sort(top.begin(), top.end(), better);

  SearchResult out{top.front(), false, trial};
  // fresh validation pass for the reported tuple
  const Candidate& best = top.front();
  out.validated = check_contractive(best.tuple).verdict && check_lambda_nilpotent(best.tuple, test_lambda).verdict &&
                  objective(best.tuple) == best.score;
  return out;
}

FeasibilityReport make_report(const SearchResult& r, const CheckOptions& opts, double violation, bool violated,
                              std::chrono::steady_clock::time_point started) {
  FeasibilityReport rep;
  rep.verdict = violated && r.validated ? Verdict::InfeasibleWithWitness : Verdict::NoViolationFound;
  if (rep.verdict == Verdict::InfeasibleWithWitness) rep.witness = r.best.tuple;
  rep.violation = violation;
  rep.trials = r.trials;
  rep.witness_trial = r.best.trial;
  rep.seed = opts.seed;
  rep.budget = opts.budget;
  rep.tol = opts.tol;
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return rep;
}

const AdmissibleSet& tested_set(const AdmissibleSet& own, const CheckOptions& opts) {
  if (!opts.test_lambda) return own;
  if (opts.test_lambda->n_vars() != own.n_vars()) throw InvalidInput("test Lambda has a different n_vars");
  if (opts.test_lambda->empty()) throw InvalidInput("test Lambda must be non-empty");
  return *opts.test_lambda;
}

}  // namespace

FeasibilityReport nc_caratheodory_check(const CaratheodoryInstance& inst, const CheckOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  const AdmissibleSet& lambda = tested_set(inst.lambda(), opts);
  const Objective objective = [&](const MatrixTuple& t) { return caratheodory_violation(inst, t); };
  const SearchResult r = run_search(objective, lambda, opts);
  return make_report(r, opts, -r.best.score, r.best.score > opts.tol, started);
}

FeasibilityReport nc_cf_check(const CFInstance& inst, const CheckOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  const AdmissibleSet& lambda = tested_set(inst.lambda(), opts);
  const NcPoly q = inst.poly();
  const Objective objective = [&](const MatrixTuple& t) { return spectral_norm(eval_right(q, t)) - 1.0; };
  const SearchResult r = run_search(objective, lambda, opts);
  return make_report(r, opts, r.best.score, r.best.score > opts.tol, started);
}

Reduction reduce_degenerate(const CaratheodoryInstance& inst, double tol) {
  const HermitianData& data = inst.data();
  const Eigen::Index d = data.dim();
  Reduction out;
  const Matrix c0 = data.coeff(Word{});
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (c0 + c0.adjoint()));
  const RealVector& values = eig.eigenvalues();
  if (values(0) >= tol) {
    out.reduced = inst;
    out.basis = Matrix::Identity(d, d);
    return out;
  }
  std::vector<Eigen::Index> range_idx;
  std::vector<Eigen::Index> kernel_idx;
  for (Eigen::Index i = 0; i < d; ++i) (values(i) >= tol ? range_idx : kernel_idx).push_back(i);
  Matrix range(d, static_cast<Eigen::Index>(range_idx.size()));
  Matrix kernel(d, static_cast<Eigen::Index>(kernel_idx.size()));
  for (std::size_t i = 0; i < range_idx.size(); ++i) range.col(static_cast<Eigen::Index>(i)) = eig.eigenvectors().col(range_idx[i]);
  for (std::size_t i = 0; i < kernel_idx.size(); ++i) kernel.col(static_cast<Eigen::Index>(i)) = eig.eigenvectors().col(kernel_idx[i]);

  for (const auto& [w, c] : data.coeffs()) {
    if (w.is_empty()) continue;
    out.kernel_residual = std::max({out.kernel_residual, spectral_norm(c * kernel), spectral_norm(c.adjoint() * kernel)});
  }
  out.basis = range;
  if (out.kernel_residual > std::sqrt(tol)) {
    out.status = ReductionStatus::DataInconsistent;
    return out;
  }
  out.status = ReductionStatus::Reduced;
  if (range.cols() == 0) return out;
  std::map<Word, Matrix> compressed;
  for (const auto& [w, c] : data.coeffs()) compressed.emplace(w, range.adjoint() * c * range);
  out.reduced = CaratheodoryInstance(HermitianData(data.lambda(), range.cols(), std::move(compressed)));
  return out;
}

CaratheodoryInstance normalize_caratheodory(const CaratheodoryInstance& inst) {
  const HermitianData& data = inst.data();
  const Matrix c0 = data.coeff(Word{});
  if (min_eigenvalue(c0) <= 0.0) throw SingularError("normalization needs c_{} positive definite");
  const Matrix r = psd_inverse_sqrt(c0);
  std::map<Word, Matrix> scaled;
  for (const auto& [w, c] : data.coeffs()) scaled.emplace(w, r * c * r);
  // the constant term is I up to rounding; set it exactly
  scaled[Word{}] = Matrix::Identity(data.dim(), data.dim());
  return CaratheodoryInstance(HermitianData(data.lambda(), data.dim(), std::move(scaled)));
}

std::pair<CFInstance, Matrix> phase_normalize(const CFInstance& inst) {
  if (inst.out_dim() != inst.in_dim()) throw DimensionError("phase normalization needs square coefficients");
  Eigen::JacobiSVD<Matrix> svd(inst.coeff(Word{}), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix u = svd.matrixU() * svd.matrixV().adjoint();
  std::map<Word, Matrix> rotated;
  for (const auto& [w, c] : inst.coeffs()) rotated.emplace(w, -u.adjoint() * c);
  return {CFInstance(inst.lambda(), inst.out_dim(), inst.in_dim(), std::move(rotated)), u};
}

CFInstance embed_square(const CFInstance& inst) {
  const Eigen::Index du = inst.in_dim();
  const Eigen::Index dy = inst.out_dim();
  std::map<Word, Matrix> embedded;
  for (const auto& [w, c] : inst.coeffs()) {
    Matrix big = Matrix::Zero(du + dy, du + dy);
    big.block(du, 0, dy, du) = c;
    embedded.emplace(w, std::move(big));
  }
  return CFInstance(inst.lambda(), du + dy, du + dy, std::move(embedded));
}

}  // namespace ncinterp
