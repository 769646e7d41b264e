#include "ncinterp/realization.hpp"

#include "ncinterp/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace ncinterp {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

HerglotzRealization::HerglotzRealization(MatrixTuple g, Matrix v) : g_(std::move(g)), v_(std::move(v)) {
  if (v_.rows() != g_.dim()) throw InvalidInput("V must have as many rows as G has columns");
  const Matrix gram = v_.adjoint() * v_;
  if (spectral_norm(gram - Matrix::Identity(gram.rows(), gram.cols())) > 1e-12) {
    throw InvalidInput("V is not an isometry");
  }
  const ClassReport rep = check_gn(g_, 1e-10);
  if (!rep.verdict) throw InvalidInput("G is not in G_N (residual " + std::to_string(rep.worst_residual) + ")");
}

Colligation::Colligation(Matrix a, Matrix b, Matrix c, Matrix d, std::vector<Matrix> p)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), p_(std::move(p)) {
  const Eigen::Index h = a_.rows();
  const Eigen::Index y = d_.rows();
  if (a_.cols() != h || b_.rows() != h || c_.cols() != h || c_.rows() != y || b_.cols() != d_.cols() ||
      d_.rows() != d_.cols()) {
    throw InvalidInput("colligation blocks have inconsistent shapes");
  }
  if (p_.empty()) throw InvalidInput("colligation needs at least one projection");
  Matrix u(h + y, h + y);
  u << a_, b_, c_, d_;
  const Matrix id = Matrix::Identity(h + y, h + y);
  if (spectral_norm(u.adjoint() * u - id) > 1e-10 || spectral_norm(u * u.adjoint() - id) > 1e-10) {
    throw InvalidInput("colligation is not unitary");
  }
  Matrix sum = Matrix::Zero(h, h);
  for (std::size_t k = 0; k < p_.size(); ++k) {
    const Matrix& pk = p_[k];
    if (pk.rows() != h || pk.cols() != h) throw InvalidInput("projection has the wrong shape");
    if (max_abs(pk * pk - pk) > 1e-12 || max_abs(pk - pk.adjoint()) > 1e-12) {
      throw InvalidInput("P_" + std::to_string(k + 1) + " is not an orthogonal projection");
    }
    for (std::size_t j = 0; j < k; ++j) {
      if (max_abs(pk * p_[j]) > 1e-12) throw InvalidInput("projections are not mutually orthogonal");
    }
    sum += pk;
  }
  if (max_abs(sum - Matrix::Identity(h, h)) > 1e-12) throw InvalidInput("projections do not sum to I");
}

std::map<Word, Matrix> moments(const HerglotzRealization& r, const AdmissibleSet& lambda) {
  if (lambda.n_vars() != r.n_vars()) throw DimensionError("moments: n_vars mismatch");
  std::map<Word, Matrix> out;
  for (const auto& [w, p] : r.g().powers(lambda.words())) out.emplace(w, r.v().adjoint() * p * r.v());
  return out;
}

NcPoly herglotz_coeffs(const HerglotzRealization& r, int order) {
  const AdmissibleSet all = lambda_m(r.n_vars(), order);
  NcPoly f(r.n_vars(), r.out_dim(), r.out_dim(), order);
  for (const auto& [w, c] : moments(r, all)) f.set(w, w.is_empty() ? Matrix(0.5 * c) : c);
  return f;
}

NcPoly transfer_series(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d,
                       const std::vector<Matrix>& p, int order) {
  const auto n_vars = static_cast<int>(p.size());
  NcPoly f(n_vars, d.rows(), d.cols(), order);
  f.set(Word{}, d);
  if (order == 0) return f;
  // Walk words in canonical order; the prefix product C P_{i1}A ··· P_{i(m-1)}A
  // of w is the "open" product of drop_last(w) extended by P_{last}A.
  std::map<Word, Matrix> open;  // C P_{i1} A ··· P_{im} A
  open.emplace(Word{}, c);
  const AdmissibleSet all = lambda_m(n_vars, order);
  for (const Word& w : all.words()) {
    if (w.is_empty()) continue;
    const Matrix& left = open.at(w.drop_last());
    const Matrix& pk = p.at(static_cast<std::size_t>(w[w.length() - 1] - 1));
    f.set(w, left * pk * b);
    if (static_cast<int>(w.length()) < order) open.emplace(w, left * pk * a);
  }
  return f;
}

NcPoly transfer_coeffs(const Colligation& col, int order) {
  return transfer_series(col.a(), col.b(), col.c(), col.d(), col.p(), order);
}

HerglotzRealization diagonal_transform(const Colligation& col) {
  if (max_abs(col.d()) > 1e-10) throw InvalidInput("diagonal transform needs D = 0");
  const Matrix cc = col.c() * col.c().adjoint();
  if (spectral_norm(cc - Matrix::Identity(cc.rows(), cc.cols())) > 1e-10) {
    throw InvalidInput("diagonal transform needs C to be a coisometry");
  }
  const Matrix x = col.a() + col.b() * col.c();
  std::vector<Matrix> g;
  for (const Matrix& pk : col.p()) g.push_back(pk * x);
  return HerglotzRealization(MatrixTuple(std::move(g)), col.c().adjoint());
}

namespace {

std::vector<Matrix> random_resolution(Eigen::Index dim, int n_vars, Rng& rng) {
  const Matrix basis = random_unitary(dim, rng);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_int_distribution<int> group(0, n_vars - 1);
  std::vector<Matrix> p(static_cast<std::size_t>(n_vars), Matrix::Zero(dim, dim));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int k = static_cast<int>(i) < n_vars ? static_cast<int>(i) : group(rng);
    const auto col = basis.col(order[i]);
    p[static_cast<std::size_t>(k)] += col * col.adjoint();
  }
  return p;
}

}  // namespace

Colligation random_colligation(Eigen::Index state_dim, Eigen::Index out_dim, int n_vars, std::uint64_t seed) {
  if (n_vars < 1 || out_dim < 1 || state_dim < std::max<Eigen::Index>(n_vars, out_dim)) {
    throw InvalidInput("random_colligation needs state_dim >= max(n_vars, out_dim)");
  }
  Rng rng(seed);
  const Matrix x = random_unitary(state_dim, rng);
  const Matrix b = random_isometry(state_dim, out_dim, rng);
  const Matrix c = b.adjoint() * x;
  const Matrix a = (Matrix::Identity(state_dim, state_dim) - b * b.adjoint()) * x;
  std::vector<Matrix> p = random_resolution(state_dim, n_vars, rng);
  return Colligation(a, b, c, Matrix::Zero(out_dim, out_dim), std::move(p));
}

GeneratedInstance gen_feasible_instance(int n_vars, const AdmissibleSet& lambda, Eigen::Index dim_h,
                                        Eigen::Index dim_y, std::uint64_t seed) {
  if (lambda.n_vars() != n_vars) throw InvalidInput("Lambda has a different n_vars");
  if (lambda.empty()) throw InvalidInput("Lambda must be non-empty");
  if (dim_y < 1 || dim_h < std::max<Eigen::Index>(n_vars, dim_y)) {
    throw InvalidInput("gen needs dim_h >= max(n_vars, dim_y) and dim_y >= 1");
  }
  MatrixTuple g = random_gn(dim_h, n_vars, mix_seed(seed, 0));
  Rng rng(mix_seed(seed, 1));
  Matrix v = random_isometry(dim_h, dim_y, rng);
  HerglotzRealization r(std::move(g), std::move(v));
  std::map<Word, Matrix> c = moments(r, lambda);
  c[Word{}] = Matrix::Identity(dim_y, dim_y);
  CaratheodoryInstance inst(HermitianData(lambda, dim_y, std::move(c)));
  return {std::move(inst), std::move(r)};
}

}  // namespace ncinterp
