#include "ncinterp/tuples.hpp"

#include "ncinterp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

namespace ncinterp {

MatrixTuple::MatrixTuple(std::vector<Matrix> mats) : mats_(std::move(mats)) {
  if (mats_.empty()) throw DimensionError("a matrix tuple needs at least one matrix");
  dim_ = mats_.front().rows();
  for (const Matrix& m : mats_) {
    if (m.rows() != dim_ || m.cols() != dim_) {
      throw DimensionError("tuple matrices must be square of one common size");
    }
  }
}

MatrixTuple MatrixTuple::zero(int n_vars, Eigen::Index dim) {
  if (n_vars < 1) throw DimensionError("n_vars must be at least 1");
  return MatrixTuple(std::vector<Matrix>(static_cast<std::size_t>(n_vars), Matrix::Zero(dim, dim)));
}

Matrix MatrixTuple::power(const Word& w) const {
  if (w.max_letter() > n_vars()) throw DimensionError("word letter exceeds tuple size");
  Matrix out = Matrix::Identity(dim_, dim_);
  for (int k : w.letters()) out = out * letter(k);
  return out;
}

std::map<Word, Matrix> MatrixTuple::powers(const WordSet& words) const {
  // Canonical order lists every prefix of a word before the word itself only
  // when the set is prefix-closed; fall back to direct products otherwise.
  std::map<Word, Matrix> out;
  for (const Word& w : words) {
    if (w.is_empty()) {
      out.emplace(w, Matrix::Identity(dim_, dim_));
      continue;
    }
    if (w.max_letter() > n_vars()) throw DimensionError("word letter exceeds tuple size");
    auto prefix = out.find(w.drop_last());
    if (prefix != out.end()) {
      out.emplace(w, prefix->second * letter(w.letters().back()));
    } else {
      out.emplace(w, power(w));
    }
  }
  return out;
}

MatrixTuple MatrixTuple::conjugated(const Matrix& u) const {
  std::vector<Matrix> out;
  out.reserve(mats_.size());
  for (const Matrix& m : mats_) out.push_back(u.adjoint() * m * u);
  return MatrixTuple(std::move(out));
}

MatrixTuple MatrixTuple::adjoint() const {
  std::vector<Matrix> out;
  for (const Matrix& m : mats_) out.push_back(m.adjoint());
  return MatrixTuple(std::move(out));
}

MatrixTuple MatrixTuple::scaled(Complex factor) const {
  std::vector<Matrix> out;
  for (const Matrix& m : mats_) out.push_back(factor * m);
  return MatrixTuple(std::move(out));
}

namespace {

void finish(ClassReport& r) {
  r.worst_residual = 0.0;
  for (const auto& [name, value] : r.detail) r.worst_residual = std::max(r.worst_residual, value);
  r.verdict = r.worst_residual <= r.tolerance;
}

}  // namespace

ClassReport check_contractive(const MatrixTuple& t, double tol, bool strict) {
  ClassReport r{strict ? "D^N" : "C^N", false, 0.0, tol, {}};
  for (int k = 1; k <= t.n_vars(); ++k) {
    const double norm = spectral_norm(t.letter(k));
    // residual is how far the norm exceeds the admissible bound 1 (resp. 1 - 2 tol)
    const double excess = strict ? norm - 1.0 + 2.0 * tol : norm - 1.0;
    r.detail.emplace_back("norm(T_" + std::to_string(k) + ") - 1", std::max(0.0, excess));
  }
  finish(r);
  return r;
}

ClassReport check_gn(const MatrixTuple& g, double tol, std::uint64_t seed, int zeta_samples) {
  ClassReport r{"G_N", false, 0.0, tol, {}};
  const Eigen::Index n = g.dim();
  const Matrix id = Matrix::Identity(n, n);
  Matrix sum_left = Matrix::Zero(n, n);
  Matrix sum_right = Matrix::Zero(n, n);
  double cross_left = 0.0;
  double cross_right = 0.0;
  for (int k = 1; k <= g.n_vars(); ++k) {
    sum_left += g.letter(k).adjoint() * g.letter(k);
    sum_right += g.letter(k) * g.letter(k).adjoint();
    for (int j = 1; j <= g.n_vars(); ++j) {
      if (j == k) continue;
      cross_left = std::max(cross_left, spectral_norm(g.letter(k).adjoint() * g.letter(j)));
      cross_right = std::max(cross_right, spectral_norm(g.letter(k) * g.letter(j).adjoint()));
    }
  }
  r.detail.emplace_back("sum G_k* G_k - I", spectral_norm(sum_left - id));
  r.detail.emplace_back("G_k* G_j (k != j)", cross_left);
  r.detail.emplace_back("sum G_k G_k* - I", spectral_norm(sum_right - id));
  r.detail.emplace_back("G_k G_j* (k != j)", cross_right);
  finish(r);

  Rng rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  double zeta_defect = 0.0;
  for (int s = 0; s < zeta_samples; ++s) {
    std::vector<Complex> zeta;
    for (int k = 0; k < g.n_vars(); ++k) zeta.push_back(std::polar(1.0, angle(rng)));
    const Matrix p = linear_pencil(zeta, g);
    zeta_defect = std::max({zeta_defect, spectral_norm(p.adjoint() * p - id), spectral_norm(p * p.adjoint() - id)});
  }
  r.detail.emplace_back("zeta-pencil unitarity (sampled)", zeta_defect);
  return r;
}

ClassReport check_unitary_tuple(const MatrixTuple& u, double tol) {
  ClassReport r{"U^N", false, 0.0, tol, {}};
  const Matrix id = Matrix::Identity(u.dim(), u.dim());
  for (int k = 1; k <= u.n_vars(); ++k) {
    const Matrix& m = u.letter(k);
    r.detail.emplace_back("U_" + std::to_string(k) + "* U_" + std::to_string(k) + " - I",
                          spectral_norm(m.adjoint() * m - id));
    r.detail.emplace_back("U_" + std::to_string(k) + " U_" + std::to_string(k) + "* - I",
                          spectral_norm(m * m.adjoint() - id));
  }
  finish(r);
  return r;
}

ClassReport check_lambda_nilpotent(const MatrixTuple& t, const AdmissibleSet& lambda, double tol) {
  if (t.n_vars() != lambda.n_vars()) throw DimensionError("tuple and word set disagree on n_vars");
  ClassReport r{"Nilp_N(Lambda)", false, 0.0, tol, {}};
  if (lambda.empty()) {
    // every word lies outside the empty set, including ∅ itself
    r.detail.emplace_back("norm(T^{})", t.dim() > 0 ? 1.0 : 0.0);
  }
  for (const Word& b : boundary(lambda)) {
    r.detail.emplace_back("norm(T^{" + b.to_string() + "})", spectral_norm(t.power(b)));
  }
  finish(r);
  return r;
}

MatrixTuple weighted_shift(const AdmissibleSet& lambda, const std::map<Word, Matrix>& weights,
                           Eigen::Index block) {
  if (lambda.empty()) throw InvalidInput("shift on an empty word set");
  const Eigen::Index n = static_cast<Eigen::Index>(lambda.size()) * block;
  std::vector<Matrix> mats(static_cast<std::size_t>(lambda.n_vars()), Matrix::Zero(n, n));
  for (const Word& w : lambda.words()) {
    if (w.is_empty()) continue;
    auto it = weights.find(w);
    if (it == weights.end()) continue;
    if (it->second.rows() != block || it->second.cols() != block) {
      throw DimensionError("shift weight for \"" + w.to_string() + "\" has the wrong block size");
    }
    const auto from = static_cast<Eigen::Index>(*lambda.index_of(w));
    const auto to = static_cast<Eigen::Index>(*lambda.index_of(w.drop_last()));
    const auto k = static_cast<std::size_t>(w.letters().back() - 1);
    mats[k].block(to * block, from * block, block, block) = it->second;
  }
  return MatrixTuple(std::move(mats));
}

MatrixTuple shift_tuple(const AdmissibleSet& lambda) {
  std::map<Word, Matrix> ones;
  for (const Word& w : lambda.words()) ones.emplace(w, Matrix::Identity(1, 1));
  return weighted_shift(lambda, ones, 1);
}

namespace {

// Orthonormal basis of the cyclic subspace span{T^w v : w ∈ Λ} for the
// columns v of `seed_vectors`.
Matrix cyclic_basis(const MatrixTuple& t, const AdmissibleSet& lambda, const Matrix& seed_vectors) {
  const auto powers = t.powers(lambda.words());
  Matrix krylov(t.dim(), static_cast<Eigen::Index>(powers.size()) * seed_vectors.cols());
  Eigen::Index col = 0;
  for (const auto& [w, p] : powers) {
    krylov.middleCols(col, seed_vectors.cols()) = p * seed_vectors;
    col += seed_vectors.cols();
  }
  // rank-revealing QR; pivots below 1e-10 of the largest count as zero
  Eigen::ColPivHouseholderQR<Matrix> qr(krylov);
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();
  return Matrix(qr.householderQ()).leftCols(rank);
}

void rescale_contractive(std::vector<Matrix>& mats, double boundary_prob, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (Matrix& m : mats) {
    const double norm = spectral_norm(m);
    if (norm <= 0.0) continue;
    const double target = unit(rng) < boundary_prob ? 1.0 : std::max(unit(rng), 1e-3);
    m *= target / norm;
  }
}

// Restriction to the cyclic subspace of a sparse random vector. Returns
// nothing when the numerical rank cut produced a compression rather than an
// invariant restriction.
std::optional<MatrixTuple> restrict_to_cyclic(const MatrixTuple& t, const AdmissibleSet& lambda, Rng& rng) {
  std::uniform_int_distribution<Eigen::Index> count(1, t.dim());
  std::vector<Eigen::Index> coords(static_cast<std::size_t>(t.dim()));
  std::iota(coords.begin(), coords.end(), 0);
  std::shuffle(coords.begin(), coords.end(), rng);
  coords.resize(static_cast<std::size_t>(count(rng)));
  Matrix v = Matrix::Zero(t.dim(), 1);
  const Matrix values = complex_gaussian(static_cast<Eigen::Index>(coords.size()), 1, rng);
  for (std::size_t i = 0; i < coords.size(); ++i) v(coords[i], 0) = values(static_cast<Eigen::Index>(i), 0);
  const Matrix q = cyclic_basis(t, lambda, v);
  std::vector<Matrix> mats;
  double scale = 1.0;
  for (const Matrix& m : t.mats()) {
    Matrix r = q.adjoint() * m * q;
    // rounding leftovers would be blown up to norm 1 by the later rescaling
    if (spectral_norm(r) <= 1e-9 * std::max(1.0, spectral_norm(m))) r.setZero();
    scale = std::max(scale, spectral_norm(r));
    mats.push_back(std::move(r));
  }
  MatrixTuple restricted(std::move(mats));
  const double tol = 1e-13 * std::pow(scale, static_cast<double>(lambda.max_length() + 1));
  if (!check_lambda_nilpotent(restricted, lambda, tol).verdict) return std::nullopt;
  return restricted;
}

MatrixTuple sample_once(const AdmissibleSet& lambda, Rng& rng, const SamplerParams& params,
                        Eigen::Index max_dim) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(params.weight_min, params.weight_max);

  const bool matrix_weights = !params.unit_weights && unit(rng) < params.matrix_weight_prob;
  const Eigen::Index block = matrix_weights ? 2 : 1;
  std::map<Word, Matrix> weights;
  for (const Word& w : lambda.words()) {
    if (w.is_empty()) continue;
    if (params.unit_weights) {
      weights.emplace(w, Matrix::Identity(1, 1));
    } else if (matrix_weights) {
      weights.emplace(w, complex_gaussian(block, block, rng));
    } else {
      weights.emplace(w, Matrix::Constant(1, 1, Complex(weight(rng), 0.0)));
    }
  }
  MatrixTuple t = weighted_shift(lambda, weights, block);

  const bool must_restrict = t.dim() > max_dim;
  if ((must_restrict || unit(rng) < params.restrict_prob) && t.dim() > 1) {
    bool done = false;
    for (int attempt = 0; attempt < 5 && !done; ++attempt) {
      std::optional<MatrixTuple> r = restrict_to_cyclic(t, lambda, rng);
      if (r && r->dim() <= max_dim) {
        t = std::move(*r);
        done = true;
      }
    }
    // the zero tuple is the only member left that surely fits
    if (!done && must_restrict) return MatrixTuple::zero(lambda.n_vars(), 1);
  }

  std::vector<Matrix> mats = t.mats();
  rescale_contractive(mats, params.boundary_prob, rng);
  t = MatrixTuple(std::move(mats));
  if (params.conjugate && t.dim() > 1) t = t.conjugated(random_unitary(t.dim(), rng));
  return t;
}

}  // namespace

MatrixTuple sample_nilpotent(const AdmissibleSet& lambda, std::uint64_t seed, const SamplerParams& params) {
  if (lambda.empty()) throw InvalidInput("sampling on an empty word set");
  if (lambda.size() == 1) return MatrixTuple::zero(lambda.n_vars(), 1);
  const Eigen::Index max_dim =
      params.max_dim > 0 ? params.max_dim : static_cast<Eigen::Index>(lambda.size());
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MatrixTuple t = sample_once(lambda, rng, params, max_dim);
  while (unit(rng) < params.direct_sum_prob) {
    MatrixTuple extra = sample_once(lambda, rng, params, max_dim);
    if (t.dim() + extra.dim() > max_dim) break;
    t = direct_sum(t, extra);
    if (params.conjugate) t = t.conjugated(random_unitary(t.dim(), rng));
  }
  return t;
}

MatrixTuple block_triangular_nilpotent(int n_vars, const std::vector<Eigen::Index>& block_dims,
                                       std::uint64_t seed) {
  if (block_dims.empty()) throw InvalidInput("block_dims must list m + 1 block sizes");
  std::vector<Eigen::Index> offsets{0};
  for (Eigen::Index d : block_dims) {
    if (d < 0) throw InvalidInput("negative block size");
    offsets.push_back(offsets.back() + d);
  }
  const Eigen::Index n = offsets.back();
  Rng rng(seed);
  std::vector<Matrix> mats;
  for (int k = 0; k < n_vars; ++k) {
    Matrix m = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < block_dims.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        m.block(offsets[i], offsets[j], block_dims[i], block_dims[j]) =
            complex_gaussian(block_dims[i], block_dims[j], rng);
      }
    }
    const double norm = spectral_norm(m);
    if (norm > 0.0) m /= norm;
    mats.push_back(std::move(m));
  }
  return MatrixTuple(std::move(mats));
}

MatrixTuple random_gn(Eigen::Index dim, int n_vars, std::uint64_t seed) {
  if (n_vars < 1 || dim < 1) throw InvalidInput("random_gn needs dim >= 1 and n_vars >= 1");
  Rng rng(seed);
  const Matrix g0 = random_unitary(dim, rng);
  const Matrix basis = random_unitary(dim, rng);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::uniform_int_distribution<int> group(0, n_vars - 1);
  std::vector<int> assignment(static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < order.size(); ++i) {
    assignment[static_cast<std::size_t>(order[i])] =
        static_cast<int>(i) < n_vars ? static_cast<int>(i) : group(rng);
  }
  std::vector<Matrix> mats;
  for (int k = 0; k < n_vars; ++k) {
    Matrix projection = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (assignment[static_cast<std::size_t>(i)] == k) projection += basis.col(i) * basis.col(i).adjoint();
    }
    mats.push_back(g0 * projection);
  }
  return MatrixTuple(std::move(mats));
}

MatrixTuple random_unitary_tuple(Eigen::Index dim, int n_vars, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Matrix> mats;
  for (int k = 0; k < n_vars; ++k) mats.push_back(random_unitary(dim, rng));
  return MatrixTuple(std::move(mats));
}

MatrixTuple random_contractive(Eigen::Index dim, int n_vars, std::uint64_t seed, double radius) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Matrix> mats;
  for (int k = 0; k < n_vars; ++k) {
    Matrix m = complex_gaussian(dim, dim, rng);
    const double norm = spectral_norm(m);
    const double target = radius * std::max(unit(rng), 1e-3);
    if (norm > 0.0) m *= target / norm;
    mats.push_back(std::move(m));
  }
  return MatrixTuple(std::move(mats));
}

MatrixTuple schur_tensor(const MatrixTuple& x, const MatrixTuple& y) {
  if (x.n_vars() != y.n_vars()) throw DimensionError("schur_tensor: n_vars mismatch");
  std::vector<Matrix> mats;
  for (int k = 1; k <= x.n_vars(); ++k) mats.push_back(kron(x.letter(k), y.letter(k)));
  return MatrixTuple(std::move(mats));
}

Matrix tensor_pencil(const MatrixTuple& x, const MatrixTuple& y) {
  if (x.n_vars() != y.n_vars()) throw DimensionError("tensor_pencil: n_vars mismatch");
  Matrix out = Matrix::Zero(x.dim() * y.dim(), x.dim() * y.dim());
  for (int k = 1; k <= x.n_vars(); ++k) out += kron(x.letter(k), y.letter(k));
  return out;
}

Matrix linear_pencil(const std::vector<Complex>& zeta, const MatrixTuple& g) {
  if (static_cast<int>(zeta.size()) != g.n_vars()) throw DimensionError("linear_pencil: n_vars mismatch");
  Matrix out = Matrix::Zero(g.dim(), g.dim());
  for (int k = 1; k <= g.n_vars(); ++k) out += zeta[static_cast<std::size_t>(k - 1)] * g.letter(k);
  return out;
}

MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y) {
  if (x.n_vars() != y.n_vars()) throw DimensionError("direct_sum: n_vars mismatch");
  const Eigen::Index n = x.dim() + y.dim();
  std::vector<Matrix> mats;
  for (int k = 1; k <= x.n_vars(); ++k) {
    Matrix m = Matrix::Zero(n, n);
    m.topLeftCorner(x.dim(), x.dim()) = x.letter(k);
    m.bottomRightCorner(y.dim(), y.dim()) = y.letter(k);
    mats.push_back(std::move(m));
  }
  return MatrixTuple(std::move(mats));
}

}  // namespace ncinterp
