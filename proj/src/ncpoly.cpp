#include "ncinterp/ncpoly.hpp"

#include "ncinterp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ncinterp {

NcPoly::NcPoly(int n_vars, Eigen::Index out_dim, Eigen::Index in_dim, int order)
    : n_vars_(n_vars), out_dim_(out_dim), in_dim_(in_dim), order_(order) {
  if (n_vars < 1) throw InvalidInput("n_vars must be at least 1");
  if (order < 0) throw InvalidInput("truncation order must be non-negative");
  if (out_dim < 1 || in_dim < 1) throw InvalidInput("coefficient dimensions must be positive");
}

NcPoly NcPoly::constant(int n_vars, const Matrix& c, int order) {
  NcPoly p(n_vars, c.rows(), c.cols(), order);
  p.set(Word{}, c);
  return p;
}

NcPoly NcPoly::identity(int n_vars, Eigen::Index d, int order) {
  return constant(n_vars, Matrix::Identity(d, d), order);
}

void NcPoly::check_word(const Word& w) const {
  if (w.max_letter() > n_vars_) throw DimensionError("word \"" + w.to_string() + "\" exceeds n_vars");
  if (static_cast<int>(w.length()) > order_) {
    throw DimensionError("word \"" + w.to_string() + "\" exceeds truncation order " + std::to_string(order_));
  }
}

Matrix NcPoly::coeff(const Word& w) const {
  auto it = coeffs_.find(w);
  return it == coeffs_.end() ? Matrix::Zero(out_dim_, in_dim_) : it->second;
}

void NcPoly::set(const Word& w, const Matrix& c) {
  check_word(w);
  if (c.rows() != out_dim_ || c.cols() != in_dim_) throw DimensionError("coefficient has the wrong shape");
  // exact test; isZero(0.0) squares entries and lets tiny values underflow
  if (!(c.array() != Complex(0.0, 0.0)).any()) {
    coeffs_.erase(w);
  } else {
    coeffs_[w] = c;
  }
}

void NcPoly::add(const Word& w, const Matrix& c) { set(w, coeff(w) + c); }

NcPoly NcPoly::truncated(int order) const {
  NcPoly out(n_vars_, out_dim_, in_dim_, order);
  for (const auto& [w, c] : coeffs_) {
    if (static_cast<int>(w.length()) <= order) out.coeffs_.emplace(w, c);
  }
  return out;
}

NcPoly NcPoly::operator+(const NcPoly& other) const {
  if (other.n_vars_ != n_vars_ || other.out_dim_ != out_dim_ || other.in_dim_ != in_dim_) {
    throw DimensionError("sum of series with different shapes");
  }
  NcPoly out = truncated(std::min(order_, other.order_));
  for (const auto& [w, c] : other.coeffs_) {
    if (static_cast<int>(w.length()) <= out.order_) out.add(w, c);
  }
  return out;
}

NcPoly NcPoly::operator-(const NcPoly& other) const { return *this + other * Complex(-1.0); }

NcPoly NcPoly::operator*(Complex s) const {
  NcPoly out(n_vars_, out_dim_, in_dim_, order_);
  for (const auto& [w, c] : coeffs_) out.set(w, s * c);
  return out;
}

NcPoly NcPoly::left_multiplied(const Matrix& m) const {
  if (m.cols() != out_dim_) throw DimensionError("left factor has the wrong number of columns");
  NcPoly out(n_vars_, m.rows(), in_dim_, order_);
  for (const auto& [w, c] : coeffs_) out.set(w, m * c);
  return out;
}

double NcPoly::max_coeff_distance(const NcPoly& other) const {
  WordSet words;
  for (const auto& [w, c] : coeffs_) words.insert(w);
  for (const auto& [w, c] : other.coeffs_) words.insert(w);
  double worst = 0.0;
  for (const Word& w : words) worst = std::max(worst, spectral_norm(coeff(w) - other.coeff(w)));
  return worst;
}

NcPoly multiply(const NcPoly& a, const NcPoly& b, int order) {
  if (a.n_vars() != b.n_vars()) throw DimensionError("multiply: n_vars mismatch");
  if (a.in_dim() != b.out_dim()) throw DimensionError("multiply: inner coefficient dimensions differ");
  NcPoly out(a.n_vars(), a.out_dim(), b.in_dim(), order);
  std::map<Word, Matrix> acc;
  for (const auto& [u, au] : a.coeffs()) {
    for (const auto& [v, bv] : b.coeffs()) {
      if (static_cast<int>(u.length() + v.length()) > order) continue;
      Word w = concat(u, v);
      auto it = acc.find(w);
      if (it == acc.end()) {
        acc.emplace(std::move(w), au * bv);
      } else {
        it->second += au * bv;
      }
    }
  }
  for (const auto& [w, c] : acc) out.set(w, c);
  return out;
}

NcPoly invert(const NcPoly& f, int order) {
  if (f.out_dim() != f.in_dim()) throw DimensionError("invert: coefficients must be square");
  const Eigen::Index d = f.out_dim();
  Matrix c0_inv;
  try {
    c0_inv = guarded_inverse(f.coeff(Word{}));
  } catch (const SingularError& e) {
    throw SingularError(std::string("invert: constant term is not invertible: ") + e.what());
  }
  // g = I - f_∅⁻¹ f has no constant term, so g^k only holds words of length ≥ k
  const NcPoly g = (NcPoly::identity(f.n_vars(), d, order) - f.truncated(order).left_multiplied(c0_inv));
  const NcPoly tail = NcPoly::constant(f.n_vars(), c0_inv, order);
  NcPoly result = tail;
  NcPoly term = tail;
  for (int k = 1; k <= order; ++k) {
    term = multiply(g, term, order);
    result = result + term;
  }
  return result;
}

NcPoly cayley_h_to_s(const NcPoly& f, int order) {
  if (f.out_dim() != f.in_dim()) throw DimensionError("cayley: coefficients must be square");
  const NcPoly id = NcPoly::identity(f.n_vars(), f.out_dim(), order);
  const NcPoly ft = f.truncated(order);
  NcPoly denominator_inv = [&] {
    try {
      return invert(ft + id, order);
    } catch (const SingularError&) {
      throw SingularError("cayley_h_to_s: f_∅ + I is not invertible");
    }
  }();
  return multiply(ft - id, denominator_inv, order);
}

NcPoly cayley_s_to_h(const NcPoly& big_f, int order) {
  if (big_f.out_dim() != big_f.in_dim()) throw DimensionError("cayley: coefficients must be square");
  const NcPoly id = NcPoly::identity(big_f.n_vars(), big_f.out_dim(), order);
  const NcPoly ft = big_f.truncated(order);
  NcPoly denominator_inv = [&] {
    try {
      return invert(id - ft, order);
    } catch (const SingularError&) {
      throw SingularError("cayley_s_to_h: I - F_∅ is not invertible");
    }
  }();
  return multiply(id + ft, denominator_inv, order);
}

namespace {

void check_eval_shapes(const NcPoly& p, const MatrixTuple& t) {
  if (p.n_vars() != t.n_vars()) throw DimensionError("evaluation: n_vars mismatch");
  if (p.out_dim() * t.dim() > kMaxEvalDim || p.in_dim() * t.dim() > kMaxEvalDim) {
    throw ResourceError("evaluation result exceeds " + std::to_string(kMaxEvalDim) + " rows");
  }
}

WordSet support(const NcPoly& p) {
  WordSet words;
  for (const auto& [w, c] : p.coeffs()) {
    // include prefixes so powers() can share products
    Word prefix = w;
    while (true) {
      words.insert(prefix);
      if (prefix.is_empty()) break;
      prefix = prefix.drop_last();
    }
  }
  return words;
}

}  // namespace

Matrix eval_right(const NcPoly& p, const MatrixTuple& t) {
  check_eval_shapes(p, t);
  Matrix out = Matrix::Zero(p.out_dim() * t.dim(), p.in_dim() * t.dim());
  const auto powers = t.powers(support(p));
  for (const auto& [w, c] : p.coeffs()) out += kron(c, powers.at(w));
  return out;
}

Matrix eval_left(const NcPoly& p, const MatrixTuple& t) {
  check_eval_shapes(p, t);
  Matrix out = Matrix::Zero(p.out_dim() * t.dim(), p.in_dim() * t.dim());
  const auto powers = t.powers(support(p));
  for (const auto& [w, c] : p.coeffs()) out += kron(powers.at(w), c);
  return out;
}

HermitianData::HermitianData(AdmissibleSet lambda, Eigen::Index dim, std::map<Word, Matrix> coeffs)
    : lambda_(std::move(lambda)), dim_(dim), coeffs_(std::move(coeffs)) {
  if (dim_ < 1) throw InvalidInput("coefficient dimension must be positive");
  for (const auto& [w, c] : coeffs_) {
    if (!lambda_.contains(w)) throw InvalidInput("coefficient key \"" + w.to_string() + "\" is not in Lambda");
    if (c.rows() != dim_ || c.cols() != dim_) {
      throw InvalidInput("coefficient \"" + w.to_string() + "\" is not " + std::to_string(dim_) + "x" +
                         std::to_string(dim_));
    }
  }
  const Matrix c0 = coeff(Word{});
  if ((c0 - c0.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidInput("c_{} must be self-adjoint");
  }
}

Matrix HermitianData::coeff(const Word& w) const {
  auto it = coeffs_.find(w);
  return it == coeffs_.end() ? Matrix::Zero(dim_, dim_) : it->second;
}

NcPoly HermitianData::analytic_part() const {
  NcPoly p(n_vars(), dim_, dim_, static_cast<int>(lambda_.max_length()));
  for (const auto& [w, c] : coeffs_) p.set(w, w.is_empty() ? Matrix(0.5 * c) : c);
  return p;
}

Matrix herm_eval(const HermitianData& data, const MatrixTuple& t) {
  if (data.n_vars() != t.n_vars()) throw DimensionError("herm_eval: n_vars mismatch");
  const Eigen::Index n = t.dim();
  if (data.dim() * n > kMaxEvalDim) throw ResourceError("herm_eval result too large");
  Matrix out = kron(data.coeff(Word{}), Matrix::Identity(n, n));
  const auto powers = t.powers(data.lambda().words());
  for (const auto& [w, c] : data.coeffs()) {
    if (w.is_empty()) continue;
    const Matrix term = kron(c, powers.at(w));
    out += term + term.adjoint();
  }
  // c_∅ is hermitian only to 1e-12; symmetrize so the result is exactly self-adjoint
  return 0.5 * (out + out.adjoint());
}

std::map<Word, Matrix> extract_coefficients(const TupleEvaluator& evaluate, const AdmissibleSet& lambda,
                                            Eigen::Index out_dim, Eigen::Index in_dim) {
  const MatrixTuple shift = shift_tuple(lambda);
  const Eigen::Index n = shift.dim();
  const int m = static_cast<int>(lambda.max_length());
  const int points = m + 1;

  std::vector<Complex> nodes;
  std::vector<Matrix> values;
  for (int j = 0; j < points; ++j) {
    const Complex lambda_j = std::polar(0.9, 2.0 * std::numbers::pi * j / points);
    nodes.push_back(lambda_j);
    Matrix v = evaluate(shift.scaled(lambda_j));
    if (v.rows() != out_dim * n || v.cols() != in_dim * n) {
      throw DimensionError("extract_coefficients: callback returned " + std::to_string(v.rows()) + "x" +
                           std::to_string(v.cols()) + ", expected " + std::to_string(out_dim * n) + "x" +
                           std::to_string(in_dim * n));
    }
    values.push_back(std::move(v));
  }

  // Vandermonde system V r = values, V(j, k) = λ_j^k
  Matrix vandermonde(points, points);
  for (int j = 0; j < points; ++j) {
    for (int k = 0; k < points; ++k) vandermonde(j, k) = std::pow(nodes[j], k);
  }
  const Matrix vinv = guarded_inverse(vandermonde);
  std::vector<Matrix> homogeneous(static_cast<std::size_t>(points),
                                  Matrix::Zero(out_dim * n, in_dim * n));
  for (int k = 0; k < points; ++k) {
    for (int j = 0; j < points; ++j) homogeneous[static_cast<std::size_t>(k)] += vinv(k, j) * values[static_cast<std::size_t>(j)];
  }

  // Σ_{|w| = k} p_w ⊗ S^w applied to (u ⊗ v) equals p_v u ⊗ ∅
  const auto empty_index = static_cast<Eigen::Index>(*lambda.index_of(Word{}));
  std::map<Word, Matrix> out;
  for (const Word& v : lambda.words()) {
    const auto vi = static_cast<Eigen::Index>(*lambda.index_of(v));
    const Matrix& r = homogeneous[v.length()];
    Matrix c(out_dim, in_dim);
    for (Eigen::Index i = 0; i < out_dim; ++i) {
      for (Eigen::Index j = 0; j < in_dim; ++j) c(i, j) = r(i * n + empty_index, j * n + vi);
    }
    out.emplace(v, std::move(c));
  }
  return out;
}

}  // namespace ncinterp
