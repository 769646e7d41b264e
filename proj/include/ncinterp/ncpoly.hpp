#pragma once

#include <functional>
#include <map>
#include <utility>

#include "ncinterp/linalg.hpp"
#include "ncinterp/tuples.hpp"
#include "ncinterp/words.hpp"

namespace ncinterp {

/// Truncated non-commutative series Σ_w f_w z^w with d_Y × d_U matrix
/// coefficients. Only nonzero coefficients are stored; a coefficient is
/// dropped only when it is exactly zero.
class NcPoly {
 public:
  NcPoly(int n_vars, Eigen::Index out_dim, Eigen::Index in_dim, int order);

  /// Constant series c (z-independent).
  static NcPoly constant(int n_vars, const Matrix& c, int order);
  /// Identity constant series of size d.
  static NcPoly identity(int n_vars, Eigen::Index d, int order);

  int n_vars() const { return n_vars_; }
  Eigen::Index out_dim() const { return out_dim_; }
  Eigen::Index in_dim() const { return in_dim_; }
  int order() const { return order_; }
  const std::map<Word, Matrix>& coeffs() const& { return coeffs_; }
  std::map<Word, Matrix> coeffs() && { return std::move(coeffs_); }

  /// Coefficient at w (zero matrix when absent).
  Matrix coeff(const Word& w) const;
  /// Sets the coefficient; words longer than the order are rejected.
  void set(const Word& w, const Matrix& c);
  void add(const Word& w, const Matrix& c);

  /// Same coefficients with a different truncation order (longer terms dropped).
  NcPoly truncated(int order) const;

  NcPoly operator+(const NcPoly& other) const;
  NcPoly operator-(const NcPoly& other) const;
  NcPoly operator*(Complex s) const;
  /// Left multiplication of every coefficient by a constant matrix.
  NcPoly left_multiplied(const Matrix& m) const;

  /// Largest coefficient-wise spectral-norm difference (absent = zero).
  double max_coeff_distance(const NcPoly& other) const;

 private:
  void check_word(const Word& w) const;

  int n_vars_;
  Eigen::Index out_dim_;
  Eigen::Index in_dim_;
  int order_;
  std::map<Word, Matrix> coeffs_;
};

/// Product (ab)_w = Σ_{uv = w} a_u b_v, kept for |w| ≤ order.
NcPoly multiply(const NcPoly& a, const NcPoly& b, int order);

/// Inverse series Σ_k (I - f_∅⁻¹ f)^k f_∅⁻¹ truncated at `order`.
/// Throws SingularError when f_∅ is singular or badly conditioned.
NcPoly invert(const NcPoly& f, int order);

/// F = (f - I)(f + I)⁻¹.
NcPoly cayley_h_to_s(const NcPoly& f, int order);

/// h = (I + F)(I - F)⁻¹.
NcPoly cayley_s_to_h(const NcPoly& big_f, int order);

/// Σ_w p_w ⊗ T^w.
Matrix eval_right(const NcPoly& p, const MatrixTuple& t);

/// Σ_w T^w ⊗ p_w.
Matrix eval_left(const NcPoly& p, const MatrixTuple& t);

/// Rows cap on evaluation results.
inline constexpr Eigen::Index kMaxEvalDim = 4096;

/// Self-adjoint problem data {c_w}_{w ∈ Λ}. The starred half of the
/// hermitian polynomial is implicit: the coefficient of z^{*w} is c_w*.
class HermitianData {
 public:
  /// Throws InvalidInput when a key lies outside Λ, shapes disagree, or c_∅
  /// is not self-adjoint within 1e-12.
  HermitianData(AdmissibleSet lambda, Eigen::Index dim, std::map<Word, Matrix> coeffs);

  const AdmissibleSet& lambda() const { return lambda_; }
  int n_vars() const { return lambda_.n_vars(); }
  Eigen::Index dim() const { return dim_; }
  const std::map<Word, Matrix>& coeffs() const& { return coeffs_; }
  std::map<Word, Matrix> coeffs() && { return std::move(coeffs_); }
  Matrix coeff(const Word& w) const;

  /// p(z) = c_∅/2 + Σ_{w ≠ ∅} c_w z^w, truncated at max |w| over Λ.
  NcPoly analytic_part() const;

 private:
  AdmissibleSet lambda_;
  Eigen::Index dim_;
  std::map<Word, Matrix> coeffs_;
};

/// c_∅ ⊗ I + Σ_{w ∈ Λ \ ∅} (c_w ⊗ T^w + c_w* ⊗ (T^w)*), i.e. 2 Re p(T).
Matrix herm_eval(const HermitianData& data, const MatrixTuple& t);

using TupleEvaluator = std::function<Matrix(const MatrixTuple&)>;

/// Recovers the coefficients of a polynomial supported on Λ from a black-box
/// right evaluation. The polynomial is evaluated on λ_j S (S the backward
/// shift tuple of Λ) at λ_j = 0.9 e^{2πij/(m+1)}, the homogeneous parts are
/// separated by a Vandermonde solve, and p_v is read off the block of the
/// degree-|v| part mapping basis word v to basis word ∅.
std::map<Word, Matrix> extract_coefficients(const TupleEvaluator& evaluate, const AdmissibleSet& lambda,
                                            Eigen::Index out_dim, Eigen::Index in_dim);

}  // namespace ncinterp
