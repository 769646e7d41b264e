#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ncinterp/linalg.hpp"
#include "ncinterp/words.hpp"

namespace ncinterp {

/// N square complex matrices of a common dimension.
class MatrixTuple {
 public:
  MatrixTuple() = default;
  /// Throws DimensionError when the matrices are not square of one size.
  explicit MatrixTuple(std::vector<Matrix> mats);

  static MatrixTuple zero(int n_vars, Eigen::Index dim);

  int n_vars() const { return static_cast<int>(mats_.size()); }
  Eigen::Index dim() const { return dim_; }
  const std::vector<Matrix>& mats() const& { return mats_; }
  std::vector<Matrix> mats() && { return std::move(mats_); }

  /// 0-based access.
  const Matrix& operator[](std::size_t k) const { return mats_[k]; }
  Matrix& operator[](std::size_t k) { return mats_[k]; }
  /// 1-based access by generator letter.
  const Matrix& letter(int k) const { return mats_.at(static_cast<std::size_t>(k - 1)); }

  /// T^w = T_{i1} ... T_{im}; T^∅ = I.
  Matrix power(const Word& w) const;

  /// T^w for every word of `words`, sharing prefixes.
  std::map<Word, Matrix> powers(const WordSet& words) const;

  /// (U* T_1 U, ..., U* T_N U).
  MatrixTuple conjugated(const Matrix& u) const;
  MatrixTuple adjoint() const;
  MatrixTuple scaled(Complex factor) const;

 private:
  Eigen::Index dim_ = 0;
  std::vector<Matrix> mats_;
};

/// Outcome of a residual-based class-membership test.
struct ClassReport {
  std::string class_name;
  bool verdict = false;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  std::vector<std::pair<std::string, double>> detail;
};

inline constexpr double kDefaultClassTol = 1e-8;

/// C^N: every ‖T_k‖ ≤ 1 + tol. With `strict`, D^N: every ‖T_k‖ ≤ 1 - tol.
ClassReport check_contractive(const MatrixTuple& t, double tol = kDefaultClassTol, bool strict = false);

/// G_N via the four operator identities
///   Σ G_k*G_k = I,  G_k*G_j = 0,  Σ G_kG_k* = I,  G_kG_j* = 0   (k ≠ j).
/// The report also records the worst unitarity defect of ζ·G over
/// `zeta_samples` random points of the torus; that figure is informational and
/// does not enter the verdict.
ClassReport check_gn(const MatrixTuple& g, double tol = kDefaultClassTol, std::uint64_t seed = 0,
                     int zeta_samples = 10);

/// U^N: every U_k unitary.
ClassReport check_unitary_tuple(const MatrixTuple& u, double tol = kDefaultClassTol);

/// Nilp_N(Λ): ‖T^b‖ ≤ tol for every boundary word b of Λ.
ClassReport check_lambda_nilpotent(const MatrixTuple& t, const AdmissibleSet& lambda,
                                   double tol = kDefaultClassTol);

/// Backward shifts on the space with orthonormal basis Λ:
/// S_k w = w' when w = w' g_k, and 0 otherwise.
MatrixTuple shift_tuple(const AdmissibleSet& lambda);

/// Shift with matrix weights: the basis vector of each word is replaced by a
/// block of size `block`, and the block edge w → w' (w = w' g_k) carries
/// weights.at(w) (block × block). Words absent from `weights` get weight 0.
MatrixTuple weighted_shift(const AdmissibleSet& lambda, const std::map<Word, Matrix>& weights,
                           Eigen::Index block = 1);

/// Tuning for sample_nilpotent.
struct SamplerParams {
  /// Dimension cap; 0 means #Λ.
  Eigen::Index max_dim = 0;
  /// Scalar edge weights are drawn uniformly from [weight_min, weight_max].
  double weight_min = 0.0;
  double weight_max = 2.0;
  /// Replace every weight with 1 (and ignore matrix weights).
  bool unit_weights = false;
  /// Probability of 2×2 complex Gaussian block weights instead of scalars.
  double matrix_weight_prob = 0.2;
  /// Probability of restricting to the cyclic subspace of a sparse random vector.
  double restrict_prob = 0.75;
  /// Conjugate by a Haar unitary.
  bool conjugate = true;
  /// Probability of direct-summing with a second independent sample.
  double direct_sum_prob = 0.15;
  /// Probability of rescaling every nonzero T_k to norm exactly 1 (otherwise
  /// to a uniform random norm in (0, 1]).
  double boundary_prob = 0.8;
};

/// Random member of C^N ∩ Nilp_N(Λ): a weighted shift, optionally restricted
/// to an invariant subspace, rescaled per matrix to be contractive, conjugated
/// by a random unitary and direct-summed with another sample.
///
/// Coverage caveat: the family reaches every Λ-nilpotent tuple only up to
/// similarity, so it is a search space, not a parameterization.
MatrixTuple sample_nilpotent(const AdmissibleSet& lambda, std::uint64_t seed,
                             const SamplerParams& params = {});

/// Strictly lower block-triangular tuple for the block sizes `block_dims`
/// (m + 1 entries), member of C^N ∩ Nilp_N(Λ_m).
MatrixTuple block_triangular_nilpotent(int n_vars, const std::vector<Eigen::Index>& block_dims,
                                       std::uint64_t seed);

/// G_k = G⁰ P_k with G⁰ Haar unitary and P_k coordinate projections of a random
/// orthonormal basis split into N groups (non-empty when dim ≥ N).
MatrixTuple random_gn(Eigen::Index dim, int n_vars, std::uint64_t seed);

/// N independent Haar unitaries.
MatrixTuple random_unitary_tuple(Eigen::Index dim, int n_vars, std::uint64_t seed);

/// N complex Gaussian matrices rescaled to norms drawn from (0, radius].
MatrixTuple random_contractive(Eigen::Index dim, int n_vars, std::uint64_t seed, double radius = 1.0);

/// (X_1 ⊗ Y_1, ..., X_N ⊗ Y_N).
MatrixTuple schur_tensor(const MatrixTuple& x, const MatrixTuple& y);

/// Σ_k X_k ⊗ Y_k.
Matrix tensor_pencil(const MatrixTuple& x, const MatrixTuple& y);

/// ζ·G = Σ_k ζ_k G_k.
Matrix linear_pencil(const std::vector<Complex>& zeta, const MatrixTuple& g);

/// Block-diagonal (X_k ⊕ Y_k).
MatrixTuple direct_sum(const MatrixTuple& x, const MatrixTuple& y);

}  // namespace ncinterp
