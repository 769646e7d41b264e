#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ncinterp/criteria.hpp"
#include "ncinterp/linalg.hpp"
#include "ncinterp/ncpoly.hpp"
#include "ncinterp/tuples.hpp"
#include "ncinterp/words.hpp"

namespace ncinterp {

/// Moment realization c_w = V* G^w V with G in G_N and V an isometry.
class HerglotzRealization {
 public:
  /// Throws InvalidInput unless V*V = I (1e-12) and G passes check_gn (1e-10).
  HerglotzRealization(MatrixTuple g, Matrix v);

  const MatrixTuple& g() const { return g_; }
  const Matrix& v() const { return v_; }
  int n_vars() const { return g_.n_vars(); }
  Eigen::Index state_dim() const { return g_.dim(); }
  Eigen::Index out_dim() const { return v_.cols(); }

 private:
  MatrixTuple g_;
  Matrix v_;
};

/// Unitary colligation [[A, B], [C, D]] with a resolution of identity P on
/// the state space.
class Colligation {
 public:
  /// Throws InvalidInput unless the block matrix is unitary (1e-10) and the
  /// P_k are mutually orthogonal projections summing to I (1e-12).
  Colligation(Matrix a, Matrix b, Matrix c, Matrix d, std::vector<Matrix> p);

  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  const Matrix& c() const { return c_; }
  const Matrix& d() const { return d_; }
  const std::vector<Matrix>& p() const { return p_; }
  int n_vars() const { return static_cast<int>(p_.size()); }

 private:
  Matrix a_, b_, c_, d_;
  std::vector<Matrix> p_;
};

/// c_w = V* G^w V for w ∈ Λ.
std::map<Word, Matrix> moments(const HerglotzRealization& r, const AdmissibleSet& lambda);

/// f_∅ = I/2 and f_w = V* G^w V for 0 < |w| ≤ order: the expansion of
/// (1/2) V*(I + zG)(I - zG)⁻¹V. Multiply by 2 for the normalization f_∅ = I.
NcPoly herglotz_coeffs(const HerglotzRealization& r, int order);

/// F_∅ = D, F_w = C P_{i1}A P_{i2}A ··· P_{im-1}A P_{im} B. No unitarity
/// requirement on the blocks.
NcPoly transfer_series(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d,
                       const std::vector<Matrix>& p, int order);

NcPoly transfer_coeffs(const Colligation& col, int order);

/// For D = 0 and C a coisometry: G_k = P_k(A + BC), V = C*. The transfer
/// series of (A + BC, 2B, C, I, P) is then twice herglotz_coeffs of the result.
HerglotzRealization diagonal_transform(const Colligation& col);

/// Random colligation with D = 0: X Haar unitary, B a random isometry,
/// C = B*X, A = (I - BB*)X, and P_k coordinate projections of a random
/// orthonormal basis. A + BC = X. Needs state_dim ≥ max(n_vars, out_dim).
Colligation random_colligation(Eigen::Index state_dim, Eigen::Index out_dim, int n_vars, std::uint64_t seed);

struct GeneratedInstance {
  CaratheodoryInstance instance;
  HerglotzRealization realization;
};

/// G = random_gn(dim_h, N), V a random isometry; emits c_w = V*G^wV on Λ, a
/// feasible instance whose realization is kept as certificate.
GeneratedInstance gen_feasible_instance(int n_vars, const AdmissibleSet& lambda, Eigen::Index dim_h,
                                        Eigen::Index dim_y, std::uint64_t seed);

}  // namespace ncinterp
