#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncinterp/linalg.hpp"
#include "ncinterp/ncpoly.hpp"
#include "ncinterp/tuples.hpp"
#include "ncinterp/words.hpp"

namespace ncinterp {

// ---- one variable ---------------------------------------------------------

/// (m+1)×(m+1) shift with ones on the first subdiagonal.
Matrix standard_shift(int m);

/// Block Toeplitz matrix with c_0 on the diagonal, c_k on the k-th block
/// subdiagonal and c_k* on the k-th block superdiagonal.
Matrix build_toeplitz(const std::vector<Matrix>& c);

/// Block lower-triangular Toeplitz matrix with s_k on the k-th block subdiagonal.
Matrix build_schur_matrix(const std::vector<Matrix>& s);

/// λ_min(T_c) ≥ -tol.
bool classical_caratheodory(const std::vector<Matrix>& c, double tol = 1e-8);
/// ‖T_s‖ ≤ 1 + tol.
bool classical_cf(const std::vector<Matrix>& s, double tol = 1e-8);

// ---- instances ------------------------------------------------------------

/// Carathéodory data {c_w}_{w ∈ Λ} with c_∅ ⪰ 0.
class CaratheodoryInstance {
 public:
  /// Throws InvalidInput when λ_min(c_∅) < -1e-10 (besides HermitianData's checks).
  explicit CaratheodoryInstance(HermitianData data);

  const HermitianData& data() const { return data_; }
  const AdmissibleSet& lambda() const { return data_.lambda(); }
  Eigen::Index dim() const { return data_.dim(); }
  int n_vars() const { return data_.n_vars(); }

 private:
  HermitianData data_;
};

/// Carathéodory–Fejér data {s_w}_{w ∈ Λ}, d_Y × d_U.
class CFInstance {
 public:
  CFInstance(AdmissibleSet lambda, Eigen::Index out_dim, Eigen::Index in_dim, std::map<Word, Matrix> coeffs);

  const AdmissibleSet& lambda() const { return lambda_; }
  Eigen::Index out_dim() const { return out_dim_; }
  Eigen::Index in_dim() const { return in_dim_; }
  int n_vars() const { return lambda_.n_vars(); }
  const std::map<Word, Matrix>& coeffs() const& { return coeffs_; }
  std::map<Word, Matrix> coeffs() && { return std::move(coeffs_); }
  Matrix coeff(const Word& w) const;

  /// q(z) = Σ_{w ∈ Λ} s_w z^w.
  NcPoly poly() const;

 private:
  AdmissibleSet lambda_;
  Eigen::Index out_dim_;
  Eigen::Index in_dim_;
  std::map<Word, Matrix> coeffs_;
};

/// c_0, ..., c_m of an N = 1 instance (Λ = Λ_m). Throws InvalidInput otherwise.
std::vector<Matrix> one_variable_sequence(const CaratheodoryInstance& inst);
std::vector<Matrix> one_variable_sequence(const CFInstance& inst);

// ---- search ---------------------------------------------------------------

enum class Verdict { InfeasibleWithWitness, NoViolationFound };

std::string to_string(Verdict v);

struct Budget {
  /// Random samples on top of the deterministic ones (shift, scaled shifts,
  /// extra tuples).
  int samples = 2000;
  /// Largest sampled dimension; 0 means #Λ of the tested set.
  Eigen::Index max_dim = 0;
  /// Hill-climbing iterations per refined candidate.
  int opt_iters = 50;
};

struct CheckOptions {
  Budget budget;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  /// Admissible set whose nilpotent tuples are searched. Defaults to the
  /// instance's own Λ; never widened implicitly.
  std::optional<AdmissibleSet> test_lambda;
  /// Caller-supplied tuples evaluated right after the shifts. Each must be
  /// contractive and nilpotent for the tested set.
  std::vector<MatrixTuple> extra_tuples;
  /// Number of best-scoring samples handed to witness_search.
  int refine_top = 3;
};

struct FeasibilityReport {
  Verdict verdict = Verdict::NoViolationFound;
  std::optional<MatrixTuple> witness;
  /// Carathéodory: smallest λ_min(herm_eval) seen. CF: largest ‖q(T)‖ - 1 seen.
  double violation = 0.0;
  int trials = 0;
  /// Trial index that produced the reported extreme value.
  int witness_trial = -1;
  std::uint64_t seed = 0;
  Budget budget;
  double tol = 0.0;
  double elapsed_seconds = 0.0;
};

/// Violation score of a tuple: larger is worse, positive beyond tol means violated.
using Objective = std::function<double(const MatrixTuple&)>;

/// Local hill climbing over a similarity A and per-matrix scale factors:
/// T_k ↦ σ_k · normalize(A⁻¹ T_k A). Similarity and scaling keep the tuple
/// Λ-nilpotent and the normalization keeps it contractive. Only strict
/// improvements are accepted, so the result never scores below `start`; the
/// start tuple itself is returned when nothing improves.
MatrixTuple witness_search(const Objective& objective, const MatrixTuple& start, const AdmissibleSet& lambda,
                           int iters, double step = 0.25, std::uint64_t seed = 0);

/// Searches contractive Λ-nilpotent tuples for λ_min(herm_eval(c, T)) < -tol.
/// INFEASIBLE verdicts carry a re-validated witness; NO_VIOLATION_FOUND is
/// sampled evidence only.
FeasibilityReport nc_caratheodory_check(const CaratheodoryInstance& inst, const CheckOptions& opts = {});

/// Same search with the objective ‖q(T)‖ - 1.
FeasibilityReport nc_cf_check(const CFInstance& inst, const CheckOptions& opts = {});

/// Scores used by the checks.
double caratheodory_violation(const CaratheodoryInstance& inst, const MatrixTuple& t);
double cf_violation(const CFInstance& inst, const MatrixTuple& t);

// ---- reductions -----------------------------------------------------------

enum class ReductionStatus { Identity, Reduced, DataInconsistent };

struct Reduction {
  ReductionStatus status = ReductionStatus::Identity;
  /// Compressed instance on ran c_∅; empty when c_∅ = 0 (or inconsistent).
  std::optional<CaratheodoryInstance> reduced;
  /// Orthonormal basis of ran c_∅ (d × r).
  Matrix basis;
  /// max over w ≠ ∅ of ‖c_w K‖, ‖c_w* K‖ with K a basis of ker c_∅.
  double kernel_residual = 0.0;
};

/// Compression of a degenerate instance to ran c_∅. Kernel inclusions
/// ker c_∅ ⊆ ker c_w ∩ ker c_w* are required up to √tol.
Reduction reduce_degenerate(const CaratheodoryInstance& inst, double tol = 1e-8);

/// c̃_w = c_∅^{-1/2} c_w c_∅^{-1/2}; requires c_∅ ≻ 0.
CaratheodoryInstance normalize_caratheodory(const CaratheodoryInstance& inst);

/// s̃_w = -U* s_w with s_∅ = U|s_∅| the polar decomposition (square data only).
/// The returned pair holds the new instance and U.
std::pair<CFInstance, Matrix> phase_normalize(const CFInstance& inst);

/// Square embedding into L(U ⊕ Y): s̃_w = [[0, 0], [s_w, 0]].
CFInstance embed_square(const CFInstance& inst);

}  // namespace ncinterp
