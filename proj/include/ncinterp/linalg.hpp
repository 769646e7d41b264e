#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>

namespace ncinterp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

/// Condition-number bound past which an inverse is refused.
inline constexpr double kMaxConditionNumber = 1e12;

/// Kronecker product a ⊗ b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// Smallest eigenvalue of the hermitian part (m + m*)/2.
double min_eigenvalue(const Matrix& m);

/// Eigenvalues of the hermitian part, ascending.
RealVector hermitian_eigenvalues(const Matrix& m);

/// Inverse of a square matrix. Throws SingularError when the 2-norm
/// condition number exceeds `max_cond`.
Matrix guarded_inverse(const Matrix& m, double max_cond = kMaxConditionNumber);

/// Positive square root and inverse square root of a hermitian PSD matrix.
Matrix psd_sqrt(const Matrix& m);
Matrix psd_inverse_sqrt(const Matrix& m);

/// Mixes a base seed with a stream index into an independent sub-seed
/// (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Matrix with i.i.d. standard complex Gaussian entries.
Matrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal absorbed into Q.
Matrix random_unitary(Eigen::Index n, Rng& rng);

/// First `cols` columns of a Haar unitary of size `rows`.
Matrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng);

}  // namespace ncinterp
