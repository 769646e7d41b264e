#include "ncinterp/linalg.hpp"

#include "ncinterp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ncinterp {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const double fro = m.norm();
  if (fro == 0.0 || !std::isfinite(fro)) return fro;
  // σ₁² is the top eigenvalue of the smaller Gram matrix; the Frobenius
  // scaling keeps it away from overflow. Accurate to about eps relative to σ₁.
  const Matrix x = m / fro;
  const Matrix gram = x.rows() <= x.cols() ? Matrix(x * x.adjoint()) : Matrix(x.adjoint() * x);
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  return fro * std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double min_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return hermitian_eigenvalues(m)(0);
}

Matrix guarded_inverse(const Matrix& m, double max_cond) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  if (m.size() == 0) return m;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0) || smax / smin > max_cond) {
    throw SingularError("matrix is singular to working precision (condition number " +
                        std::to_string(smin > 0.0 ? smax / smin : INFINITY) + ")");
  }
  return m.partialPivLu().inverse();
}

namespace {

Matrix psd_power(const Matrix& m, double exponent) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  RealVector ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < 0.0) ev(i) = 0.0;
    if (exponent < 0.0 && ev(i) == 0.0) throw SingularError("inverse square root of a singular matrix");
    ev(i) = std::pow(ev(i), exponent);
  }
  const Matrix& q = es.eigenvectors();
  return q * ev.cast<Complex>().asDiagonal() * q.adjoint();
}

}  // namespace

Matrix psd_sqrt(const Matrix& m) { return psd_power(m, 0.5); }

Matrix psd_inverse_sqrt(const Matrix& m) { return psd_power(m, -0.5); }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = dist(rng);
      const double im = dist(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

Matrix random_unitary(Eigen::Index n, Rng& rng) {
  const Matrix z = complex_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0 ? d / a : Complex(1.0));
  }
  return q;
}

Matrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  return random_unitary(rows, rng).leftCols(cols);
}

}  // namespace ncinterp
