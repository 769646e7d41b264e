#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncinterp/errors.hpp"
#include "ncinterp/realization.hpp"

using namespace ncinterp;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("moments examples") {
  const Matrix v = Matrix::Constant(2, 1, 1.0 / std::sqrt(2.0));
  const HerglotzRealization r(MatrixTuple({diag2(1, 0), diag2(0, 1)}), v);
  const auto c = moments(r, lambda_m(2, 2));
  CHECK(std::abs(c.at(Word{})(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(c.at(Word{1})(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(c.at(Word{1, 2})(0, 0)) < 1e-15);
  CHECK(std::abs(c.at(Word{1, 1})(0, 0) - 0.5) < 1e-15);

  const HerglotzRealization zeta(
      MatrixTuple({Matrix::Constant(1, 1, 1.0), Matrix::Zero(1, 1), Matrix::Zero(1, 1)}), Matrix::Identity(1, 1));
  for (const auto& [w, m] : moments(zeta, lambda_m(3, 3))) {
    const bool only_first = std::all_of(w.letters().begin(), w.letters().end(), [](int k) { return k == 1; });
    CHECK(std::abs(m(0, 0) - (only_first ? 1.0 : 0.0)) < 1e-15);
  }

  CHECK_THROWS_AS(HerglotzRealization(MatrixTuple({diag2(1, 0), diag2(0, 1)}), Matrix::Ones(2, 1)), InvalidInput);
  const Matrix half = Matrix::Identity(2, 2) / std::sqrt(2.0);
  CHECK_THROWS_AS(HerglotzRealization(MatrixTuple({half, half}), Matrix::Identity(2, 1)), InvalidInput);
}

TEST_CASE("herglotz_coeffs") {
  const GeneratedInstance g = gen_feasible_instance(2, lambda_m(2, 2), 4, 1, 3);
  const NcPoly f0 = herglotz_coeffs(g.realization, 0);
  CHECK(f0.coeffs().size() == 1);
  CHECK(std::abs(f0.coeff(Word{})(0, 0) - 0.5) < 1e-15);
  const NcPoly f = herglotz_coeffs(g.realization, 3);
  const auto c = moments(g.realization, lambda_m(2, 3));
  for (const auto& [w, m] : c) {
    if (w.is_empty()) continue;
    CHECK((f.coeff(w) - m).norm() == 0.0);
  }
}

TEST_CASE("transfer_coeffs") {
  const Colligation col = random_colligation(5, 2, 2, 11);
  const NcPoly f = transfer_coeffs(col, 3);
  CHECK((f.coeff(Word{}) - col.d()).norm() == 0.0);
  const auto& p = col.p();
  const Matrix expected = col.c() * p[0] * col.a() * p[1] * col.b();
  CHECK((f.coeff(Word{1, 2}) - expected).norm() < 1e-14);
  const Matrix e3 = col.c() * p[1] * col.a() * p[0] * col.a() * p[1] * col.b();
  CHECK((f.coeff(Word{2, 1, 2}) - e3).norm() < 1e-14);

  // B = 0 leaves the constant D
  Matrix a = Matrix::Identity(2, 2);
  const NcPoly constant = transfer_series(a, Matrix::Zero(2, 1), Matrix::Zero(1, 2), Matrix::Constant(1, 1, 0.3),
                                          {diag2(1, 0), diag2(0, 1)}, 3);
  CHECK(constant.coeffs().size() == 1);

  // one variable: F_k = C A^{k-1} B
  const Colligation one = random_colligation(3, 1, 1, 5);
  const NcPoly g = transfer_coeffs(one, 4);
  Matrix ak = Matrix::Identity(3, 3);
  Word w{1};
  for (int k = 1; k <= 4; ++k) {
    CHECK((g.coeff(w) - one.c() * ak * one.b()).norm() < 1e-14);
    ak = ak * one.a();
    w = concat(w, Word{1});
  }
}

TEST_CASE("transfer series are contractive on contractive tuples") {
  for (int i = 0; i < 50; ++i) {
    const auto s = static_cast<std::uint64_t>(i);
    const Colligation col = random_colligation(4, 1 + i % 2, 2, s);
    const NcPoly f = transfer_coeffs(col, 3);
    const AdmissibleSet lam = lambda_m(2, 3);
    const MatrixTuple t = sample_nilpotent(lam, s + 100);
    CHECK(spectral_norm(eval_right(f, t)) <= 1.0 + 1e-8);
  }
}

TEST_CASE("diagonal transform") {
  // U = [[0,1],[1,0]]: G = 1, V = 1, f_k = 1
  const Colligation tiny(Matrix::Zero(1, 1), Matrix::Ones(1, 1), Matrix::Ones(1, 1), Matrix::Zero(1, 1),
                         {Matrix::Identity(1, 1)});
  const HerglotzRealization r = diagonal_transform(tiny);
  CHECK(std::abs(r.g()[0](0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(r.v()(0, 0) - 1.0) < 1e-15);
  const NcPoly f = herglotz_coeffs(r, 4);
  CHECK(std::abs(f.coeff(Word{})(0, 0) - 0.5) < 1e-15);
  for (const Word& w : lambda_m(1, 4).words()) {
    if (!w.is_empty()) CHECK(std::abs(f.coeff(w)(0, 0) - 1.0) < 1e-15);
  }

  for (int i = 0; i < 50; ++i) {
    const Colligation col = random_colligation(3 + i % 4, 1 + i % 3, 1 + i % 3, static_cast<std::uint64_t>(i));
    const HerglotzRealization h = diagonal_transform(col);
    CHECK(check_gn(h.g(), 1e-10).verdict);
    const Matrix x = col.a() + col.b() * col.c();
    const NcPoly tilde = transfer_series(x, 2.0 * col.b(), col.c(), Matrix::Identity(col.d().rows(), col.d().cols()),
                                         col.p(), 3);
    const NcPoly twice = herglotz_coeffs(h, 3) * Complex(2.0);
    CHECK(tilde.max_coeff_distance(twice) <= 1e-9);
  }

  const Colligation with_d(Matrix::Zero(1, 1), Matrix::Ones(1, 1), Matrix::Ones(1, 1), Matrix::Zero(1, 1),
                           {Matrix::Identity(1, 1)});
  Matrix rot(2, 2);
  rot << 0.6, 0.8, -0.8, 0.6;
  const Colligation nonzero_d(rot.block(0, 0, 1, 1), rot.block(0, 1, 1, 1), rot.block(1, 0, 1, 1),
                              rot.block(1, 1, 1, 1), {Matrix::Identity(1, 1)});
  CHECK_THROWS_AS(diagonal_transform(nonzero_d), InvalidInput);
  CHECK_NOTHROW(diagonal_transform(with_d));
  CHECK_THROWS_AS(Colligation(Matrix::Identity(1, 1), Matrix::Ones(1, 1), Matrix::Ones(1, 1), Matrix::Zero(1, 1),
                              {Matrix::Identity(1, 1)}),
                  InvalidInput);
}

TEST_CASE("gen_feasible_instance") {
  const GeneratedInstance a = gen_feasible_instance(2, lambda_m(2, 2), 4, 2, 42);
  const GeneratedInstance b = gen_feasible_instance(2, lambda_m(2, 2), 4, 2, 42);
  for (const auto& [w, c] : a.instance.data().coeffs()) CHECK(c == b.instance.data().coeff(w));
  CHECK(a.instance.data().coeff(Word{}) == Matrix::Identity(2, 2));

  const GeneratedInstance trivial = gen_feasible_instance(3, AdmissibleSet(3, {Word{}}), 3, 1, 1);
  CHECK(trivial.instance.data().coeffs().size() == 1);

  // with V = I the moments are the powers themselves
  const MatrixTuple g = random_gn(3, 2, 9);
  const HerglotzRealization r(g, Matrix::Identity(3, 3));
  for (const auto& [w, c] : moments(r, lambda_m(2, 2))) CHECK((c - g.power(w)).norm() < 1e-14);

  CHECK_THROWS_AS(gen_feasible_instance(3, lambda_m(3, 1), 2, 1, 0), InvalidInput);

  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const AdmissibleSet lam = random_admissible(2, 10, rng);
    const GeneratedInstance gi = gen_feasible_instance(2, lam, 5, 2, static_cast<std::uint64_t>(i));
    for (int j = 0; j < 20; ++j) {
      const MatrixTuple t = sample_nilpotent(lam, mix_seed(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)));
      CHECK(min_eigenvalue(herm_eval(gi.instance.data(), t)) >= -1e-8);
    }
    // Cayley image of 2f is contractive on the same tuples
    const int order = static_cast<int>(lam.max_length());
    const NcPoly big_f = cayley_h_to_s(herglotz_coeffs(gi.realization, order) * Complex(2.0), order);
    const MatrixTuple t = sample_nilpotent(lam, static_cast<std::uint64_t>(i) + 500);
    CHECK(spectral_norm(eval_right(big_f, t)) <= 1.0 + 1e-8);
  }
}
