#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ncinterp/errors.hpp"
#include "ncinterp/ncpoly.hpp"

using namespace ncinterp;

namespace {

Matrix scalar(Complex x) { return Matrix::Constant(1, 1, x); }

NcPoly scalar_poly(int n, int order, std::initializer_list<std::pair<Word, Complex>> terms) {
  NcPoly p(n, 1, 1, order);
  for (const auto& [w, c] : terms) p.set(w, scalar(c));
  return p;
}

NcPoly random_poly(int n, Eigen::Index rows, Eigen::Index cols, const AdmissibleSet& support, int order, Rng& rng,
                   double scale = 1.0) {
  NcPoly p(n, rows, cols, order);
  for (const Word& w : support.words()) p.set(w, scale * complex_gaussian(rows, cols, rng));
  return p;
}

const AdmissibleSet kPair(2, {Word{}, Word{1}, Word{2}, Word{1, 2}, Word{2, 1}});

Complex at(const NcPoly& p, const Word& w) { return p.coeff(w)(0, 0); }

}  // namespace

TEST_CASE("storage drops exact zeros only") {
  NcPoly p(2, 1, 1, 2);
  p.set(Word{1}, scalar(1e-300));
  p.set(Word{2}, scalar(0.0));
  CHECK(p.coeffs().size() == 1);
  CHECK_THROWS_AS(p.set(Word{1, 1, 1}, scalar(1.0)), DimensionError);
  CHECK_THROWS_AS(p.set(Word{3}, scalar(1.0)), DimensionError);
  CHECK_THROWS_AS(p.set(Word{1}, Matrix::Zero(2, 2)), DimensionError);
}

TEST_CASE("multiply examples") {
  const NcPoly z1 = scalar_poly(2, 2, {{Word{1}, 1.0}});
  const NcPoly z2 = scalar_poly(2, 2, {{Word{2}, 1.0}});
  const NcPoly prod = multiply(z1, z2, 2);
  CHECK(at(prod, Word{1, 2}) == Complex(1.0));
  CHECK(prod.coeffs().count(Word{2, 1}) == 0);

  const NcPoly a = scalar_poly(1, 1, {{Word{}, 1.0}, {Word{1}, 1.0}});
  const NcPoly sq = multiply(a, a, 1);
  CHECK(at(sq, Word{}) == Complex(1.0));
  CHECK(at(sq, Word{1}) == Complex(2.0));
  CHECK(sq.coeffs().size() == 2);

  // (1 + s)(1 - s) = 1 - s², s = z1 + z2
  const NcPoly plus = scalar_poly(2, 2, {{Word{}, 1.0}, {Word{1}, 1.0}, {Word{2}, 1.0}});
  const NcPoly minus = scalar_poly(2, 2, {{Word{}, 1.0}, {Word{1}, -1.0}, {Word{2}, -1.0}});
  const NcPoly d = multiply(plus, minus, 2);
  CHECK(at(d, Word{}) == Complex(1.0));
  CHECK(d.coeffs().count(Word{1}) == 0);
  CHECK(d.coeffs().count(Word{2}) == 0);
  for (const Word& w : {Word{1, 1}, Word{1, 2}, Word{2, 1}, Word{2, 2}}) CHECK(at(d, w) == Complex(-1.0));

  CHECK_THROWS_AS(multiply(NcPoly(1, 2, 3, 1), NcPoly(1, 2, 3, 1), 1), DimensionError);
}

TEST_CASE("multiply is associative through the order") {
  Rng rng(1);
  const AdmissibleSet all = lambda_m(2, 3);
  for (int i = 0; i < 20; ++i) {
    const NcPoly a = random_poly(2, 2, 3, all, 3, rng);
    const NcPoly b = random_poly(2, 3, 2, all, 3, rng);
    const NcPoly c = random_poly(2, 2, 2, all, 3, rng);
    const NcPoly l = multiply(multiply(a, b, 3), c, 3);
    const NcPoly r = multiply(a, multiply(b, c, 3), 3);
    CHECK(l.max_coeff_distance(r) <= 1e-10);
  }
}

TEST_CASE("invert examples") {
  const NcPoly f = scalar_poly(1, 3, {{Word{}, 1.0}, {Word{1}, -1.0}});
  const NcPoly g = invert(f, 3);
  for (int k = 0; k <= 3; ++k) CHECK(std::abs(at(g, Word(std::vector<int>(static_cast<std::size_t>(k), 1))) - 1.0) < 1e-15);
  CHECK(g.coeffs().size() == 4);

  const NcPoly h = scalar_poly(2, 2, {{Word{}, 1.0}, {Word{1}, -0.5}, {Word{2}, -0.5}});
  const NcPoly hi = invert(h, 2);
  CHECK(std::abs(at(hi, Word{}) - 1.0) < 1e-15);
  CHECK(std::abs(at(hi, Word{1}) - 0.5) < 1e-15);
  CHECK(std::abs(at(hi, Word{2}) - 0.5) < 1e-15);
  for (const Word& w : {Word{1, 1}, Word{1, 2}, Word{2, 1}, Word{2, 2}}) CHECK(std::abs(at(hi, w) - 0.25) < 1e-15);

  CHECK_THROWS_AS(invert(scalar_poly(1, 2, {{Word{1}, 1.0}}), 2), SingularError);
}

TEST_CASE("invert then multiply gives the identity series") {
  Rng rng(2);
  const AdmissibleSet all = lambda_m(2, 3);
  for (int i = 0; i < 30; ++i) {
    NcPoly f = random_poly(2, 3, 3, all, 3, rng, 0.5);
    f.add(Word{}, 3.0 * Matrix::Identity(3, 3));
    const NcPoly g = invert(f, 3);
    const NcPoly id = NcPoly::identity(2, 3, 3);
    CHECK(multiply(f, g, 3).max_coeff_distance(id) <= 1e-10);
    CHECK(multiply(g, f, 3).max_coeff_distance(id) <= 1e-10);
  }
}

TEST_CASE("cayley examples") {
  const NcPoly half = NcPoly::constant(1, 0.5 * Matrix::Identity(2, 2), 2);
  const NcPoly f1 = cayley_h_to_s(half, 2);
  CHECK((f1.coeff(Word{}) + Matrix::Identity(2, 2) / 3.0).norm() < 1e-15);
  CHECK(f1.coeffs().size() == 1);
  CHECK(cayley_h_to_s(NcPoly::identity(1, 2, 2), 2).coeffs().empty());

  CHECK(cayley_s_to_h(NcPoly(1, 2, 2, 2), 2).max_coeff_distance(NcPoly::identity(1, 2, 2)) < 1e-15);
  const NcPoly third = NcPoly::constant(1, -Matrix::Identity(2, 2) / 3.0, 2);
  CHECK(cayley_s_to_h(third, 2).max_coeff_distance(half) < 1e-15);

  // F = z: (1 + z)(1 - z)⁻¹ = 1 + 2z + 2z² + ...
  const NcPoly z = scalar_poly(1, 4, {{Word{1}, 1.0}});
  const NcPoly h = cayley_s_to_h(z, 4);
  CHECK(std::abs(at(h, Word{}) - 1.0) < 1e-15);
  for (int k = 1; k <= 4; ++k) CHECK(std::abs(at(h, Word(std::vector<int>(static_cast<std::size_t>(k), 1))) - 2.0) < 1e-14);

  // one-variable f = 1/2 + z/2 + z²/4: independent series-division oracle
  const NcPoly f = scalar_poly(1, 4, {{Word{}, 0.5}, {Word{1}, 0.5}, {Word{1, 1}, 0.25}});
  const NcPoly big_f = cayley_h_to_s(f, 4);
  // a = f - 1, b = f + 1; F b = a gives F_k = (a_k - Σ_{j<k} F_j b_{k-j}) / b_0
  const std::vector<double> a{-0.5, 0.5, 0.25, 0.0, 0.0};
  const std::vector<double> b{1.5, 0.5, 0.25, 0.0, 0.0};
  std::vector<double> expect(5, 0.0);
  for (int k = 0; k <= 4; ++k) {
    double acc = a[static_cast<std::size_t>(k)];
    for (int j = 0; j < k; ++j) acc -= expect[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
    expect[static_cast<std::size_t>(k)] = acc / b[0];
  }
  CHECK(std::abs(at(big_f, Word{}) + 1.0 / 3.0) < 1e-15);
  for (int k = 0; k <= 4; ++k) {
    CHECK(std::abs(at(big_f, Word(std::vector<int>(static_cast<std::size_t>(k), 1))) - expect[static_cast<std::size_t>(k)]) <
          1e-14);
  }

  CHECK_THROWS_AS(cayley_h_to_s(NcPoly::constant(1, -Matrix::Identity(1, 1), 1), 1), SingularError);
  CHECK_THROWS_AS(cayley_s_to_h(NcPoly::identity(1, 1, 1), 1), SingularError);
}

TEST_CASE("cayley round trip") {
  Rng rng(3);
  const AdmissibleSet all = lambda_m(2, 3);
  for (int i = 0; i < 30; ++i) {
    NcPoly f = random_poly(2, 2, 2, all, 3, rng, 0.4);
    f.add(Word{}, Matrix::Identity(2, 2));
    const NcPoly back = cayley_s_to_h(cayley_h_to_s(f, 3), 3);
    CHECK(back.max_coeff_distance(f) <= 1e-9);
  }
}

TEST_CASE("cayley_s_to_h has positive constant real part for contractive F_0") {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    Matrix f0 = complex_gaussian(3, 3, rng);
    f0 *= 0.99 / spectral_norm(f0);
    const NcPoly h = cayley_s_to_h(NcPoly::constant(1, f0, 0), 0);
    CHECK(min_eigenvalue(h.coeff(Word{})) >= -1e-12);
  }
}

TEST_CASE("eval_right and eval_left") {
  const MatrixTuple s = shift_tuple(kPair);
  const Matrix c = (Matrix(2, 2) << 1.0, 2.0, 3.0, 4.0).finished();
  const NcPoly p = NcPoly::constant(2, c, 2);
  CHECK((eval_right(p, s) - kron(c, Matrix::Identity(5, 5))).norm() == doctest::Approx(0.0));
  CHECK((eval_left(p, s) - kron(Matrix::Identity(5, 5), c)).norm() == doctest::Approx(0.0));

  // z1 z2 on the shift: rank one, sends basis word 12 to ∅ (oracle: hand products)
  const Matrix m = eval_right(scalar_poly(2, 2, {{Word{1, 2}, 1.0}}), s);
  Matrix expected = Matrix::Zero(5, 5);
  expected(0, 3) = 1.0;
  CHECK((m - expected).norm() == doctest::Approx(0.0));

  // left and right evaluation agree up to a permutation
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const NcPoly q = random_poly(2, 2, 2, kPair, 2, rng);
    const MatrixTuple t = sample_nilpotent(kPair, static_cast<std::uint64_t>(i));
    const Matrix r = eval_right(q, t);
    const Matrix l = eval_left(q, t);
    // the two Kronecker orders differ by the perfect shuffle of indices
    const Eigen::Index n = t.dim();
    double worst = 0.0;
    for (Eigen::Index p = 0; p < 2; ++p)
      for (Eigen::Index q2 = 0; q2 < 2; ++q2)
        for (Eigen::Index a = 0; a < n; ++a)
          for (Eigen::Index b = 0; b < n; ++b)
            worst = std::max(worst, std::abs(l(a * 2 + p, b * 2 + q2) - r(p * n + a, q2 * n + b)));
    CHECK(worst < 1e-14);
  }
  CHECK_THROWS_AS(eval_right(NcPoly(3, 1, 1, 1), s), DimensionError);
  CHECK_THROWS_AS(eval_right(NcPoly(2, 1000, 1, 1), MatrixTuple::zero(2, 5)), ResourceError);
}

TEST_CASE("eval_right is multiplicative on nilpotent tuples") {
  Rng rng(6);
  for (int i = 0; i < 30; ++i) {
    const AdmissibleSet lam = random_admissible(2, 10, rng);
    const int order = static_cast<int>(lam.max_length());
    const NcPoly a = random_poly(2, 2, 2, lam, order, rng);
    const NcPoly b = random_poly(2, 2, 2, lam, order, rng);
    const MatrixTuple t = sample_nilpotent(lam, static_cast<std::uint64_t>(i));
    const Matrix lhs = eval_right(multiply(a, b, order), t);
    const Matrix rhs = eval_right(a, t) * eval_right(b, t);
    CHECK((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
  }
}

TEST_CASE("herm_eval") {
  std::map<Word, Matrix> c{{Word{}, scalar(1.0)},     {Word{1}, scalar(0.5)},     {Word{2}, scalar(0.5)},
                           {Word{1, 2}, scalar(0.25)}, {Word{2, 1}, scalar(0.25)}};
  const HermitianData data(kPair, 1, c);
  CHECK((herm_eval(data, MatrixTuple::zero(2, 3)) - Matrix::Identity(3, 3)).norm() == doctest::Approx(0.0));

  Matrix t1 = Matrix::Zero(3, 3);
  t1(0, 1) = 1.0;
  t1(1, 2) = 1.0;
  Matrix t2 = Matrix::Zero(3, 3);
  t2(0, 1) = 1.0;
  const Matrix m = herm_eval(data, MatrixTuple({t1, t2}));
  const Matrix expected = (Matrix(3, 3) << 1, 1, 0.25, 1, 1, 0.5, 0.25, 0.5, 1).finished();
  CHECK((m - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(m.determinant().real() == doctest::Approx(-1.0 / 16.0).epsilon(1e-12));

  const HermitianData one(lambda_m(1, 1), 1, {{Word{}, scalar(1.0)}, {Word{1}, scalar(0.5)}});
  const Matrix m2 = herm_eval(one, shift_tuple(lambda_m(1, 1)));
  CHECK((m2 - (Matrix(2, 2) << 1, 0.5, 0.5, 1).finished()).norm() < 1e-15);

  CHECK_THROWS_AS(HermitianData(kPair, 1, {{Word{}, scalar(Complex(1.0, 0.1))}}), InvalidInput);
  CHECK_THROWS_AS(HermitianData(kPair, 1, {{Word{1, 1}, scalar(1.0)}}), InvalidInput);
  CHECK_THROWS_AS(HermitianData(kPair, 2, {{Word{1}, scalar(1.0)}}), InvalidInput);
}

TEST_CASE("herm_eval equals twice the hermitian part of the analytic evaluation") {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const AdmissibleSet lam = random_admissible(2, 9, rng);
    std::map<Word, Matrix> c;
    for (const Word& w : lam.words()) c.emplace(w, complex_gaussian(2, 2, rng));
    c[Word{}] = c[Word{}] + c[Word{}].adjoint().eval();
    const HermitianData data(lam, 2, c);
    const MatrixTuple t = sample_nilpotent(lam, static_cast<std::uint64_t>(i));
    const Matrix p = eval_right(data.analytic_part(), t);
    const Matrix h = herm_eval(data, t);
    CHECK((h - (p + p.adjoint())).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("cayley series is exact on nilpotent tuples") {
  Rng rng(8);
  for (int i = 0; i < 40; ++i) {
    const AdmissibleSet lam = random_admissible(1 + i % 3, 10, rng);
    const int order = static_cast<int>(lam.max_length());
    NcPoly f = random_poly(lam.n_vars(), 2, 2, lam, order, rng, 0.3);
    f.add(Word{}, Matrix::Identity(2, 2));
    const MatrixTuple t = sample_nilpotent(lam, static_cast<std::uint64_t>(i));
    const Matrix ft = eval_right(f, t);
    const Matrix id = Matrix::Identity(ft.rows(), ft.cols());
    const Matrix direct = (ft - id) * (ft + id).inverse();
    const Matrix series = eval_right(cayley_h_to_s(f, order), t);
    CHECK((direct - series).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("extract_coefficients") {
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const AdmissibleSet lam = random_admissible(1 + i % 3, 12, rng);
    const int order = static_cast<int>(lam.max_length());
    const NcPoly p = random_poly(lam.n_vars(), 2, 3, lam, order, rng);
    const auto got = extract_coefficients([&](const MatrixTuple& t) { return eval_right(p, t); }, lam, 2, 3);
    for (const Word& w : lam.words()) CHECK((got.at(w) - p.coeff(w)).cwiseAbs().maxCoeff() <= 1e-9);
  }
  const auto zero = extract_coefficients([](const MatrixTuple& t) { return Matrix::Zero(t.dim(), t.dim()).eval(); },
                                         kPair, 1, 1);
  for (const auto& [w, c] : zero) CHECK(c.isZero(0.0));

  // a polynomial living on words outside Λ vanishes on Λ-nilpotent tuples
  NcPoly outside(2, 1, 1, 3);
  outside.set(Word{1, 1}, scalar(1.0));
  outside.set(Word{2, 1, 2}, scalar(-2.0));
  const auto vanish = extract_coefficients([&](const MatrixTuple& t) { return eval_right(outside, t); }, kPair, 1, 1);
  for (const auto& [w, c] : vanish) CHECK(c.cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(extract_coefficients([](const MatrixTuple&) { return Matrix::Zero(2, 2).eval(); }, kPair, 1, 1),
                  DimensionError);
}
