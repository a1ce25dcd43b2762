#include <doctest.h>

#include "matlevy/hermitian.hpp"
#include "support.hpp"

using namespace matlevy;

TEST_CASE("frobenius_inner") {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  CHECK(frobenius_inner(id, id) == Complex(2.0, 0.0));

  ComplexMatrix e1 = ComplexMatrix::Zero(2, 2), e2 = ComplexMatrix::Zero(2, 2);
  e1(0, 0) = 1.0;
  e2(1, 1) = 1.0;
  CHECK(frobenius_inner(e1, e2) == Complex(0.0, 0.0));

  ComplexMatrix a(2, 2);
  a << 1.0, Complex(0, 1), 0.0, 0.0;
  CHECK(std::abs(frobenius_inner(a, a) - Complex(2.0, 0.0)) < 1e-15);
  CHECK(frobenius_norm(a) == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS_AS(frobenius_inner(ComplexMatrix(2, 2), ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("HermitianMatrix validation") {
  ComplexMatrix almost(2, 2);
  almost << 1.0, Complex(0.5, 1e-14), Complex(0.5, 0.0), 2.0;
  const HermitianMatrix h(almost);
  CHECK(hermitian_defect(h.matrix()) == 0.0);

  ComplexMatrix bad(2, 2);
  bad << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(HermitianMatrix{bad}, std::invalid_argument);
  CHECK_THROWS_AS(HermitianMatrix{ComplexMatrix(2, 3)}, std::invalid_argument);
}

TEST_CASE("PsdMatrix validation") {
  CHECK_NOTHROW(PsdMatrix(HermitianMatrix::diagonal(RealVector::Constant(3, 0.0))));
  RealVector v(2);
  v << 1.0, -1e-3;
  CHECK_THROWS_AS(PsdMatrix{HermitianMatrix::diagonal(v)}, std::invalid_argument);
}

TEST_CASE("hermitian_eigen examples") {
  RealVector v(2);
  v << 3.0, 1.0;
  const HermitianEigen diag = hermitian_eigen(HermitianMatrix::diagonal(v));
  CHECK(diag.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(diag.eigenvalues(1) == doctest::Approx(3.0));

  ComplexMatrix h(2, 2);
  h << 2.0, Complex(0, 1), Complex(0, -1), 2.0;
  const HermitianEigen e = hermitian_eigen(HermitianMatrix(h));
  CHECK(e.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(3.0));

  const HermitianEigen zero = hermitian_eigen(HermitianMatrix::zero(3));
  CHECK(zero.eigenvalues.isZero());
  CHECK(zero.eigenvectors.isIdentity());
}

TEST_CASE("hermitian_eigen properties on random input") {
  Rng rng = make_rng(11);
  for (int k = 0; k < 50; ++k) {
    const Index d = 1 + k % 7;
    const HermitianMatrix h(testing::random_hermitian(d, rng));
    const HermitianEigen e = hermitian_eigen(h);
    const double scale = 1.0 + h.norm();
    CHECK(std::abs(e.eigenvalues.sum() - h.trace().real()) < 1e-9 * scale);
    CHECK((e.eigenvectors.adjoint() * e.eigenvectors - ComplexMatrix::Identity(d, d)).norm() < 1e-10);
    const ComplexMatrix rebuilt = e.eigenvectors * e.eigenvalues.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint();
    CHECK((rebuilt - h.matrix()).norm() < 1e-10 * scale);
    for (Index i = 1; i < d; ++i) CHECK(e.eigenvalues(i - 1) <= e.eigenvalues(i));
  }
}

TEST_CASE("psd_sqrt examples") {
  CHECK((psd_sqrt(PsdMatrix(HermitianMatrix::identity(3))).matrix() - ComplexMatrix::Identity(3, 3)).norm() < 1e-12);

  RealVector v(2);
  v << 4.0, 9.0;
  const ComplexMatrix s = psd_sqrt(PsdMatrix(HermitianMatrix::diagonal(v))).matrix();
  CHECK(std::abs(s(0, 0) - 2.0) < 1e-12);
  CHECK(std::abs(s(1, 1) - 3.0) < 1e-12);
  CHECK(std::abs(s(0, 1)) < 1e-12);

  ComplexMatrix p(2, 2);
  p << 2.0, 1.0, 1.0, 2.0;
  const ComplexMatrix r = psd_sqrt(PsdMatrix(HermitianMatrix(p))).matrix();
  CHECK(r(0, 0).real() == doctest::Approx(1.3660254037844386));
  CHECK(r(0, 1).real() == doctest::Approx(0.3660254037844386));
  CHECK((r * r - p).norm() < 1e-9);
}

TEST_CASE("psd_sqrt recovers square roots with distinct eigenvalues") {
  Rng rng = make_rng(12);
  for (int k = 0; k < 100; ++k) {
    const Index d = 1 + k % 6;
    const ComplexMatrix u = sample_haar_unitary(d, rng);
    RealVector lambda(d);
    for (Index i = 0; i < d; ++i) lambda(i) = 0.5 + i + 0.25 * uniform01(rng);
    const ComplexMatrix s = u * lambda.cast<Complex>().asDiagonal() * u.adjoint();
    const ComplexMatrix root = psd_sqrt(PsdMatrix(HermitianMatrix(s * s))).matrix();
    CHECK((root - s).norm() < 1e-8);
  }
}

TEST_CASE("factor_rank_one") {
  ComplexMatrix p = ComplexMatrix::Zero(3, 3);
  p(0, 0) = 3.0;
  RankOneHermitian r = factor_rank_one(HermitianMatrix(p));
  CHECK(r.eigenvalue == doctest::Approx(3.0));
  CHECK(std::abs(r.direction(0) - Complex(1.0, 0.0)) < 1e-12);

  ComplexMatrix q = ComplexMatrix::Zero(3, 3);
  q(1, 1) = -2.0;
  r = factor_rank_one(HermitianMatrix(q));
  CHECK(r.eigenvalue == doctest::Approx(-2.0));
  CHECK(std::abs(r.direction(1) - Complex(1.0, 0.0)) < 1e-12);

  CHECK_THROWS_AS(factor_rank_one(HermitianMatrix::zero(2)), std::invalid_argument);
  CHECK_THROWS_AS(factor_rank_one(HermitianMatrix::identity(2)), std::invalid_argument);

  Rng rng = make_rng(13);
  for (int k = 0; k < 100; ++k) {
    const Index d = 1 + k % 6;
    const ComplexVector u = sample_uniform_sphere(d, rng);
    const double lambda = k % 2 ? 1.7 : -0.3 - uniform01(rng);
    const ComplexMatrix v = lambda * u * u.adjoint();
    const RankOneHermitian f = factor_rank_one(HermitianMatrix(v));
    CHECK(f.eigenvalue == doctest::Approx(lambda).epsilon(1e-10));
    CHECK((f.matrix() - v).norm() <= 1e-9 * v.norm());
    // Same line as u, phase removed.
    CHECK(std::abs(std::abs(f.direction.dot(u)) - 1.0) < 1e-10);
  }
}

TEST_CASE("canonical_vector") {
  ComplexVector x(2);
  x << 0.6, Complex(0.0, 0.8);
  ComplexVector c = canonical_vector(PsdMatrix(HermitianMatrix(x * x.adjoint())));
  CHECK((c - x).norm() < 1e-12);

  x << -0.6, 0.8;
  c = canonical_vector(PsdMatrix(HermitianMatrix(x * x.adjoint())));
  ComplexVector expected(2);
  expected << 0.6, -0.8;
  CHECK((c - expected).norm() < 1e-12);

  // First coordinate zero: the next nonzero one is made real positive.
  ComplexVector z(3);
  z << 0.0, Complex(0.0, -2.0), 1.0;
  c = canonical_vector(PsdMatrix(HermitianMatrix(z * z.adjoint())));
  CHECK(std::abs(c(0)) < 1e-12);
  CHECK(std::abs(c(1).imag()) < 1e-12);
  CHECK(c(1).real() > 0.0);
  CHECK((c * c.adjoint() - z * z.adjoint()).norm() < 1e-10);

  ComplexMatrix rank_two = ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(canonical_vector(PsdMatrix(HermitianMatrix(rank_two))), std::invalid_argument);

  Rng rng = make_rng(14);
  for (int k = 0; k < 50; ++k) {
    const Index d = 1 + k % 5;
    const ComplexVector y = complex_normal_matrix(d, 1, rng).col(0);
    const ComplexMatrix v = y * y.adjoint();
    const ComplexVector w = canonical_vector(PsdMatrix(HermitianMatrix(v)));
    CHECK((w * w.adjoint() - v).norm() < 1e-10 * (1.0 + v.norm()));
    CHECK(std::abs(w(0).imag()) < 1e-12);
    CHECK(w(0).real() >= 0.0);
  }
}

TEST_CASE("pos_neg_split") {
  RealVector v(2);
  v << 3.0, -2.0;
  const PosNegSplit s = pos_neg_split(HermitianMatrix::diagonal(v));
  CHECK(std::abs(s.positive.matrix()(0, 0) - 3.0) < 1e-12);
  CHECK(std::abs(s.positive.matrix()(1, 1)) < 1e-12);
  CHECK(std::abs(s.negative.matrix()(1, 1) - 2.0) < 1e-12);
  CHECK(std::abs(s.negative.matrix()(0, 0)) < 1e-12);

  Rng rng = make_rng(15);
  const ComplexMatrix p = testing::random_psd(4, rng);
  const PosNegSplit ps = pos_neg_split(HermitianMatrix(p));
  CHECK((ps.positive.matrix() - p).norm() < 1e-10);
  CHECK(ps.negative.matrix().norm() < 1e-10);

  for (int k = 0; k < 50; ++k) {
    const Index d = 1 + k % 6;
    const HermitianMatrix h(testing::random_hermitian(d, rng));
    const PosNegSplit split = pos_neg_split(h);
    CHECK((split.positive.matrix() - split.negative.matrix() - h.matrix()).norm() < 1e-10 * (1.0 + h.norm()));
    CHECK((split.positive.matrix() * split.negative.matrix()).norm() < 1e-9 * (1.0 + h.norm() * h.norm()));
  }
}

TEST_CASE("RankOneHermitian normalizes and canonicalizes") {
  ComplexVector u(2);
  u << Complex(0.0, 3.0), 4.0;
  const RankOneHermitian r(2.0, u);
  CHECK(r.direction.norm() == doctest::Approx(1.0));
  CHECK(std::abs(r.direction(0) - Complex(0.6, 0.0)) < 1e-12);
  CHECK((r.matrix() - 2.0 * u * u.adjoint() / 25.0).norm() < 1e-12);
  CHECK_THROWS_AS(RankOneHermitian(0.0, u), std::invalid_argument);
  CHECK_THROWS_AS(RankOneHermitian(1.0, ComplexVector::Zero(2)), std::invalid_argument);
}
