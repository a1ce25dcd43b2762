#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "matlevy/types.hpp"

namespace matlevy {

/// tr(A B^*) for conformable matrices of any scalar type.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar frobenius_inner(const Eigen::MatrixBase<DerivedA>& a,
                                          const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("frobenius_inner: shape mismatch");
  }
  return (a.array() * b.array().conjugate()).sum();
}

template <typename Derived>
double frobenius_norm(const Eigen::MatrixBase<Derived>& a) {
  return std::sqrt(std::real(frobenius_inner(a, a)));
}

/// ||A - A^*||_F; zero for self-adjoint input.
template <typename Derived>
double hermitian_defect(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).norm();
}

/// Complex Hermitian d x d matrix. Construction symmetrizes inputs whose
/// Hermitian defect is at most 1e-12 (1 + ||A||_F) and rejects the rest.
class HermitianMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix zero(Index d);
  static HermitianMatrix identity(Index d);
  static HermitianMatrix diagonal(const RealVector& entries);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  double norm() const { return m_.norm(); }
  Complex trace() const { return m_.trace(); }

 private:
  ComplexMatrix m_;
};

/// Positive semidefinite Hermitian matrix (minimum eigenvalue >= -1e-10).
class PsdMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  PsdMatrix() = default;
  explicit PsdMatrix(HermitianMatrix h);

  Index dim() const { return h_.dim(); }
  const HermitianMatrix& hermitian() const { return h_; }
  const ComplexMatrix& matrix() const { return h_.matrix(); }

 private:
  HermitianMatrix h_;
};

/// lambda * u u^* with ||u|| = 1 and u phase-canonical.
struct RankOneHermitian {
  double eigenvalue = 0.0;
  ComplexVector direction;

  RankOneHermitian() = default;
  /// Normalizes `u` and canonicalizes its phase; rejects lambda == 0 or u == 0.
  RankOneHermitian(double lambda, ComplexVector u);

  Index dim() const { return direction.size(); }
  ComplexMatrix matrix() const { return eigenvalue * direction * direction.adjoint(); }
};

struct HermitianEigen {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns, unitary
};

HermitianEigen hermitian_eigen(const HermitianMatrix& h);
RealVector hermitian_eigenvalues(const HermitianMatrix& h);

PsdMatrix psd_sqrt(const PsdMatrix& p);

/// Relative threshold below which an eigenvalue counts as zero for rank tests.
inline constexpr double kRankTolerance = 1e-8;

RankOneHermitian factor_rank_one(const HermitianMatrix& v);

/// x with x x^* = V, first coordinate of modulus > 1e-12 ||x|| real nonnegative.
ComplexVector canonical_vector(const PsdMatrix& v);

/// Multiplies u by a unit phase so that its first non-negligible coordinate is
/// real and positive.
ComplexVector canonical_phase(const ComplexVector& u);

struct PosNegSplit {
  PsdMatrix positive;
  PsdMatrix negative;
};

PosNegSplit pos_neg_split(const HermitianMatrix& h);

}  // namespace matlevy
