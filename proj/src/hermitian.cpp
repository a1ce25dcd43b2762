#include "matlevy/hermitian.hpp"

#include <algorithm>
#include <string>

#include "matlevy/jacobi_eigen.hpp"

namespace matlevy {

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("HermitianMatrix: matrix is not square");
  }
  const double defect = hermitian_defect(m);
  if (!(defect <= kTolerance * (1.0 + m.norm()))) {
    throw std::invalid_argument("HermitianMatrix: input is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::zero(Index d) { return HermitianMatrix(ComplexMatrix::Zero(d, d)); }

HermitianMatrix HermitianMatrix::identity(Index d) {
  return HermitianMatrix(ComplexMatrix::Identity(d, d));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& entries) {
  return HermitianMatrix(ComplexMatrix(entries.cast<Complex>().asDiagonal()));
}

PsdMatrix::PsdMatrix(HermitianMatrix h) : h_(std::move(h)) {
  if (h_.dim() == 0) return;
  const double min_eig = hermitian_eigenvalues(h_).minCoeff();
  if (min_eig < -kTolerance) {
    throw std::invalid_argument("PsdMatrix: minimum eigenvalue " + std::to_string(min_eig) +
                                " is below tolerance");
  }
}

ComplexVector canonical_phase(const ComplexVector& u) {
  const double scale = u.norm();
  for (Index i = 0; i < u.size(); ++i) {
    const double modulus = std::abs(u(i));
    if (modulus > 1e-12 * scale) {
      return u * (std::conj(u(i)) / modulus);
    }
  }
  return u;
}

RankOneHermitian::RankOneHermitian(double lambda, ComplexVector u) : eigenvalue(lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda)) {
    throw std::invalid_argument("RankOneHermitian: eigenvalue must be finite and nonzero");
  }
  const double n = u.norm();
  if (!(n > 0.0)) throw std::invalid_argument("RankOneHermitian: zero direction");
  direction = canonical_phase(u / n);
}

HermitianEigen hermitian_eigen(const HermitianMatrix& h) {
  JacobiEigenSolver<ComplexMatrix> solver(h.matrix());
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const HermitianMatrix& h) {
  return JacobiEigenSolver<ComplexMatrix>(h.matrix(), false).eigenvalues();
}

PsdMatrix psd_sqrt(const PsdMatrix& p) {
  const HermitianEigen eig = hermitian_eigen(p.hermitian());
  RealVector roots = eig.eigenvalues;
  for (Index i = 0; i < roots.size(); ++i) {
    if (roots(i) < -PsdMatrix::kTolerance) {
      throw std::invalid_argument("psd_sqrt: negative eigenvalue");
    }
    roots(i) = std::sqrt(std::max(roots(i), 0.0));
  }
  const ComplexMatrix s =
      eig.eigenvectors * roots.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
  return PsdMatrix(HermitianMatrix(0.5 * (s + s.adjoint())));
}

RankOneHermitian factor_rank_one(const HermitianMatrix& v) {
  const double scale = v.norm();
  if (scale == 0.0) throw std::invalid_argument("factor_rank_one: zero matrix");
  const HermitianEigen eig = hermitian_eigen(v);
  Index pick = -1;
  int count = 0;
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (std::abs(eig.eigenvalues(i)) > kRankTolerance * scale) {
      pick = i;
      ++count;
    }
  }
  if (count != 1) {
    throw std::invalid_argument("factor_rank_one: numerical rank is " + std::to_string(count));
  }
  return RankOneHermitian(eig.eigenvalues(pick), eig.eigenvectors.col(pick));
}

ComplexVector canonical_vector(const PsdMatrix& v) {
  const RankOneHermitian r = factor_rank_one(v.hermitian());
  if (r.eigenvalue < 0.0) {
    throw std::invalid_argument("canonical_vector: negative eigenvalue");
  }
  return std::sqrt(r.eigenvalue) * r.direction;
}

PosNegSplit pos_neg_split(const HermitianMatrix& h) {
  const HermitianEigen eig = hermitian_eigen(h);
  const Index d = h.dim();
  RealVector pos = RealVector::Zero(d);
  RealVector neg = RealVector::Zero(d);
  for (Index i = 0; i < d; ++i) {
    const double l = eig.eigenvalues(i);
    (l > 0.0 ? pos(i) : neg(i)) = std::abs(l);
  }
  const ComplexMatrix& u = eig.eigenvectors;
  const ComplexMatrix plus = u * pos.cast<Complex>().asDiagonal() * u.adjoint();
  const ComplexMatrix minus = u * neg.cast<Complex>().asDiagonal() * u.adjoint();
  return {PsdMatrix(HermitianMatrix(0.5 * (plus + plus.adjoint()))),
          PsdMatrix(HermitianMatrix(0.5 * (minus + minus.adjoint())))};
}

}  // namespace matlevy
