#pragma once

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace matlevy {

/// Cyclic Jacobi eigensolver for self-adjoint matrices (real symmetric or
/// complex Hermitian).
///
/// Each rotation first removes the phase of the pivot a_pq with a diagonal
/// unitary and then applies a real Givens rotation, so the complex case
/// reduces to the classical real algorithm. Sweeps stop once the
/// off-diagonal Frobenius mass drops below `tolerance * ||A||_F`.
/// Eigenvalues are returned in ascending order.
template <typename MatrixType>
class JacobiEigenSolver {
 public:
  using Scalar = typename MatrixType::Scalar;
  using RealScalar = typename Eigen::NumTraits<Scalar>::Real;
  using RealVectorType = Eigen::Matrix<RealScalar, Eigen::Dynamic, 1>;
  using EigenvectorsType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  static constexpr int kMaxSweeps = 100;

  JacobiEigenSolver() = default;

  template <typename Derived>
  explicit JacobiEigenSolver(const Eigen::MatrixBase<Derived>& matrix,
                             bool compute_eigenvectors = true,
                             RealScalar tolerance = RealScalar(1e-12)) {
    compute(matrix, compute_eigenvectors, tolerance);
  }

  template <typename Derived>
  JacobiEigenSolver& compute(const Eigen::MatrixBase<Derived>& matrix,
                             bool compute_eigenvectors = true,
                             RealScalar tolerance = RealScalar(1e-12)) {
    using Eigen::numext::abs;
    using Eigen::numext::conj;
    using Eigen::numext::real;

    if (matrix.rows() != matrix.cols()) {
      throw std::invalid_argument("JacobiEigenSolver: matrix is not square");
    }
    const Eigen::Index n = matrix.rows();
    EigenvectorsType a = matrix;
    EigenvectorsType v;
    if (compute_eigenvectors) v = EigenvectorsType::Identity(n, n);

    const RealScalar scale = a.norm();
    sweeps_ = 0;
    if (scale > RealScalar(0)) {
      const RealScalar target = tolerance * scale;
      for (; sweeps_ <= kMaxSweeps; ++sweeps_) {
        if (off_diagonal_norm(a) <= target) break;
        if (sweeps_ == kMaxSweeps) {
          throw std::runtime_error("JacobiEigenSolver: no convergence");
        }
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
          for (Eigen::Index q = p + 1; q < n; ++q) {
            rotate(a, v, p, q, compute_eigenvectors);
          }
        }
      }
    }

    RealVectorType diag(n);
    for (Eigen::Index i = 0; i < n; ++i) diag(i) = real(a(i, i));

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return diag(i) < diag(j); });

    eigenvalues_.resize(n);
    if (compute_eigenvectors) eigenvectors_.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      eigenvalues_(k) = diag(order[static_cast<std::size_t>(k)]);
      if (compute_eigenvectors) eigenvectors_.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    has_eigenvectors_ = compute_eigenvectors;
    return *this;
  }

  const RealVectorType& eigenvalues() const { return eigenvalues_; }

  const EigenvectorsType& eigenvectors() const {
    if (!has_eigenvectors_) {
      throw std::logic_error("JacobiEigenSolver: eigenvectors were not computed");
    }
    return eigenvectors_;
  }

  int sweeps() const { return sweeps_; }

 private:
  static RealScalar off_diagonal_norm(const EigenvectorsType& a) {
    RealScalar sum(0);
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        if (i != j) sum += Eigen::numext::abs2(a(i, j));
      }
    }
    return std::sqrt(sum);
  }

  static void rotate(EigenvectorsType& a, EigenvectorsType& v, Eigen::Index p, Eigen::Index q,
                     bool with_vectors) {
    using Eigen::numext::abs;
    using Eigen::numext::conj;
    using Eigen::numext::real;

    const Scalar apq = a(p, q);
    const RealScalar g = abs(apq);
    if (g == RealScalar(0)) return;
    const RealScalar app = real(a(p, p));
    const RealScalar aqq = real(a(q, q));
    // Negligible pivot relative to both diagonal entries.
    if (std::abs(app) + RealScalar(1e3) * g == std::abs(app) &&
        std::abs(aqq) + RealScalar(1e3) * g == std::abs(aqq)) {
      a(p, q) = Scalar(0);
      a(q, p) = Scalar(0);
      return;
    }

    const Scalar phase = apq / g;
    const RealScalar tau = (aqq - app) / (RealScalar(2) * g);
    const RealScalar t = (tau >= RealScalar(0) ? RealScalar(1) : RealScalar(-1)) /
                         (std::abs(tau) + std::sqrt(RealScalar(1) + tau * tau));
    const RealScalar c = RealScalar(1) / std::sqrt(RealScalar(1) + t * t);
    const RealScalar s = t * c;
    const Scalar phase_conj = conj(phase);

    // Columns: A <- A G with G = [[c, s], [-s conj(e), c conj(e)]].
    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == p || k == q) continue;
      const Scalar akp = a(k, p);
      const Scalar akq = a(k, q);
      const Scalar new_p = c * akp - s * phase_conj * akq;
      const Scalar new_q = s * akp + c * phase_conj * akq;
      a(k, p) = new_p;
      a(k, q) = new_q;
      a(p, k) = conj(new_p);
      a(q, k) = conj(new_q);
    }
    a(p, p) = Scalar(app - t * g);
    a(q, q) = Scalar(aqq + t * g);
    a(p, q) = Scalar(0);
    a(q, p) = Scalar(0);

    if (with_vectors) {
      for (Eigen::Index k = 0; k < n; ++k) {
        const Scalar vkp = v(k, p);
        const Scalar vkq = v(k, q);
        v(k, p) = c * vkp - s * phase_conj * vkq;
        v(k, q) = s * vkp + c * phase_conj * vkq;
      }
    }
  }

  RealVectorType eigenvalues_;
  EigenvectorsType eigenvectors_;
  bool has_eigenvectors_ = false;
  int sweeps_ = 0;
};

}  // namespace matlevy
