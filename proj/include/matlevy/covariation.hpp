#pragma once

#include <string>
#include <vector>

#include "matlevy/matpath.hpp"
#include "matlevy/semimartingale.hpp"

namespace matlevy {

enum class CovariationMethod { structural, realized };

/// [X, Y](t) split into its continuous and jump parts.
struct CovariationResult {
  ComplexMatrix value;
  ComplexMatrix continuous;
  ComplexMatrix jump;
  CovariationMethod method = CovariationMethod::structural;
};

/// Exact matrix covariation [X, Y](t) of X (d x q) and Y (q x r), computed
/// from the declared drivers and the stored jump factors. Terms on the same
/// driver object covary; terms on different drivers are independent.
CovariationResult structural_covariation(const Semimartingale& x, const Semimartingale& y, double t);

/// [X](t) = [X, X^*](t).
CovariationResult structural_quadratic_variation(const Semimartingale& x, double t);

/// [X, Y^*](t) for C^d-valued paths.
CovariationResult structural_covariation(const VectorLevyPath& x, const VectorLevyPath& y, double t);
CovariationResult quadratic_variation(const VectorLevyPath& x, double t);

/// Quadratic variation of a matrix Levy path: closed-form continuous part per
/// Gaussian component plus sum of (lambda u u^*)(lambda u u^*)^*.
CovariationResult quadratic_variation(const MatrixLevyPath& path, double t);

/// sum_k (X_{k+1} - X_k)(Y_{k+1} - Y_k) over samples on a common grid.
ComplexMatrix realized_covariation(const std::vector<ComplexMatrix>& x_samples,
                                   const std::vector<ComplexMatrix>& y_samples);

/// Samples of a path at every grid point.
std::vector<ComplexMatrix> sample_on_grid(const Semimartingale& x, const std::vector<double>& grid);

struct BilinearityCheck {
  ComplexMatrix lhs;
  ComplexMatrix rhs;
  double discrepancy = 0.0;
};

/// [A X, Y C](t) against A [X, Y](t) C.
BilinearityCheck bilinearity_check(const ComplexMatrix& a, const Semimartingale& x, const Semimartingale& y,
                                   const ComplexMatrix& c, double t);

std::string to_string(CovariationMethod method);

}  // namespace matlevy
