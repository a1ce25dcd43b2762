#include "matlevy/random.hpp"

#include <stdexcept>

namespace matlevy {

double standard_normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

Complex complex_normal(Rng& rng, double variance) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * variance));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

ComplexMatrix complex_normal_matrix(Index rows, Index cols, Rng& rng, double variance) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * variance));
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      m(i, j) = Complex(re, normal(rng));
    }
  }
  return m;
}

ComplexVector sample_uniform_sphere(Index d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("sample_uniform_sphere: d must be >= 1");
  std::normal_distribution<double> normal;
  ComplexVector z(d);
  double n = 0.0;
  do {
    for (Index i = 0; i < d; ++i) {
      const double re = normal(rng);
      z(i) = Complex(re, normal(rng));
    }
    n = z.norm();
  } while (n == 0.0);
  return z / n;
}

ComplexMatrix sample_haar_unitary(Index d, Rng& rng) {
  const ComplexMatrix g = complex_normal_matrix(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double m = std::abs(rjj);
    if (m > 0.0) q.col(j) *= rjj / m;
  }
  return q;
}

}  // namespace matlevy
