#pragma once

#include "matlevy/hermitian.hpp"
#include "matlevy/random.hpp"

namespace matlevy::testing {

inline ComplexMatrix random_hermitian(Index d, Rng& rng) {
  const ComplexMatrix a = complex_normal_matrix(d, d, rng);
  return 0.5 * (a + a.adjoint());
}

inline ComplexMatrix random_psd(Index d, Rng& rng) {
  const ComplexMatrix a = complex_normal_matrix(d, d, rng);
  return a * a.adjoint() / static_cast<double>(d);
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace matlevy::testing
