#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace matlevy {

using Complex = std::complex<double>;
using Index = Eigen::Index;

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Random source used by every sampler. One instance per task; never shared
/// across threads.
using Rng = std::mt19937_64;

/// Monte Carlo estimate with its standard error.
struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
};

struct ComplexEstimate {
  Complex value{0.0, 0.0};
  double standard_error = 0.0;
};

}  // namespace matlevy
