#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "matlevy/hermitian.hpp"
#include "matlevy/scalar_levy.hpp"
#include "matlevy/semimartingale.hpp"

namespace matlevy {

// Gaussian components of a matrix Levy path.
struct NoGaussian {};
/// Covariance operator Theta -> a2 (Theta + tr(Theta) I) / (d + 1),
/// realized as (a / sqrt(d+1)) (B(t) + g(t) I) with B a Hermitian matrix
/// Brownian motion and g an independent real Brownian motion.
struct BgcdGaussian {
  double a2 = 1.0;
};
/// Sigma1^{1/2} W(t) Sigma2^{1/2} for a standard complex d x q Brownian W.
struct KroneckerGaussian {
  ComplexMatrix sigma1;
  ComplexMatrix sigma2;
};
/// g(t) I_d with g a real standard Brownian motion.
struct ScalarIdentityGaussian {};
/// loading * W(t) for a standard complex d x d Brownian W.
struct StandardGaussian {
  ComplexMatrix loading;
};

using GaussianComponentSpec =
    std::variant<NoGaussian, BgcdGaussian, KroneckerGaussian, ScalarIdentityGaussian, StandardGaussian>;

struct TimedRankOne {
  double time = 0.0;
  RankOneHermitian jump;
};

/// Structural sample path of a matrix Levy process: drift * t + Gaussian part
/// + rank-one jumps. All variants but Kronecker/Standard are Hermitian-valued.
class MatrixLevyPath {
 public:
  MatrixLevyPath(Index d, double horizon);

  Index dim() const { return d_; }
  Index cols() const { return cols_; }
  double horizon() const { return horizon_; }

  const ComplexMatrix& drift() const { return drift_; }
  const GaussianComponentSpec& gaussian() const { return gaussian_; }
  /// Drivers used by the Gaussian part: for BGCD the d x d matrix driver and
  /// the 1 x 1 scalar driver; for ScalarIdentity the scalar driver only.
  const std::shared_ptr<const BrownianDriver>& matrix_driver() const { return matrix_driver_; }
  const std::shared_ptr<const BrownianDriver>& scalar_driver() const { return scalar_driver_; }
  const std::vector<TimedRankOne>& jumps() const { return jumps_; }

  void set_drift(const HermitianMatrix& drift);
  void set_general_drift(ComplexMatrix drift);
  void set_gaussian(GaussianComponentSpec spec, std::shared_ptr<const BrownianDriver> matrix_driver,
                    std::shared_ptr<const BrownianDriver> scalar_driver);
  /// Jumps are appended in strictly increasing time order.
  void add_jump(double time, RankOneHermitian jump);

  Semimartingale semimartingale() const;

 private:
  Index d_;
  Index cols_;
  double horizon_;
  ComplexMatrix drift_;
  GaussianComponentSpec gaussian_ = NoGaussian{};
  std::shared_ptr<const BrownianDriver> matrix_driver_;
  std::shared_ptr<const BrownianDriver> scalar_driver_;
  std::vector<TimedRankOne> jumps_;
};

struct TimedVector {
  double time = 0.0;
  ComplexVector jump;
};

/// C^d-valued Levy path: drift * t + loading * B(t) + jumps.
class VectorLevyPath {
 public:
  VectorLevyPath(Index d, double horizon);

  Index dim() const { return d_; }
  double horizon() const { return horizon_; }
  const ComplexVector& drift() const { return drift_; }
  const ComplexMatrix& loading() const { return loading_; }
  const std::shared_ptr<const BrownianDriver>& driver() const { return driver_; }
  const std::vector<TimedVector>& jumps() const { return jumps_; }

  void set_drift(ComplexVector drift);
  /// `driver` must be a d x 1 standard complex Brownian motion.
  void set_brownian(ComplexMatrix loading, std::shared_ptr<const BrownianDriver> driver);
  void add_jump(double time, ComplexVector jump);

  /// d x 1 semimartingale.
  Semimartingale semimartingale() const;

 private:
  Index d_;
  double horizon_;
  ComplexVector drift_;
  ComplexMatrix loading_;
  std::shared_ptr<const BrownianDriver> driver_;
  std::vector<TimedVector> jumps_;
};

ComplexMatrix evaluate_path(const MatrixLevyPath& path, double t);
ComplexVector evaluate_path(const VectorLevyPath& path, double t);

/// Poisson clock rate of BGCD jumps: d nu(R) reproduces the polar Levy
/// measure with its factor d; nu(R) is the literal unit-rate clock.
enum class RateScaling { esd_consistent, paper_literal };

double clock_rate(RateScaling scaling, Index d, double levy_mass);

/// Ordered jump times of a Poisson process of `rate` on (0, horizon].
std::vector<double> sample_jump_times(double rate, double horizon, Rng& rng);

MatrixLevyPath sample_bgcd_gaussian_part(Index d, double a2, const std::vector<double>& grid, Rng& rng);

/// psi t I + sum_j beta_j u_j u_j^* with beta_j ~ nu / nu(R).
MatrixLevyPath sample_bgcd_compound_poisson(Index d, const ScalarIDLaw& law, double drift, double horizon,
                                            RateScaling scaling, Rng& rng);

/// Exact BGCD path for a law with finite activity or a pure Gaussian law:
/// drift psi I, Gaussian part a^2, compound Poisson jumps.
MatrixLevyPath sample_bgcd_path(Index d, const ScalarIDLaw& law, double horizon,
                                const std::vector<double>& grid, RateScaling scaling, Rng& rng);

struct BgcdApproximation {
  VectorLevyPath x;
  VectorLevyPath y;
  MatrixLevyPath m;
};

/// Compound Poisson approximation with jumps beta ~ law^{*1/n} on a clock of
/// rate d n (or n): X = sqrt|psi| B + sum sqrt|beta| u,
/// Y = sign(psi) sqrt|psi| B + sum sign(beta) sqrt|beta| u, M = psi t I + sum beta u u^*.
/// psi is the uncentered path drift of the law.
BgcdApproximation sample_bgcd_approx(Index d, const ScalarIDLaw& law, int n, double horizon,
                                     const std::vector<double>& grid, RateScaling scaling, Rng& rng,
                                     bool build_vector_paths = true);

/// Triplet of a BGCD matrix law: Gaussian variance a^2, centered scalar
/// drift psi and a finite scalar Levy measure nu whose jumps are spread over
/// uniformly distributed rank-one directions.
struct BgcdTriplet {
  double gaussian_variance = 0.0;
  double drift = 0.0;
  double drift_standard_error = 0.0;
  double levy_mass = 0.0;
  std::function<double(Rng&)> jump_sampler;
  RateScaling scaling = RateScaling::esd_consistent;
};

/// Triplet matching sample_bgcd_path(law); the drift is centered with
/// r / (1 + r^2) over the matrix Levy measure.
BgcdTriplet bgcd_triplet(Index d, const ScalarIDLaw& law, RateScaling scaling, Rng& rng,
                         std::size_t mc_samples = 200000);

/// Levy exponent log E exp(i tr(Theta M(1))), Monte Carlo over the jump part.
ComplexEstimate matrix_levy_exponent(Index d, const BgcdTriplet& triplet, const HermitianMatrix& theta,
                                     std::size_t mc_samples, Rng& rng);

struct SphereMomentProbe {
  Estimate estimate;
  double reference = 0.0;
};

/// E|u^* Theta u|^2 over uniform unit vectors u against its closed form
/// (tr Theta^2 + (tr Theta)^2) / (d (d + 1)).
SphereMomentProbe sphere_quadratic_moment(const HermitianMatrix& theta, std::size_t mc_samples, Rng& rng);

}  // namespace matlevy
