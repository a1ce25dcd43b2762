#include "matlevy/matpath.hpp"

#include <cmath>
#include <stdexcept>

#include "matlevy/random.hpp"

namespace matlevy {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_driver(const std::shared_ptr<const BrownianDriver>& driver, Index rows, Index cols,
                    const char* what) {
  if (!driver || driver->rows() != rows || driver->cols() != cols) {
    throw std::invalid_argument(std::string("MatrixLevyPath: ") + what + " driver has the wrong shape");
  }
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// u^* Theta u for uniform u has the law of sum_k lambda_k |u_k|^2, so only
// the spectrum of Theta is needed.
double spectral_quadratic_form(const RealVector& lambda, const ComplexVector& u) {
  return (lambda.array() * u.array().abs2()).sum();
}

}  // namespace

MatrixLevyPath::MatrixLevyPath(Index d, double horizon)
    : d_(d), cols_(d), horizon_(horizon), drift_(ComplexMatrix::Zero(d, d)) {
  if (d < 1) throw std::invalid_argument("MatrixLevyPath: d must be >= 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("MatrixLevyPath: horizon must be a positive finite real");
  }
}

void MatrixLevyPath::set_drift(const HermitianMatrix& drift) {
  if (drift.dim() != d_ || cols_ != d_) throw std::invalid_argument("MatrixLevyPath: drift shape mismatch");
  drift_ = drift.matrix();
}

void MatrixLevyPath::set_general_drift(ComplexMatrix drift) {
  if (drift.rows() != d_ || drift.cols() != cols_) {
    throw std::invalid_argument("MatrixLevyPath: drift shape mismatch");
  }
  drift_ = std::move(drift);
}

void MatrixLevyPath::set_gaussian(GaussianComponentSpec spec,
                                  std::shared_ptr<const BrownianDriver> matrix_driver,
                                  std::shared_ptr<const BrownianDriver> scalar_driver) {
  Index cols = d_;
  std::visit(overloaded{
                 [&](const NoGaussian&) {
                   matrix_driver.reset();
                   scalar_driver.reset();
                 },
                 [&](const BgcdGaussian& g) {
                   if (!(g.a2 >= 0.0)) throw std::invalid_argument("BgcdGaussian: a2 must be >= 0");
                   require_driver(matrix_driver, d_, d_, "matrix");
                   require_driver(scalar_driver, 1, 1, "scalar");
                 },
                 [&](const KroneckerGaussian& k) {
                   if (k.sigma1.rows() != d_) throw std::invalid_argument("KroneckerGaussian: sigma1 must be d x d");
                   cols = k.sigma2.rows();
                   // Validates both covariance factors as PSD.
                   (void)PsdMatrix(HermitianMatrix(k.sigma1));
                   (void)PsdMatrix(HermitianMatrix(k.sigma2));
                   require_driver(matrix_driver, d_, cols, "matrix");
                   scalar_driver.reset();
                 },
                 [&](const ScalarIdentityGaussian&) {
                   require_driver(scalar_driver, 1, 1, "scalar");
                   matrix_driver.reset();
                 },
                 [&](const StandardGaussian& s) {
                   if (s.loading.rows() != d_ || s.loading.cols() != d_) {
                     throw std::invalid_argument("StandardGaussian: loading must be d x d");
                   }
                   require_driver(matrix_driver, d_, d_, "matrix");
                   scalar_driver.reset();
                 },
             },
             spec);
  if (cols != cols_) {
    if (!jumps_.empty()) throw std::invalid_argument("MatrixLevyPath: rectangular path cannot carry jumps");
    cols_ = cols;
    drift_ = ComplexMatrix::Zero(d_, cols_);
  }
  gaussian_ = std::move(spec);
  matrix_driver_ = std::move(matrix_driver);
  scalar_driver_ = std::move(scalar_driver);
}

void MatrixLevyPath::add_jump(double time, RankOneHermitian jump) {
  if (cols_ != d_) throw std::invalid_argument("MatrixLevyPath: rectangular path cannot carry jumps");
  if (jump.dim() != d_) throw std::invalid_argument("MatrixLevyPath: jump dimension mismatch");
  if (!(time > 0.0) || time > horizon_) throw std::invalid_argument("MatrixLevyPath: jump time outside (0, T]");
  if (!jumps_.empty() && !(time > jumps_.back().time)) {
    throw std::invalid_argument("MatrixLevyPath: jump times must be strictly increasing");
  }
  jumps_.push_back({time, std::move(jump)});
}

Semimartingale MatrixLevyPath::semimartingale() const {
  Semimartingale out(d_, cols_, horizon_);
  out.set_drift(drift_);
  const ComplexMatrix id = ComplexMatrix::Identity(d_, d_);
  const auto add_scalar_identity = [&](double scale) {
    out.add_term({scalar_driver_, DriverForm::plain, scale * kInvSqrt2 * id, id, d_});
    out.add_term({scalar_driver_, DriverForm::conjugate, scale * kInvSqrt2 * id, id, d_});
  };
  std::visit(overloaded{
                 [](const NoGaussian&) {},
                 [&](const BgcdGaussian& g) {
                   const double c = std::sqrt(g.a2 / static_cast<double>(d_ + 1));
                   out.add_term({matrix_driver_, DriverForm::plain, c * kInvSqrt2 * id, id, 1});
                   out.add_term({matrix_driver_, DriverForm::adjoint, c * kInvSqrt2 * id, id, 1});
                   add_scalar_identity(c);
                 },
                 [&](const KroneckerGaussian& k) {
                   out.add_term({matrix_driver_, DriverForm::plain,
                                 psd_sqrt(PsdMatrix(HermitianMatrix(k.sigma1))).matrix(),
                                 psd_sqrt(PsdMatrix(HermitianMatrix(k.sigma2))).matrix(), 1});
                 },
                 [&](const ScalarIdentityGaussian&) { add_scalar_identity(1.0); },
                 [&](const StandardGaussian& s) {
                   out.add_term({matrix_driver_, DriverForm::plain, s.loading, id, 1});
                 },
             },
             gaussian_);
  for (const TimedRankOne& j : jumps_) {
    out.add_jump({j.time, j.jump.eigenvalue * j.jump.direction, j.jump.direction.conjugate()});
  }
  return out;
}

VectorLevyPath::VectorLevyPath(Index d, double horizon)
    : d_(d), horizon_(horizon), drift_(ComplexVector::Zero(d)), loading_(ComplexMatrix::Zero(d, d)) {
  if (d < 1) throw std::invalid_argument("VectorLevyPath: d must be >= 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("VectorLevyPath: horizon must be a positive finite real");
  }
}

void VectorLevyPath::set_drift(ComplexVector drift) {
  if (drift.size() != d_) throw std::invalid_argument("VectorLevyPath: drift dimension mismatch");
  drift_ = std::move(drift);
}

void VectorLevyPath::set_brownian(ComplexMatrix loading, std::shared_ptr<const BrownianDriver> driver) {
  if (loading.rows() != d_ || loading.cols() != d_) {
    throw std::invalid_argument("VectorLevyPath: loading must be d x d");
  }
  if (!driver || driver->rows() != d_ || driver->cols() != 1) {
    throw std::invalid_argument("VectorLevyPath: driver must be a d x 1 Brownian motion");
  }
  loading_ = std::move(loading);
  driver_ = std::move(driver);
}

void VectorLevyPath::add_jump(double time, ComplexVector jump) {
  if (jump.size() != d_) throw std::invalid_argument("VectorLevyPath: jump dimension mismatch");
  if (!(time > 0.0) || time > horizon_) throw std::invalid_argument("VectorLevyPath: jump time outside (0, T]");
  if (!jumps_.empty() && !(time > jumps_.back().time)) {
    throw std::invalid_argument("VectorLevyPath: jump times must be strictly increasing");
  }
  jumps_.push_back({time, std::move(jump)});
}

Semimartingale VectorLevyPath::semimartingale() const {
  Semimartingale out(d_, 1, horizon_);
  out.set_drift(drift_);
  if (driver_) out.add_term({driver_, DriverForm::plain, loading_, ComplexMatrix::Identity(1, 1), 1});
  const ComplexVector one = ComplexVector::Ones(1);
  for (const TimedVector& j : jumps_) out.add_jump({j.time, j.jump, one});
  return out;
}

ComplexMatrix evaluate_path(const MatrixLevyPath& path, double t) {
  if (t < 0.0 || t > path.horizon() * (1.0 + 1e-12)) {
    throw std::invalid_argument("evaluate_path: time outside [0, T]");
  }
  const Index d = path.dim();
  ComplexMatrix value = path.drift() * t;
  std::visit(overloaded{
                 [](const NoGaussian&) {},
                 [&](const BgcdGaussian& g) {
                   const double c = std::sqrt(g.a2 / static_cast<double>(d + 1));
                   const ComplexMatrix& w = path.matrix_driver()->value_at(t);
                   const double scalar = std::sqrt(2.0) * path.scalar_driver()->value_at(t)(0, 0).real();
                   value += c * kInvSqrt2 * (w + w.adjoint());
                   value.diagonal().array() += c * scalar;
                 },
                 [&](const KroneckerGaussian& k) {
                   value += psd_sqrt(PsdMatrix(HermitianMatrix(k.sigma1))).matrix() *
                            path.matrix_driver()->value_at(t) *
                            psd_sqrt(PsdMatrix(HermitianMatrix(k.sigma2))).matrix();
                 },
                 [&](const ScalarIdentityGaussian&) {
                   value.diagonal().array() += std::sqrt(2.0) * path.scalar_driver()->value_at(t)(0, 0).real();
                 },
                 [&](const StandardGaussian& s) { value += s.loading * path.matrix_driver()->value_at(t); },
             },
             path.gaussian());
  // Jumps are accumulated blockwise as U diag(lambda) U^*.
  constexpr Index kBlock = 256;
  const auto& jumps = path.jumps();
  ComplexMatrix u(d, kBlock), scaled(d, kBlock);
  std::size_t k = 0;
  while (k < jumps.size() && jumps[k].time <= t) {
    Index filled = 0;
    for (; filled < kBlock && k < jumps.size() && jumps[k].time <= t; ++filled, ++k) {
      u.col(filled) = jumps[k].jump.direction;
      scaled.col(filled) = jumps[k].jump.eigenvalue * jumps[k].jump.direction;
    }
    value.noalias() += scaled.leftCols(filled) * u.leftCols(filled).adjoint();
  }
  return value;
}

ComplexVector evaluate_path(const VectorLevyPath& path, double t) {
  if (t < 0.0 || t > path.horizon() * (1.0 + 1e-12)) {
    throw std::invalid_argument("evaluate_path: time outside [0, T]");
  }
  ComplexVector value = path.drift() * t;
  if (path.driver()) value += path.loading() * path.driver()->value_at(t).col(0);
  for (const TimedVector& j : path.jumps()) {
    if (j.time > t) break;
    value += j.jump;
  }
  return value;
}

double clock_rate(RateScaling scaling, Index d, double levy_mass) {
  return scaling == RateScaling::esd_consistent ? static_cast<double>(d) * levy_mass : levy_mass;
}

std::vector<double> sample_jump_times(double rate, double horizon, Rng& rng) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw std::invalid_argument("sample_jump_times: invalid rate");
  std::vector<double> times;
  if (rate == 0.0) return times;
  std::exponential_distribution<double> spacing(rate);
  double t = 0.0;
  while (true) {
    double next = t + spacing(rng);
    // A spacing below double resolution would produce a tie; draw again.
    while (next == t) next = t + spacing(rng);
    if (next > horizon) break;
    times.push_back(next);
    t = next;
  }
  return times;
}

MatrixLevyPath sample_bgcd_gaussian_part(Index d, double a2, const std::vector<double>& grid, Rng& rng) {
  if (!(a2 >= 0.0)) throw std::invalid_argument("sample_bgcd_gaussian_part: a2 must be >= 0");
  MatrixLevyPath path(d, grid.back());
  auto matrix_driver = BrownianDriver::sample(d, d, grid, rng);
  auto scalar_driver = BrownianDriver::sample(1, 1, grid, rng);
  path.set_gaussian(BgcdGaussian{a2}, std::move(matrix_driver), std::move(scalar_driver));
  return path;
}

namespace {

void add_compound_poisson_jumps(MatrixLevyPath& path, const std::function<double(Rng&)>& beta_sampler,
                                double rate, Rng& rng) {
  const Index d = path.dim();
  for (double time : sample_jump_times(rate, path.horizon(), rng)) {
    const double beta = beta_sampler(rng);
    ComplexVector u = sample_uniform_sphere(d, rng);
    if (beta == 0.0) continue;  // a zero jump is no jump
    path.add_jump(time, RankOneHermitian(beta, std::move(u)));
  }
}

}  // namespace

MatrixLevyPath sample_bgcd_compound_poisson(Index d, const ScalarIDLaw& law, double drift, double horizon,
                                            RateScaling scaling, Rng& rng) {
  const LevyMeasureDescriptor nu = law.levy_measure();
  if (!nu.finite()) throw std::domain_error("sample_bgcd_compound_poisson: law has infinite activity");
  MatrixLevyPath path(d, horizon);
  path.set_drift(HermitianMatrix(drift * ComplexMatrix::Identity(d, d)));
  if (nu.total_mass > 0.0) {
    add_compound_poisson_jumps(path, nu.jump_sampler, clock_rate(scaling, d, nu.total_mass), rng);
  }
  return path;
}

MatrixLevyPath sample_bgcd_path(Index d, const ScalarIDLaw& law, double horizon,
                                const std::vector<double>& grid, RateScaling scaling, Rng& rng) {
  const LevyMeasureDescriptor nu = law.levy_measure();
  if (!nu.finite()) {
    throw std::domain_error("sample_bgcd_path: infinite-activity law needs the compound Poisson approximation");
  }
  if (grid.empty() || std::abs(grid.back() - horizon) > 1e-12 * horizon) {
    throw std::invalid_argument("sample_bgcd_path: grid must end at the horizon");
  }
  MatrixLevyPath path(d, horizon);
  path.set_drift(HermitianMatrix(law.path_drift() * ComplexMatrix::Identity(d, d)));
  const double a2 = law.gaussian_variance();
  if (a2 > 0.0) {
    auto matrix_driver = BrownianDriver::sample(d, d, grid, rng);
    auto scalar_driver = BrownianDriver::sample(1, 1, grid, rng);
    path.set_gaussian(BgcdGaussian{a2}, std::move(matrix_driver), std::move(scalar_driver));
  }
  if (nu.total_mass > 0.0) {
    add_compound_poisson_jumps(path, nu.jump_sampler, clock_rate(scaling, d, nu.total_mass), rng);
  }
  return path;
}

BgcdApproximation sample_bgcd_approx(Index d, const ScalarIDLaw& law, int n, double horizon,
                                     const std::vector<double>& grid, RateScaling scaling, Rng& rng,
                                     bool build_vector_paths) {
  if (n < 1) throw std::invalid_argument("sample_bgcd_approx: n must be >= 1");
  const double psi = law.path_drift();
  const double sign_psi = (psi > 0.0) - (psi < 0.0);
  BgcdApproximation out{VectorLevyPath(d, horizon), VectorLevyPath(d, horizon), MatrixLevyPath(d, horizon)};
  out.m.set_drift(HermitianMatrix(psi * ComplexMatrix::Identity(d, d)));
  if (build_vector_paths && psi != 0.0) {
    auto driver = BrownianDriver::sample(d, 1, grid, rng);
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    out.x.set_brownian(std::sqrt(std::abs(psi)) * id, driver);
    out.y.set_brownian(sign_psi * std::sqrt(std::abs(psi)) * id, driver);
  }
  const double t = 1.0 / n;
  for (double time : sample_jump_times(clock_rate(scaling, d, n), horizon, rng)) {
    const double beta = sample_conv_power(law, t, rng);
    ComplexVector u = canonical_phase(sample_uniform_sphere(d, rng));
    if (beta == 0.0) continue;
    if (build_vector_paths) {
      const double root = std::sqrt(std::abs(beta));
      out.x.add_jump(time, root * u);
      out.y.add_jump(time, (beta > 0.0 ? root : -root) * u);
    }
    out.m.add_jump(time, RankOneHermitian(beta, std::move(u)));
  }
  return out;
}

BgcdTriplet bgcd_triplet(Index d, const ScalarIDLaw& law, RateScaling scaling, Rng& rng,
                         std::size_t mc_samples) {
  const LevyMeasureDescriptor nu = law.levy_measure();
  if (!nu.finite()) throw std::domain_error("bgcd_triplet: law has infinite activity");
  BgcdTriplet out;
  out.gaussian_variance = law.gaussian_variance();
  out.levy_mass = nu.total_mass;
  out.jump_sampler = nu.jump_sampler;
  out.scaling = scaling;
  out.drift = law.path_drift();
  if (nu.total_mass > 0.0) {
    // int xi / (1 + ||xi||^2) nu_d(dxi) = rate E[beta / (1 + beta^2)] E[u u^*], E[u u^*] = I / d.
    const double rate = clock_rate(scaling, d, nu.total_mass);
    const ScalarTriplet scalar = triplet(law, rng, mc_samples);
    const double centering_mean = (scalar.drift - law.path_drift()) / nu.total_mass;
    out.drift += rate * centering_mean / static_cast<double>(d);
    out.drift_standard_error =
        rate * scalar.drift_standard_error / nu.total_mass / static_cast<double>(d);
  }
  return out;
}

ComplexEstimate matrix_levy_exponent(Index d, const BgcdTriplet& triplet, const HermitianMatrix& theta,
                                     std::size_t mc_samples, Rng& rng) {
  if (mc_samples < 1000) throw std::invalid_argument("matrix_levy_exponent: mc_samples must be >= 1000");
  if (theta.dim() != d) throw std::invalid_argument("matrix_levy_exponent: theta dimension mismatch");
  const ComplexMatrix& th = theta.matrix();
  const double tr = th.trace().real();
  const double tr_sq = (th * th).trace().real();
  ComplexEstimate out;
  out.value = Complex(0.0, triplet.drift * tr) -
              triplet.gaussian_variance / (2.0 * static_cast<double>(d + 1)) * (tr_sq + tr * tr);
  if (triplet.levy_mass <= 0.0) return out;
  if (!triplet.jump_sampler) throw std::invalid_argument("matrix_levy_exponent: missing jump sampler");

  const double rate = clock_rate(triplet.scaling, d, triplet.levy_mass);
  const RealVector lambda = hermitian_eigenvalues(theta);
  double sum_re = 0.0, sum_im = 0.0, sq_re = 0.0, sq_im = 0.0;
  for (std::size_t k = 0; k < mc_samples; ++k) {
    const double beta = triplet.jump_sampler(rng);
    const double q = spectral_quadratic_form(lambda, sample_uniform_sphere(d, rng));
    const double x = beta * q;
    const double re = std::cos(x) - 1.0;
    const double im = std::sin(x) - x / (1.0 + beta * beta);
    sum_re += re;
    sum_im += im;
    sq_re += re * re;
    sq_im += im * im;
  }
  const double n = static_cast<double>(mc_samples);
  const double mean_re = sum_re / n;
  const double mean_im = sum_im / n;
  const double var = std::max(0.0, (sq_re - n * mean_re * mean_re) / (n - 1.0)) +
                     std::max(0.0, (sq_im - n * mean_im * mean_im) / (n - 1.0));
  out.value += rate * Complex(mean_re, mean_im);
  const double jump_se = rate * std::sqrt(var / n);
  const double drift_se = std::abs(tr) * triplet.drift_standard_error;
  out.standard_error = std::sqrt(jump_se * jump_se + drift_se * drift_se);
  return out;
}

SphereMomentProbe sphere_quadratic_moment(const HermitianMatrix& theta, std::size_t mc_samples, Rng& rng) {
  if (mc_samples < 2) throw std::invalid_argument("sphere_quadratic_moment: need at least two samples");
  const Index d = theta.dim();
  const ComplexMatrix& th = theta.matrix();
  const RealVector lambda = hermitian_eigenvalues(theta);
  double sum = 0.0, sq = 0.0;
  for (std::size_t k = 0; k < mc_samples; ++k) {
    const double q = spectral_quadratic_form(lambda, sample_uniform_sphere(d, rng));
    sum += q * q;
    sq += q * q * q * q;
  }
  const double n = static_cast<double>(mc_samples);
  SphereMomentProbe probe;
  probe.estimate.value = sum / n;
  probe.estimate.standard_error = std::sqrt(std::max(0.0, (sq - n * probe.estimate.value * probe.estimate.value) / (n - 1.0)) / n);
  const double tr = theta.trace().real();
  probe.reference = ((th * th).trace().real() + tr * tr) / static_cast<double>(d * (d + 1));
  return probe;
}

}  // namespace matlevy
