#include <doctest.h>

#include <cmath>
#include <vector>

#include "matlevy/matpath.hpp"
#include "matlevy/random.hpp"
#include "support.hpp"

using namespace matlevy;

namespace {

struct MeanVar {
  double mean = 0.0;
  double var = 0.0;
  double mean_se = 0.0;
  double var_se = 0.0;
};

MeanVar mean_var(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  MeanVar m;
  for (double x : xs) m.mean += x;
  m.mean /= n;
  double m4 = 0.0;
  for (double x : xs) {
    const double c = (x - m.mean) * (x - m.mean);
    m.var += c;
    m4 += c * c;
  }
  m.var /= n - 1.0;
  m4 /= n;
  m.mean_se = std::sqrt(m.var / n);
  m.var_se = std::sqrt(std::max(0.0, m4 - m.var * m.var) / n);
  return m;
}

const std::vector<double> kUnitGrid{0.0, 1.0};

}  // namespace

TEST_CASE("sample_uniform_sphere") {
  Rng rng = make_rng(31);
  const Index d = 4;
  std::vector<double> first;
  for (int k = 0; k < 100000; ++k) {
    const ComplexVector u = sample_uniform_sphere(d, rng);
    if (k < 100) CHECK(std::abs(u.norm() - 1.0) < 1e-12);
    first.push_back(std::norm(u(0)));
  }
  const MeanVar m = mean_var(first);
  CHECK(std::abs(m.mean - 1.0 / d) < 3.0 * m.mean_se);

  RealVector diag(2);
  diag << 1.0, 0.0;
  const SphereMomentProbe p = sphere_quadratic_moment(HermitianMatrix::diagonal(diag), 100000, rng);
  CHECK(p.reference == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs(p.estimate.value - p.reference) < 3.0 * p.estimate.standard_error);
  CHECK_THROWS_AS(sample_uniform_sphere(0, rng), std::invalid_argument);
}

TEST_CASE("sample_jump_times") {
  Rng rng = make_rng(32);
  double total = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const auto times = sample_jump_times(5.0, 2.0, rng);
    for (std::size_t i = 0; i < times.size(); ++i) {
      CHECK(times[i] > 0.0);
      CHECK(times[i] <= 2.0);
      if (i > 0) CHECK(times[i] > times[i - 1]);
    }
    total += static_cast<double>(times.size());
  }
  CHECK(total / 2000.0 == doctest::Approx(10.0).epsilon(0.03));
  CHECK(sample_jump_times(0.0, 1.0, rng).empty());
}

TEST_CASE("BGCD Gaussian part") {
  Rng rng = make_rng(33);
  const MatrixLevyPath zero = sample_bgcd_gaussian_part(3, 0.0, kUnitGrid, rng);
  CHECK(evaluate_path(zero, 1.0).norm() == 0.0);

  std::vector<double> scalar;
  for (int k = 0; k < 10000; ++k) {
    scalar.push_back(evaluate_path(sample_bgcd_gaussian_part(1, 2.0, kUnitGrid, rng), 1.0)(0, 0).real());
  }
  const MeanVar s = mean_var(scalar);
  CHECK(std::abs(s.var - 2.0) < 3.0 * s.var_se);
  CHECK(std::abs(s.mean) < 3.0 * s.mean_se);

  RealVector diag(2);
  diag << 1.0, 0.0;
  const HermitianMatrix theta = HermitianMatrix::diagonal(diag);
  std::vector<double> traces;
  for (int k = 0; k < 10000; ++k) {
    const ComplexMatrix m = evaluate_path(sample_bgcd_gaussian_part(2, 1.0, kUnitGrid, rng), 1.0);
    CHECK(hermitian_defect(m) <= 1e-12 * (1.0 + m.norm()));
    traces.push_back((theta.matrix() * m).trace().real());
  }
  const MeanVar t = mean_var(traces);
  CHECK(std::abs(t.var - 2.0 / 3.0) < 3.0 * t.var_se);
}

TEST_CASE("BGCD Gaussian covariance operator for a general theta") {
  Rng rng = make_rng(34);
  const Index d = 3;
  const HermitianMatrix theta(testing::random_hermitian(d, rng));
  const double tr = theta.trace().real();
  const double expected = 0.5 * ((theta.matrix() * theta.matrix()).trace().real() + tr * tr) / (d + 1);
  const std::vector<double> grid = uniform_grid(0.5, 0.25);
  std::vector<double> traces;
  for (int k = 0; k < 20000; ++k) {
    traces.push_back((theta.matrix() * evaluate_path(sample_bgcd_gaussian_part(d, 1.0, grid, rng), 0.5)).trace().real());
  }
  const MeanVar m = mean_var(traces);
  CHECK(std::abs(m.var - expected) < 4.0 * m.var_se);
}

TEST_CASE("BGCD compound Poisson part") {
  Rng rng = make_rng(35);
  const MatrixLevyPath drift_only =
      sample_bgcd_compound_poisson(3, ScalarIDLaw::gaussian(0.0, 1.0), 1.0, 2.0, RateScaling::esd_consistent, rng);
  CHECK(drift_only.jumps().empty());
  CHECK((evaluate_path(drift_only, 1.5) - 1.5 * ComplexMatrix::Identity(3, 3)).norm() < 1e-15);

  const Index d = 5;
  double count = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const MatrixLevyPath m =
        sample_bgcd_compound_poisson(d, ScalarIDLaw::poisson(1.0), 0.0, 1.0, RateScaling::esd_consistent, rng);
    count += static_cast<double>(m.jumps().size());
    for (const TimedRankOne& j : m.jumps()) CHECK(j.jump.eigenvalue == 1.0);
  }
  CHECK(count / 2000.0 == doctest::Approx(static_cast<double>(d)).epsilon(0.03));

  double literal = 0.0;
  for (int k = 0; k < 2000; ++k) {
    literal += static_cast<double>(
        sample_bgcd_compound_poisson(d, ScalarIDLaw::poisson(1.0), 0.0, 1.0, RateScaling::paper_literal, rng).jumps().size());
  }
  CHECK(literal / 2000.0 == doctest::Approx(1.0).epsilon(0.08));

  const ScalarIDLaw cp = ScalarIDLaw::compound_poisson(3.0, NormalJump{0.5, 1.0});
  for (int k = 0; k < 20; ++k) {
    const double psi = 0.3, horizon = 1.5;
    const MatrixLevyPath m = sample_bgcd_compound_poisson(d, cp, psi, horizon, RateScaling::esd_consistent, rng);
    double beta_sum = 0.0;
    for (const TimedRankOne& j : m.jumps()) beta_sum += j.jump.eigenvalue;
    const ComplexMatrix value = evaluate_path(m, horizon);
    CHECK(std::abs(value.trace().real() - (psi * horizon * d + beta_sum)) < 1e-10 * (1.0 + std::abs(beta_sum)));
    CHECK(hermitian_defect(value) <= 1e-12 * (1.0 + value.norm()));
  }
  CHECK_THROWS_AS(sample_bgcd_compound_poisson(2, ScalarIDLaw::gamma(1.0, 1.0), 0.0, 1.0, RateScaling::esd_consistent, rng),
                  std::domain_error);
}

TEST_CASE("sample_bgcd_approx") {
  Rng rng = make_rng(36);
  const BgcdApproximation a = sample_bgcd_approx(3, ScalarIDLaw::gaussian(0.0, 1.0), 10, 1.0, kUnitGrid,
                                                 RateScaling::esd_consistent, rng);
  CHECK_FALSE(a.x.driver());
  CHECK_FALSE(a.y.driver());
  CHECK(a.x.jumps().size() == a.m.jumps().size());

  const BgcdApproximation p = sample_bgcd_approx(3, ScalarIDLaw::poisson(2.0), 5, 1.0, kUnitGrid,
                                                 RateScaling::esd_consistent, rng);
  REQUIRE(p.x.jumps().size() == p.y.jumps().size());
  for (std::size_t k = 0; k < p.x.jumps().size(); ++k) {
    CHECK(p.x.jumps()[k].time == p.y.jumps()[k].time);
    CHECK((p.x.jumps()[k].jump - p.y.jumps()[k].jump).norm() == 0.0);
    CHECK(p.m.jumps()[k].jump.eigenvalue > 0.0);
  }

  const BgcdApproximation drifted = sample_bgcd_approx(2, ScalarIDLaw::gaussian(-0.5, 1.0), 4, 1.0, kUnitGrid,
                                                       RateScaling::esd_consistent, rng);
  REQUIRE(drifted.x.driver());
  CHECK(drifted.x.driver() == drifted.y.driver());
  CHECK((drifted.x.loading() + drifted.y.loading()).norm() < 1e-15);
  CHECK((evaluate_path(drifted.m, 0.0)).norm() == 0.0);

  CHECK_THROWS_AS(sample_bgcd_approx(2, ScalarIDLaw::poisson(1.0), 0, 1.0, kUnitGrid, RateScaling::esd_consistent, rng),
                  std::invalid_argument);
}

TEST_CASE("evaluate_path") {
  Rng rng = make_rng(37);
  MatrixLevyPath path(3, 2.0);
  const ComplexMatrix drift = testing::random_hermitian(3, rng);
  path.set_drift(HermitianMatrix(drift));
  CHECK(evaluate_path(path, 0.0).norm() == 0.0);
  CHECK((evaluate_path(path, 1.0) - drift).norm() < 1e-15);

  MatrixLevyPath jumps(4, 1.0);
  ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
  for (int k = 1; k <= 600; ++k) {
    const ComplexVector u = sample_uniform_sphere(4, rng);
    const double lambda = standard_normal(rng) + 3.0;
    jumps.add_jump(k / 600.0, RankOneHermitian(lambda, u));
    sum += lambda * u * u.adjoint();
    if (k == 300) CHECK((evaluate_path(jumps, 0.5) - sum).norm() < 1e-12);
  }
  CHECK((evaluate_path(jumps, 1.0) - sum).norm() < 1e-10);
  CHECK_THROWS_AS(evaluate_path(jumps, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(jumps.add_jump(0.5, RankOneHermitian(1.0, ComplexVector::Ones(4))), std::invalid_argument);
}

TEST_CASE("subordinator paths are increasing in the PSD order") {
  Rng rng = make_rng(38);
  for (int k = 0; k < 100; ++k) {
    const Index d = 1 + k % 5;
    MatrixLevyPath path(d, 1.0);
    path.set_drift(HermitianMatrix(testing::random_psd(d, rng)));
    for (double t : sample_jump_times(10.0, 1.0, rng)) {
      path.add_jump(t, RankOneHermitian(0.1 + uniform01(rng), sample_uniform_sphere(d, rng)));
    }
    double t1 = uniform01(rng), t2 = uniform01(rng);
    if (t1 > t2) std::swap(t1, t2);
    const HermitianMatrix diff(evaluate_path(path, t2) - evaluate_path(path, t1));
    CHECK(hermitian_eigenvalues(diff)(0) >= -1e-10);
  }
}

TEST_CASE("unitary invariance of the BGCD law") {
  Rng rng = make_rng(39);
  const Index d = 3;
  const ComplexMatrix u = sample_haar_unitary(d, rng);
  const HermitianMatrix theta(testing::random_hermitian(d, rng));
  const ScalarIDLaw law = ScalarIDLaw::compound_poisson(2.0, NormalJump{0.5, 1.0}, 0.2);
  std::vector<double> plain, rotated;
  for (int k = 0; k < 40000; ++k) {
    const ComplexMatrix m = evaluate_path(sample_bgcd_path(d, law, 1.0, kUnitGrid, RateScaling::esd_consistent, rng), 1.0);
    plain.push_back((theta.matrix() * m).trace().real());
    const ComplexMatrix m2 = evaluate_path(sample_bgcd_path(d, law, 1.0, kUnitGrid, RateScaling::esd_consistent, rng), 1.0);
    rotated.push_back((theta.matrix() * u * m2 * u.adjoint()).trace().real());
  }
  const MeanVar a = mean_var(plain), b = mean_var(rotated);
  CHECK(std::abs(a.mean - b.mean) < 4.0 * std::hypot(a.mean_se, b.mean_se));
  CHECK(std::abs(a.var - b.var) < 4.0 * std::hypot(a.var_se, b.var_se));
}

TEST_CASE("matrix_levy_exponent closed-form cases") {
  Rng rng = make_rng(40);
  const Index d = 2;
  BgcdTriplet gaussian;
  gaussian.gaussian_variance = 1.0;
  RealVector diag(2);
  diag << 1.0, 0.0;
  const ComplexEstimate g = matrix_levy_exponent(d, gaussian, HermitianMatrix::diagonal(diag), 1000, rng);
  CHECK(std::abs(g.value - Complex(-1.0 / 3.0, 0.0)) < 1e-15);

  BgcdTriplet drift_only;
  drift_only.drift = 0.7;
  const HermitianMatrix theta(testing::random_hermitian(3, rng));
  const ComplexEstimate e = matrix_levy_exponent(3, drift_only, theta, 1000, rng);
  CHECK(std::abs(e.value - Complex(0.0, 0.7 * theta.trace().real())) < 1e-15);

  const BgcdTriplet poisson = bgcd_triplet(3, ScalarIDLaw::poisson(1.0), RateScaling::esd_consistent, rng, 10000);
  const ComplexEstimate zero = matrix_levy_exponent(3, poisson, HermitianMatrix::zero(3), 1000, rng);
  CHECK(std::abs(zero.value) < 1e-15);
  CHECK_THROWS_AS(matrix_levy_exponent(3, poisson, theta, 999, rng), std::invalid_argument);
}

TEST_CASE("bgcd_triplet drift") {
  Rng rng = make_rng(41);
  // Poisson: psi = (rate / d) E[beta / (1 + beta^2)] = lambda / 2.
  const BgcdTriplet p = bgcd_triplet(4, ScalarIDLaw::poisson(2.0), RateScaling::esd_consistent, rng, 10000);
  CHECK(p.drift == doctest::Approx(1.0));
  CHECK(p.levy_mass == 2.0);
  const BgcdTriplet g = bgcd_triplet(4, ScalarIDLaw::gaussian(0.3, 2.0), RateScaling::esd_consistent, rng, 10000);
  CHECK(g.drift == 0.3);
  CHECK(g.gaussian_variance == 2.0);
  CHECK_THROWS_AS(bgcd_triplet(2, ScalarIDLaw::gamma(1.0, 1.0), RateScaling::esd_consistent, rng), std::domain_error);
}

TEST_CASE("characteristic function of a small compound Poisson ensemble") {
  Rng rng = make_rng(42);
  const Index d = 2;
  const ScalarIDLaw law = ScalarIDLaw::compound_poisson(1.5, NormalJump{0.5, 1.0}, 0.1);
  const HermitianMatrix theta(testing::random_hermitian(d, rng));
  const BgcdTriplet triplet = bgcd_triplet(d, law, RateScaling::esd_consistent, rng, 200000);
  const ComplexEstimate exponent = matrix_levy_exponent(d, triplet, theta, 200000, rng);
  const int replicas = 40000;
  Complex sum(0.0, 0.0);
  double sq = 0.0;
  for (int k = 0; k < replicas; ++k) {
    const ComplexMatrix m = evaluate_path(sample_bgcd_path(d, law, 1.0, kUnitGrid, RateScaling::esd_consistent, rng), 1.0);
    const Complex z = std::exp(Complex(0.0, (theta.matrix() * m).trace().real()));
    sum += z;
    sq += std::norm(z);
  }
  const Complex empirical = sum / static_cast<double>(replicas);
  const double se = std::sqrt((sq / replicas - std::norm(empirical)) / replicas);
  const Complex predicted = std::exp(exponent.value);
  const double combined = std::hypot(se, std::abs(predicted) * exponent.standard_error);
  CHECK(std::abs(empirical - predicted) < 4.0 * combined);
}
