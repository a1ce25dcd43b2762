#include <doctest.h>

#include <cmath>
#include <vector>

#include "matlevy/random.hpp"
#include "matlevy/scalar_levy.hpp"

using namespace matlevy;

namespace {

struct Moments {
  double mean = 0.0;
  double mean_se = 0.0;
  double second = 0.0;
  double second_se = 0.0;
};

template <typename Draw>
Moments moments(Draw draw, std::size_t count) {
  std::vector<double> xs(count);
  for (auto& x : xs) x = draw();
  Moments m;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  for (double x : xs) {
    s1 += x;
    s2 += x * x;
    s3 += x * x * x * x;
  }
  const double n = static_cast<double>(count);
  m.mean = s1 / n;
  m.second = s2 / n;
  for (double x : xs) s4 += (x - m.mean) * (x - m.mean);
  m.mean_se = std::sqrt(s4 / (n - 1.0) / n);
  m.second_se = std::sqrt(std::max(0.0, s3 / n - m.second * m.second) / n);
  return m;
}

std::vector<ScalarIDLaw> all_families() {
  return {ScalarIDLaw::gaussian(0.5, 2.0), ScalarIDLaw::poisson(2.0), ScalarIDLaw::gamma(3.0, 1.5),
          ScalarIDLaw::compound_poisson(1.5, NormalJump{0.3, 1.0}, -0.2),
          ScalarIDLaw::compound_poisson(2.0, ExponentialJump{2.0}, 0.0)};
}

}  // namespace

TEST_CASE("law construction validates parameters") {
  CHECK_THROWS_AS(ScalarIDLaw::poisson(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ScalarIDLaw::gamma(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ScalarIDLaw::gaussian(0.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(ScalarIDLaw::compound_poisson(0.0, DiracJump{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ScalarIDLaw::compound_poisson(1.0, ExponentialJump{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(ScalarIDLaw::compound_poisson(1.0, ConvolutionPowerJump{nullptr, 1.0}), std::invalid_argument);
}

TEST_CASE("sample_conv_power matches the convolution semigroup means") {
  Rng rng = make_rng(21);
  const std::size_t count = 100000;

  const auto g = moments([&] { return sample_conv_power(ScalarIDLaw::gaussian(1.0, 2.0), 0.3, rng); }, count);
  CHECK(std::abs(g.mean - 0.3) < 3.0 * g.mean_se);

  const auto p = moments([&] { return sample_conv_power(ScalarIDLaw::poisson(2.0), 0.5, rng); }, count);
  CHECK(std::abs(p.mean - 1.0) < 3.0 * p.mean_se);

  const auto ga = moments([&] { return sample_conv_power(ScalarIDLaw::gamma(3.0, 1.0), 1.0 / 3.0, rng); }, count);
  CHECK(std::abs(ga.mean - 1.0) < 3.0 * ga.mean_se);

  CHECK_THROWS_AS(sample_conv_power(ScalarIDLaw::poisson(1.0), 0.0, rng), std::invalid_argument);
}

TEST_CASE("semigroup property: sample(s) + sample(t) has the moments of sample(s + t)") {
  Rng rng = make_rng(22);
  const std::size_t count = 100000;
  const double s = 0.4, t = 0.9;
  for (const ScalarIDLaw& law : all_families()) {
    CAPTURE(law.family_name());
    const auto split = moments([&] { return sample_conv_power(law, s, rng) + sample_conv_power(law, t, rng); }, count);
    const auto joint = moments([&] { return sample_conv_power(law, s + t, rng); }, count);
    CHECK(std::abs(split.mean - joint.mean) < 4.0 * std::hypot(split.mean_se, joint.mean_se));
    CHECK(std::abs(split.second - joint.second) < 4.0 * std::hypot(split.second_se, joint.second_se));
  }
}

TEST_CASE("sample_jump") {
  Rng rng = make_rng(23);
  for (int k = 0; k < 10; ++k) CHECK(sample_jump(ScalarIDLaw::poisson(3.0), rng) == 1.0);
  CHECK(sample_jump(ScalarIDLaw::compound_poisson(2.0, DiracJump{1.5}), rng) == 1.5);
  CHECK_THROWS_AS(sample_jump(ScalarIDLaw::gamma(1.0, 1.0), rng), std::domain_error);
  CHECK_THROWS_AS(sample_jump(ScalarIDLaw::gaussian(0.0, 1.0), rng), std::domain_error);
}

TEST_CASE("levy measure descriptors") {
  CHECK(ScalarIDLaw::gaussian(0.0, 1.0).levy_measure().total_mass == 0.0);
  CHECK(ScalarIDLaw::poisson(2.5).levy_measure().total_mass == 2.5);
  CHECK(std::isinf(ScalarIDLaw::gamma(1.0, 1.0).levy_measure().total_mass));
  CHECK_FALSE(ScalarIDLaw::gamma(1.0, 1.0).finite_activity());
  const auto support = ScalarIDLaw::compound_poisson(1.0, NormalJump{0.0, 1.0}).levy_measure().sign_support;
  CHECK(support.positive);
  CHECK(support.negative);
}

TEST_CASE("triplet drift uses the r / (1 + r^2) centering") {
  Rng rng = make_rng(24);
  CHECK(triplet(ScalarIDLaw::gaussian(0.7, 2.0), rng).drift == 0.7);
  CHECK(triplet(ScalarIDLaw::gaussian(0.7, 2.0), rng).gaussian_variance == 2.0);
  CHECK(triplet(ScalarIDLaw::poisson(3.0), rng).drift == doctest::Approx(1.5));
  CHECK(triplet(ScalarIDLaw::compound_poisson(2.0, DiracJump{2.0}, 0.1), rng).drift == doctest::Approx(0.1 + 2.0 * 0.4));
  // shape * int_0^inf e^{-r} / (1 + r^2) dr for shape = rate = 1.
  CHECK(triplet(ScalarIDLaw::gamma(1.0, 1.0), rng).drift == doctest::Approx(0.6214496242358134).epsilon(1e-8));

  const ScalarTriplet mc = triplet(ScalarIDLaw::compound_poisson(1.0, NormalJump{0.0, 1.0}), rng, 100000);
  CHECK(mc.drift_standard_error > 0.0);
  CHECK(std::abs(mc.drift) < 4.0 * mc.drift_standard_error);
}

TEST_CASE("discretize") {
  Rng rng = make_rng(25);
  const ScalarIDLaw d4 = discretize(ScalarIDLaw::gaussian(0.0, 1.0), 4);
  REQUIRE(d4.is<CompoundPoissonLaw>());
  CHECK(d4.as<CompoundPoissonLaw>().rate == 4.0);
  CHECK(d4.levy_measure().total_mass == 4.0);
  CHECK(d4.path_drift() == 0.0);
  // Second moment of nu^4 = 4 E[beta^2] with beta ~ N(0, 1/4).
  const Estimate full = small_jump_second_moment(d4, 1e6, 200000, rng);
  CHECK(std::abs(full.value - 1.0) < 4.0 * full.standard_error);

  const ScalarTriplet t100 = triplet(discretize(ScalarIDLaw::gaussian(0.0, 1.0), 100), rng, 100000);
  CHECK(t100.gaussian_variance == 0.0);
  CHECK(std::abs(t100.drift) < 3.0 * t100.drift_standard_error);

  const ScalarIDLaw p = discretize(ScalarIDLaw::poisson(2.0), 10);
  for (int k = 0; k < 100; ++k) {
    const double beta = sample_jump(p, rng);
    CHECK(beta == std::floor(beta));
    CHECK(beta >= 0.0);
  }
  CHECK_THROWS_AS(discretize(ScalarIDLaw::poisson(1.0), 0), std::invalid_argument);
}

TEST_CASE("small_jump_second_moment") {
  Rng rng = make_rng(26);
  const Estimate g = small_jump_second_moment(discretize(ScalarIDLaw::gaussian(0.0, 1.0), 100), 1.0, 1000000, rng);
  CHECK(std::abs(g.value - 1.0) < 0.05);

  const Estimate p = small_jump_second_moment(discretize(ScalarIDLaw::poisson(1.0), 100), 0.5, 100000, rng);
  CHECK(p.value == 0.0);

  CHECK_THROWS_AS(small_jump_second_moment(discretize(ScalarIDLaw::poisson(1.0), 2), 1.0, 99, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(small_jump_second_moment(ScalarIDLaw::gamma(1.0, 1.0), 1.0, 1000, rng), std::domain_error);
}

TEST_CASE("small jump moment of a Gaussian approaches its variance as n grows") {
  Rng rng = make_rng(27);
  const double a2 = 2.0;
  const ScalarIDLaw law = ScalarIDLaw::gaussian(0.0, a2);
  const Estimate e1 = small_jump_second_moment(discretize(law, 1), 1.0, 400000, rng);
  const Estimate e10 = small_jump_second_moment(discretize(law, 10), 1.0, 400000, rng);
  const Estimate e100 = small_jump_second_moment(discretize(law, 100), 1.0, 400000, rng);
  CHECK(std::abs(e10.value - a2) + 3.0 * e10.standard_error < std::abs(e1.value - a2));
  CHECK(std::abs(e100.value - a2) < std::abs(e10.value - a2) + 3.0 * e100.standard_error);
  CHECK(std::abs(e100.value - a2) < 3.0 * e100.standard_error + 1e-3);
}

TEST_CASE("weak_convergence_probe") {
  Rng rng = make_rng(28);
  const auto step = [](double r) { return r >= 0.5 ? 1.0 : 0.0; };
  const WeakConvergenceProbe p = weak_convergence_probe(ScalarIDLaw::poisson(2.0), 200, step, 0.5, 200000, rng);
  CHECK(p.reference.value == 2.0);
  CHECK(std::abs(p.approximate.value - 2.0) < 0.02 + 4.0 * p.approximate.standard_error);

  const auto tail = [](double r) { return std::abs(r) > 1.0 ? r * r : 0.0; };
  const WeakConvergenceProbe g = weak_convergence_probe(ScalarIDLaw::gaussian(0.0, 1.0), 100, tail, 1.0, 100000, rng);
  CHECK(g.reference.value == 0.0);
  CHECK(g.approximate.value < 1e-3);

  const auto above_one = [](double r) { return r > 1.0 ? 1.0 : 0.0; };
  const WeakConvergenceProbe c =
      weak_convergence_probe(ScalarIDLaw::compound_poisson(2.0, DiracJump{1.5}), 100, above_one, 1.0, 100000, rng);
  CHECK(c.reference.value == 2.0);
  CHECK(std::abs(c.approximate.value - 2.0) < 0.05 + 4.0 * c.approximate.standard_error);

  const auto smooth = [](double r) { return std::max(0.0, r - 1.0) / (1.0 + r); };
  const WeakConvergenceProbe gamma = weak_convergence_probe(ScalarIDLaw::gamma(1.0, 1.0), 400, smooth, 1.0, 200000, rng);
  CHECK(std::abs(gamma.approximate.value - gamma.reference.value) < 4.0 * gamma.approximate.standard_error + 5e-3);

  CHECK_THROWS_AS(weak_convergence_probe(ScalarIDLaw::poisson(1.0), 10, [](double) { return 1.0; }, 0.5, 100, rng),
                  std::invalid_argument);
}

TEST_CASE("is_positive_subordinator_spec") {
  const SubordinatorCheck p = is_positive_subordinator_spec(ScalarIDLaw::poisson(1.0));
  CHECK(p.is_subordinator);
  CHECK(p.uncentered_drift == 0.0);
  CHECK_FALSE(is_positive_subordinator_spec(ScalarIDLaw::gaussian(0.0, 1.0)).is_subordinator);
  CHECK_FALSE(is_positive_subordinator_spec(ScalarIDLaw::compound_poisson(1.0, NormalJump{0.0, 1.0})).is_subordinator);
  CHECK(is_positive_subordinator_spec(ScalarIDLaw::gamma(2.0, 1.0)).is_subordinator);
  CHECK_FALSE(is_positive_subordinator_spec(ScalarIDLaw::compound_poisson(1.0, DiracJump{1.0}, -0.5)).is_subordinator);
}
