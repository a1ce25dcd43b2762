#include "matlevy/scalar_levy.hpp"

#include <numbers>
#include <stdexcept>

#include "matlevy/quadrature.hpp"
#include "matlevy/random.hpp"

namespace matlevy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate(const JumpLaw& jump) {
  std::visit(overloaded{
                 [](const DiracJump& j) {
                   if (!std::isfinite(j.value)) throw std::invalid_argument("dirac jump: non-finite value");
                 },
                 [](const NormalJump& j) {
                   if (!(j.sd >= 0.0)) throw std::invalid_argument("normal jump: sd must be >= 0");
                 },
                 [](const ExponentialJump& j) {
                   if (!(j.rate > 0.0)) throw std::invalid_argument("exponential jump: rate must be > 0");
                 },
                 [](const ConvolutionPowerJump& j) {
                   if (!j.base) throw std::invalid_argument("convolution power jump: missing base law");
                   if (!(j.t > 0.0)) throw std::invalid_argument("convolution power jump: t must be > 0");
                 },
             },
             jump);
}

SignSupport sign_of(double x) { return {x > 0.0, x < 0.0}; }

SignSupport conv_power_support(const ScalarIDLaw& law);

SignSupport jump_support(const JumpLaw& jump) {
  return std::visit(overloaded{
                        [](const DiracJump& j) { return sign_of(j.value); },
                        [](const NormalJump& j) {
                          return j.sd > 0.0 ? SignSupport{true, true} : sign_of(j.mean);
                        },
                        [](const ExponentialJump&) { return SignSupport{true, false}; },
                        [](const ConvolutionPowerJump& j) { return conv_power_support(*j.base); },
                    },
                    jump);
}

// Signs attained by samples of law^{*t}, t > 0 (zero excluded).
SignSupport conv_power_support(const ScalarIDLaw& law) {
  return std::visit(overloaded{
                        [](const GaussianLaw& g) {
                          return g.variance > 0.0 ? SignSupport{true, true} : sign_of(g.mean);
                        },
                        [](const PoissonLaw&) { return SignSupport{true, false}; },
                        [](const GammaLaw&) { return SignSupport{true, false}; },
                        [](const CompoundPoissonLaw& c) {
                          const SignSupport j = jump_support(c.jump);
                          return SignSupport{c.drift > 0.0 || j.positive, c.drift < 0.0 || j.negative};
                        },
                    },
                    law.family());
}

// Exact E[g(J)] when J is a point mass.
bool dirac_value(const JumpLaw& jump, double& value) {
  if (const auto* d = std::get_if<DiracJump>(&jump)) {
    value = d->value;
    return true;
  }
  return false;
}

Estimate mean_of(const std::function<double(double)>& g, const std::function<double(Rng&)>& draw,
                 std::size_t samples, Rng& rng) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double v = g(draw(rng));
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = samples > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  return {mean, std::sqrt(var / n)};
}

double centering(double r) { return r / (1.0 + r * r); }

// int_lo^inf integrand(r) dr via r = lo + tan(theta); integrand bounded near lo.
double half_line_integral(const std::function<double(double)>& integrand, double lo) {
  const auto h = [&](double theta) {
    if (theta >= 0.5 * std::numbers::pi) return 0.0;
    const double tn = std::tan(theta);
    const double r = lo + tn;
    const double jac = 1.0 + tn * tn;
    return integrand(r) * jac;
  };
  return adaptive_simpson(h, 0.0, 0.5 * std::numbers::pi, 1e-11);
}

}  // namespace

ScalarIDLaw::ScalarIDLaw(LawFamily family) : family_(std::move(family)) {
  std::visit(overloaded{
                 [](const GaussianLaw& g) {
                   if (!std::isfinite(g.mean) || !(g.variance >= 0.0) || !std::isfinite(g.variance)) {
                     throw std::invalid_argument("gaussian law: variance must be finite and >= 0");
                   }
                 },
                 [](const PoissonLaw& p) {
                   if (!(p.intensity > 0.0) || !std::isfinite(p.intensity)) {
                     throw std::invalid_argument("poisson law: intensity must be > 0");
                   }
                 },
                 [](const GammaLaw& g) {
                   if (!(g.shape > 0.0) || !(g.rate > 0.0)) {
                     throw std::invalid_argument("gamma law: shape and rate must be > 0");
                   }
                 },
                 [](const CompoundPoissonLaw& c) {
                   if (!(c.rate > 0.0) || !std::isfinite(c.rate)) {
                     throw std::invalid_argument("compound poisson law: rate must be > 0");
                   }
                   if (!std::isfinite(c.drift)) {
                     throw std::invalid_argument("compound poisson law: drift must be finite");
                   }
                   validate(c.jump);
                 },
             },
             family_);
}

ScalarIDLaw ScalarIDLaw::gaussian(double mean, double variance) {
  return ScalarIDLaw(GaussianLaw{mean, variance});
}
ScalarIDLaw ScalarIDLaw::poisson(double intensity) { return ScalarIDLaw(PoissonLaw{intensity}); }
ScalarIDLaw ScalarIDLaw::gamma(double shape, double rate) { return ScalarIDLaw(GammaLaw{shape, rate}); }
ScalarIDLaw ScalarIDLaw::compound_poisson(double rate, JumpLaw jump, double drift) {
  return ScalarIDLaw(CompoundPoissonLaw{rate, std::move(jump), drift});
}

std::string ScalarIDLaw::family_name() const {
  return std::visit(overloaded{
                        [](const GaussianLaw&) { return std::string("gaussian"); },
                        [](const PoissonLaw&) { return std::string("poisson"); },
                        [](const GammaLaw&) { return std::string("gamma"); },
                        [](const CompoundPoissonLaw&) { return std::string("compound_poisson"); },
                    },
                    family_);
}

LevyMeasureDescriptor ScalarIDLaw::levy_measure() const {
  return std::visit(
      overloaded{
          [](const GaussianLaw&) { return LevyMeasureDescriptor{0.0, {}, {}}; },
          [](const PoissonLaw& p) {
            return LevyMeasureDescriptor{p.intensity, {true, false}, [](Rng&) { return 1.0; }};
          },
          [](const GammaLaw&) {
            return LevyMeasureDescriptor{std::numeric_limits<double>::infinity(), {true, false}, {}};
          },
          [](const CompoundPoissonLaw& c) {
            JumpLaw jump = c.jump;
            return LevyMeasureDescriptor{c.rate, jump_support(c.jump),
                                         [jump](Rng& rng) { return sample_jump_law(jump, rng); }};
          },
      },
      family_);
}

double ScalarIDLaw::path_drift() const {
  return std::visit(overloaded{
                        [](const GaussianLaw& g) { return g.mean; },
                        [](const PoissonLaw&) { return 0.0; },
                        [](const GammaLaw&) { return 0.0; },
                        [](const CompoundPoissonLaw& c) { return c.drift; },
                    },
                    family_);
}

double ScalarIDLaw::gaussian_variance() const {
  if (const auto* g = std::get_if<GaussianLaw>(&family_)) return g->variance;
  return 0.0;
}

ScalarTriplet triplet(const ScalarIDLaw& law, Rng& rng, std::size_t mc_samples) {
  ScalarTriplet out;
  out.gaussian_variance = law.gaussian_variance();
  out.levy_measure = law.levy_measure();
  std::visit(overloaded{
                 [&](const GaussianLaw& g) { out.drift = g.mean; },
                 [&](const PoissonLaw& p) { out.drift = p.intensity * centering(1.0); },
                 [&](const GammaLaw& g) {
                   // nu(dr) = shape e^{-rate r} / r dr; centering(r) / r = 1 / (1 + r^2).
                   out.drift = half_line_integral(
                       [&](double r) { return g.shape * std::exp(-g.rate * r) / (1.0 + r * r); },
                       0.0);
                 },
                 [&](const CompoundPoissonLaw& c) {
                   double v = 0.0;
                   if (dirac_value(c.jump, v)) {
                     out.drift = c.drift + c.rate * centering(v);
                     return;
                   }
                   if (mc_samples < 2) throw std::invalid_argument("triplet: mc_samples must be >= 2");
                   const Estimate e = mean_of(centering, out.levy_measure.jump_sampler, mc_samples, rng);
                   out.drift = c.drift + c.rate * e.value;
                   out.drift_standard_error = c.rate * e.standard_error;
                 },
             },
             law.family());
  return out;
}

double sample_jump_law(const JumpLaw& jump, Rng& rng) {
  return std::visit(overloaded{
                        [](const DiracJump& j) { return j.value; },
                        [&](const NormalJump& j) { return j.mean + j.sd * standard_normal(rng); },
                        [&](const ExponentialJump& j) {
                          return std::exponential_distribution<double>(j.rate)(rng);
                        },
                        [&](const ConvolutionPowerJump& j) { return sample_conv_power(*j.base, j.t, rng); },
                    },
                    jump);
}

double sample_conv_power(const ScalarIDLaw& law, double t, Rng& rng) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("sample_conv_power: t must be a positive finite real");
  }
  return std::visit(
      overloaded{
          [&](const GaussianLaw& g) { return g.mean * t + std::sqrt(g.variance * t) * standard_normal(rng); },
          [&](const PoissonLaw& p) {
            return static_cast<double>(std::poisson_distribution<long long>(p.intensity * t)(rng));
          },
          [&](const GammaLaw& g) { return std::gamma_distribution<double>(g.shape * t, 1.0 / g.rate)(rng); },
          [&](const CompoundPoissonLaw& c) {
            const long long count = std::poisson_distribution<long long>(c.rate * t)(rng);
            double sum = c.drift * t;
            for (long long k = 0; k < count; ++k) sum += sample_jump_law(c.jump, rng);
            return sum;
          },
      },
      law.family());
}

double sample_jump(const ScalarIDLaw& law, Rng& rng) {
  const LevyMeasureDescriptor nu = law.levy_measure();
  if (!nu.finite()) throw std::domain_error("sample_jump: law has infinite activity");
  if (!nu.jump_sampler) throw std::domain_error("sample_jump: law has no jumps");
  return nu.jump_sampler(rng);
}

ScalarIDLaw discretize(const ScalarIDLaw& law, int n) {
  if (n < 1) throw std::invalid_argument("discretize: n must be >= 1");
  auto base = std::make_shared<const ScalarIDLaw>(law);
  return ScalarIDLaw::compound_poisson(static_cast<double>(n),
                                       ConvolutionPowerJump{std::move(base), 1.0 / n}, 0.0);
}

Estimate small_jump_second_moment(const ScalarIDLaw& law_n, double epsilon,
                                  std::size_t mc_samples, Rng& rng) {
  if (mc_samples < 100) throw std::invalid_argument("small_jump_second_moment: mc_samples must be >= 100");
  if (!(epsilon > 0.0)) throw std::invalid_argument("small_jump_second_moment: epsilon must be > 0");
  const LevyMeasureDescriptor nu = law_n.levy_measure();
  if (!nu.finite()) throw std::domain_error("small_jump_second_moment: law has infinite activity");
  if (!nu.jump_sampler) return {0.0, 0.0};
  const Estimate e = mean_of([epsilon](double b) { return std::abs(b) <= epsilon ? b * b : 0.0; },
                             nu.jump_sampler, mc_samples, rng);
  return {nu.total_mass * e.value, nu.total_mass * e.standard_error};
}

WeakConvergenceProbe weak_convergence_probe(const ScalarIDLaw& law, int n,
                                            const std::function<double(double)>& f, double delta,
                                            std::size_t mc_samples, Rng& rng) {
  if (n < 1) throw std::invalid_argument("weak_convergence_probe: n must be >= 1");
  if (!(delta > 0.0)) throw std::invalid_argument("weak_convergence_probe: delta must be > 0");
  if (mc_samples < 2) throw std::invalid_argument("weak_convergence_probe: mc_samples must be >= 2");
  constexpr int kChecks = 200;
  for (int k = 1; k < kChecks; ++k) {
    const double r = -delta + 2.0 * delta * k / kChecks;
    if (f(r) != 0.0) {
      throw std::invalid_argument("weak_convergence_probe: f does not vanish on (-delta, delta)");
    }
  }

  WeakConvergenceProbe out;
  const double t = 1.0 / n;
  const Estimate approx = mean_of(f, [&](Rng& g) { return sample_conv_power(law, t, g); }, mc_samples, rng);
  out.approximate = {n * approx.value, n * approx.standard_error};

  std::visit(overloaded{
                 [&](const GaussianLaw&) { out.reference = {0.0, 0.0}; },
                 [&](const PoissonLaw& p) { out.reference = {p.intensity * f(1.0), 0.0}; },
                 [&](const GammaLaw& g) {
                   const auto integrand = [&](double r) {
                     return f(r) * g.shape * std::exp(-g.rate * r) / r;
                   };
                   out.reference = {half_line_integral(integrand, delta), 0.0};
                 },
                 [&](const CompoundPoissonLaw& c) {
                   double v = 0.0;
                   if (dirac_value(c.jump, v)) {
                     out.reference = {c.rate * f(v), 0.0};
                     return;
                   }
                   const JumpLaw jump = c.jump;
                   const Estimate e =
                       mean_of(f, [&](Rng& g) { return sample_jump_law(jump, g); }, mc_samples, rng);
                   out.reference = {c.rate * e.value, c.rate * e.standard_error};
                 },
             },
             law.family());
  return out;
}

SubordinatorCheck is_positive_subordinator_spec(const ScalarIDLaw& law) {
  SubordinatorCheck out;
  out.uncentered_drift = law.path_drift();
  if (law.gaussian_variance() > 0.0) {
    out.reason = "gaussian component present";
    return out;
  }
  const LevyMeasureDescriptor nu = law.levy_measure();
  if (nu.sign_support.negative) {
    out.reason = "levy measure charges (-inf, 0)";
    return out;
  }
  // Every supported family satisfies int (1 ^ r) nu(dr) < inf on (0, inf):
  // finite activity trivially, gamma because its density is shape e^{-rate r}/r.
  if (out.uncentered_drift < 0.0) {
    out.reason = "negative uncentered drift";
    return out;
  }
  out.is_subordinator = true;
  out.reason = "ok";
  return out;
}

}  // namespace matlevy
