#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <variant>

#include "matlevy/types.hpp"

namespace matlevy {

class ScalarIDLaw;

// Jump laws for the compound Poisson family.
struct DiracJump {
  double value = 1.0;
};
struct NormalJump {
  double mean = 0.0;
  double sd = 1.0;
};
struct ExponentialJump {
  double rate = 1.0;
};
/// Jumps distributed as base^{*t}.
struct ConvolutionPowerJump {
  std::shared_ptr<const ScalarIDLaw> base;
  double t = 1.0;
};
using JumpLaw = std::variant<DiracJump, NormalJump, ExponentialJump, ConvolutionPowerJump>;

struct GaussianLaw {
  double mean = 0.0;
  double variance = 1.0;
};
struct PoissonLaw {
  double intensity = 1.0;
};
struct GammaLaw {
  double shape = 1.0;
  double rate = 1.0;
};
/// drift * t + sum of Poisson(rate * t) jumps. `drift` is the uncentered
/// drift of the path; the centered triplet drift is reported by triplet().
struct CompoundPoissonLaw {
  double rate = 1.0;
  JumpLaw jump = DiracJump{};
  double drift = 0.0;
};

using LawFamily = std::variant<GaussianLaw, PoissonLaw, GammaLaw, CompoundPoissonLaw>;

struct SignSupport {
  bool positive = false;
  bool negative = false;
};

struct LevyMeasureDescriptor {
  double total_mass = 0.0;  // +inf for infinite activity
  SignSupport sign_support;
  /// Draws from nu / nu(R); empty unless total_mass is finite and positive.
  std::function<double(Rng&)> jump_sampler;

  bool finite() const { return std::isfinite(total_mass); }
};

/// Levy triplet (a^2, psi, nu) with the centering r / (1 + r^2).
struct ScalarTriplet {
  double gaussian_variance = 0.0;
  double drift = 0.0;
  double drift_standard_error = 0.0;  // nonzero when the drift needed Monte Carlo
  LevyMeasureDescriptor levy_measure;
};

/// One-dimensional infinitely divisible law with an exact sampler for every
/// convolution power.
class ScalarIDLaw {
 public:
  explicit ScalarIDLaw(LawFamily family);

  static ScalarIDLaw gaussian(double mean, double variance);
  static ScalarIDLaw poisson(double intensity);
  static ScalarIDLaw gamma(double shape, double rate);
  static ScalarIDLaw compound_poisson(double rate, JumpLaw jump, double drift = 0.0);

  const LawFamily& family() const { return family_; }
  std::string family_name() const;

  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(family_);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(family_);
  }

  LevyMeasureDescriptor levy_measure() const;
  bool finite_activity() const { return levy_measure().finite(); }

  /// Drift of the sample path with no jump compensation.
  double path_drift() const;
  double gaussian_variance() const;

 private:
  LawFamily family_;
};

/// Full triplet; Monte Carlo is used for the centering integral only when the
/// jump law has no closed form.
ScalarTriplet triplet(const ScalarIDLaw& law, Rng& rng, std::size_t mc_samples = 100000);

double sample_conv_power(const ScalarIDLaw& law, double t, Rng& rng);
double sample_jump_law(const JumpLaw& jump, Rng& rng);
/// beta ~ nu / nu(R); throws for laws without a finite nonzero Levy measure.
double sample_jump(const ScalarIDLaw& law, Rng& rng);

/// Compound Poisson law with Levy measure n * law^{*1/n} and no uncentered
/// drift; its triplet drift is int r/(1+r^2) nu^n(dr).
ScalarIDLaw discretize(const ScalarIDLaw& law, int n);

/// n E[beta^2 1{|beta| <= eps}] for a finite-activity law (n = nu(R)).
Estimate small_jump_second_moment(const ScalarIDLaw& law_n, double epsilon,
                                  std::size_t mc_samples, Rng& rng);

struct WeakConvergenceProbe {
  Estimate approximate;  // int f d nu^n
  Estimate reference;    // int f d nu
};

/// Compares int f d(n law^{*1/n}) with int f d nu. `f` must vanish on
/// (-delta, delta).
WeakConvergenceProbe weak_convergence_probe(const ScalarIDLaw& law, int n,
                                            const std::function<double(double)>& f,
                                            double delta, std::size_t mc_samples, Rng& rng);

struct SubordinatorCheck {
  bool is_subordinator = false;
  double uncentered_drift = 0.0;  // psi_0
  std::string reason;
};

SubordinatorCheck is_positive_subordinator_spec(const ScalarIDLaw& law);

}  // namespace matlevy
