#include "matlevy/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "matlevy/quadrature.hpp"

namespace matlevy {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double semicircle_cdf(const Semicircle& s, double x) {
  const double sigma = std::sqrt(s.variance);
  const double y = x - s.mean;
  if (y <= -2.0 * sigma) return 0.0;
  if (y >= 2.0 * sigma) return 1.0;
  return 0.5 + y * std::sqrt(4.0 * s.variance - y * y) / (4.0 * kPi * s.variance) +
         std::asin(y / (2.0 * sigma)) / kPi;
}

// Absolutely continuous part of MP(ratio) on [a, x]. With
// x = a + (b - a) sin^2(theta) the integrand becomes smooth.
double mp_continuous_mass(double ratio, double x) {
  const double r = std::sqrt(ratio);
  const double a = (1.0 - r) * (1.0 - r);
  const double b = (1.0 + r) * (1.0 + r);
  if (x <= a) return 0.0;
  const double width = b - a;
  const double upper = x >= b ? 0.5 * kPi : std::asin(std::sqrt((x - a) / width));
  const auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double point = a + width * s * s;
    if (point <= 0.0) return width * c * c / kPi;  // limit when a = 0
    return width * width * s * s * c * c / (kPi * point);
  };
  return std::clamp(adaptive_simpson(integrand, 0.0, upper, 1e-11), 0.0, 1.0);
}

double mp_atom(double ratio) { return std::max(0.0, 1.0 - ratio); }

double mp_cdf(const MarchenkoPastur& mp, double x, bool left) {
  if (!(mp.ratio > 0.0)) throw std::invalid_argument("MarchenkoPastur: ratio must be positive");
  double value = mp_continuous_mass(mp.ratio, x);
  if (x > 0.0 || (x == 0.0 && !left)) value += mp_atom(mp.ratio);
  return std::min(value, 1.0);
}

double empirical_cdf(const std::vector<double>& sorted, double x, bool left) {
  if (sorted.empty()) throw std::invalid_argument("EmpiricalReference: empty sample");
  const auto it = left ? std::lower_bound(sorted.begin(), sorted.end(), x)
                       : std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

double cdf_impl(const TargetLaw& law, double x, bool left) {
  return std::visit(overloaded{
                        [&](const Semicircle& s) {
                          if (!(s.variance > 0.0)) throw std::invalid_argument("Semicircle: variance must be positive");
                          return semicircle_cdf(s, x);
                        },
                        [&](const MarchenkoPastur& mp) { return mp_cdf(mp, x, left); },
                        [&](const Cauchy& c) {
                          if (!(c.scale > 0.0)) throw std::invalid_argument("Cauchy: scale must be positive");
                          return 0.5 + std::atan((x - c.location) / c.scale) / kPi;
                        },
                        [&](const EmpiricalReference& e) { return empirical_cdf(e.sample, x, left); },
                    },
                    law);
}

// Support hull used for the Wasserstein integral.
std::pair<double, double> support(const TargetLaw& law) {
  return std::visit(overloaded{
                        [](const Semicircle& s) {
                          const double w = 2.0 * std::sqrt(s.variance);
                          return std::pair{s.mean - w, s.mean + w};
                        },
                        [](const MarchenkoPastur& mp) {
                          const double r = std::sqrt(mp.ratio);
                          const double lo = mp.ratio < 1.0 ? 0.0 : (1.0 - r) * (1.0 - r);
                          return std::pair{lo, (1.0 + r) * (1.0 + r)};
                        },
                        [](const Cauchy&) -> std::pair<double, double> {
                          throw std::domain_error("wasserstein1: Cauchy target has no first moment");
                        },
                        [](const EmpiricalReference& e) {
                          if (e.sample.empty()) throw std::invalid_argument("EmpiricalReference: empty sample");
                          return std::pair{e.sample.front(), e.sample.back()};
                        },
                    },
                    law);
}

// int_lo^hi |level - F(x)| dx for nondecreasing F, split where F crosses level.
double abs_gap_integral(const TargetLaw& law, double level, double lo, double hi) {
  if (hi <= lo) return 0.0;
  if (std::holds_alternative<EmpiricalReference>(law)) {
    const auto& s = std::get<EmpiricalReference>(law).sample;
    std::vector<double> cuts{lo};
    for (double v : s) {
      if (v > lo && v < hi) cuts.push_back(v);
    }
    cuts.push_back(hi);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      total += std::abs(level - empirical_cdf(s, cuts[k], false)) * (cuts[k + 1] - cuts[k]);
    }
    return total;
  }
  const auto f = [&](double x) { return target_cdf(law, x); };
  double split = lo;
  if (f(lo) < level && f(hi) > level) {
    double a = lo, b = hi;
    for (int it = 0; it < 200 && b - a > 1e-14 * (1.0 + std::abs(a)); ++it) {
      const double m = 0.5 * (a + b);
      (f(m) < level ? a : b) = m;
    }
    split = 0.5 * (a + b);
  } else if (f(hi) <= level) {
    split = hi;
  }
  const auto below = [&](double x) { return level - f(x); };
  const auto above = [&](double x) { return f(x) - level; };
  return std::abs(adaptive_simpson(below, lo, split, 1e-10, 30)) +
         std::abs(adaptive_simpson(above, split, hi, 1e-10, 30));
}

}  // namespace

EmpiricalSpectralDistribution::EmpiricalSpectralDistribution(std::vector<double> atoms)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("EmpiricalSpectralDistribution: no atoms");
  std::sort(atoms_.begin(), atoms_.end());
}

double EmpiricalSpectralDistribution::mean() const {
  double s = 0.0;
  for (double x : atoms_) s += x;
  return s / static_cast<double>(atoms_.size());
}

double EmpiricalSpectralDistribution::second_moment() const {
  double s = 0.0;
  for (double x : atoms_) s += x * x;
  return s / static_cast<double>(atoms_.size());
}

double EmpiricalSpectralDistribution::cdf(double x) const { return empirical_cdf(atoms_, x, false); }

EmpiricalSpectralDistribution esd(const HermitianMatrix& h) {
  const RealVector ev = hermitian_eigenvalues(h);
  return EmpiricalSpectralDistribution(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

TargetLaw make_empirical_reference(std::vector<double> sample) {
  if (sample.empty()) throw std::invalid_argument("EmpiricalReference: empty sample");
  std::sort(sample.begin(), sample.end());
  return EmpiricalReference{std::move(sample)};
}

double target_cdf(const TargetLaw& law, double x) { return cdf_impl(law, x, false); }
double target_cdf_left(const TargetLaw& law, double x) { return cdf_impl(law, x, true); }

double ks_distance(const EmpiricalSpectralDistribution& e, const TargetLaw& law) {
  const auto& atoms = e.atoms();
  const double d = static_cast<double>(atoms.size());
  double sup = 0.0;
  std::size_t i = 0;
  while (i < atoms.size()) {
    std::size_t next = i;
    while (next < atoms.size() && atoms[next] == atoms[i]) ++next;
    const double right = target_cdf(law, atoms[i]);
    const double left = target_cdf_left(law, atoms[i]);
    sup = std::max({sup, std::abs(right - static_cast<double>(next) / d),
                    std::abs(left - static_cast<double>(i) / d)});
    i = next;
  }
  return std::min(sup, 1.0);
}

double wasserstein1(const EmpiricalSpectralDistribution& e, const TargetLaw& law) {
  const auto [lo_support, hi_support] = support(law);
  const auto& atoms = e.atoms();
  const double d = static_cast<double>(atoms.size());
  const double lo = std::min(lo_support, atoms.front());
  const double hi = std::max(hi_support, atoms.back());
  double total = abs_gap_integral(law, 0.0, lo, atoms.front());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const double right = i + 1 < atoms.size() ? atoms[i + 1] : hi;
    total += abs_gap_integral(law, static_cast<double>(i + 1) / d, atoms[i], right);
  }
  return total;
}

TargetLaw free_target_for(const ScalarIDLaw& law) {
  if (law.is<GaussianLaw>()) {
    const auto& g = law.as<GaussianLaw>();
    return Semicircle{g.mean, g.variance};
  }
  if (law.is<PoissonLaw>()) return MarchenkoPastur{law.as<PoissonLaw>().intensity};
  throw std::invalid_argument("free_target_for: no closed-form target registered for family " +
                              law.family_name());
}

std::string target_name(const TargetLaw& law) {
  return std::visit(overloaded{
                        [](const Semicircle&) { return std::string("semicircle"); },
                        [](const MarchenkoPastur&) { return std::string("marchenko_pastur"); },
                        [](const Cauchy&) { return std::string("cauchy"); },
                        [](const EmpiricalReference&) { return std::string("empirical"); },
                    },
                    law);
}

}  // namespace matlevy
