#pragma once

#include <variant>
#include <vector>

#include "matlevy/hermitian.hpp"
#include "matlevy/scalar_levy.hpp"

namespace matlevy {

/// Uniform measure on the eigenvalues of a d x d Hermitian matrix.
class EmpiricalSpectralDistribution {
 public:
  /// Atoms are sorted on construction.
  explicit EmpiricalSpectralDistribution(std::vector<double> atoms);

  const std::vector<double>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double mean() const;
  double second_moment() const;
  /// Right-continuous step function.
  double cdf(double x) const;

 private:
  std::vector<double> atoms_;
};

EmpiricalSpectralDistribution esd(const HermitianMatrix& h);

struct Semicircle {
  double mean = 0.0;
  double variance = 1.0;
};
struct MarchenkoPastur {
  double ratio = 1.0;
};
struct Cauchy {
  double location = 0.0;
  double scale = 1.0;
};
struct EmpiricalReference {
  std::vector<double> sample;  // sorted
};

using TargetLaw = std::variant<Semicircle, MarchenkoPastur, Cauchy, EmpiricalReference>;

TargetLaw make_empirical_reference(std::vector<double> sample);

double target_cdf(const TargetLaw& law, double x);
/// lim_{y -> x-} F(y); differs from target_cdf only at atoms.
double target_cdf_left(const TargetLaw& law, double x);

/// sup_x |F_esd(x) - F(x)|, evaluated at the atoms with left limits.
double ks_distance(const EmpiricalSpectralDistribution& esd, const TargetLaw& law);

/// int |F_esd(x) - F(x)| dx. Not defined for Cauchy targets.
double wasserstein1(const EmpiricalSpectralDistribution& esd, const TargetLaw& law);

/// Free counterpart of a Gaussian or Poisson law; other families throw.
TargetLaw free_target_for(const ScalarIDLaw& law);

std::string target_name(const TargetLaw& law);

}  // namespace matlevy
