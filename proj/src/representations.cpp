#include "matlevy/representations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "matlevy/random.hpp"

namespace matlevy {

namespace {

std::vector<double> grid_or_default(const ConstructionOptions& options, double horizon) {
  if (options.grid.empty()) return {0.0, horizon};
  if (std::abs(options.grid.back() - horizon) > 1e-12 * horizon) {
    throw std::invalid_argument("construction grid must end at the path horizon");
  }
  return options.grid;
}

void require_bounded_variation(const MatrixLevyPath& l, const char* who) {
  if (!std::holds_alternative<NoGaussian>(l.gaussian())) {
    throw std::invalid_argument(std::string(who) + ": path has a Gaussian component");
  }
  if (l.cols() != l.dim()) throw std::invalid_argument(std::string(who) + ": path is not square");
}

}  // namespace

VectorLevyPath subordinator_to_vector_process(const MatrixLevyPath& l, Rng& rng,
                                              const ConstructionOptions& options) {
  require_bounded_variation(l, "subordinator_to_vector_process");
  const PsdMatrix drift{HermitianMatrix(l.drift())};
  for (const TimedRankOne& j : l.jumps()) {
    if (!(j.jump.eigenvalue > 0.0)) {
      throw std::invalid_argument("subordinator_to_vector_process: jump with negative eigenvalue");
    }
  }
  const Index d = l.dim();
  VectorLevyPath x(d, l.horizon());
  x.set_brownian(psd_sqrt(drift).matrix(), BrownianDriver::sample(d, 1, grid_or_default(options, l.horizon()), rng));
  // The stored direction is phase-canonical, so sqrt(lambda) u is the
  // canonical square root of the jump.
  for (const TimedRankOne& j : l.jumps()) x.add_jump(j.time, std::sqrt(j.jump.eigenvalue) * j.jump.direction);
  return x;
}

WienerHopfSplit wiener_hopf_split(const MatrixLevyPath& l, Rng& rng, const ConstructionOptions& options) {
  require_bounded_variation(l, "wiener_hopf_split");
  const PosNegSplit drift = pos_neg_split(HermitianMatrix(l.drift()));
  const Index d = l.dim();
  auto driver = BrownianDriver::sample(d, 1, grid_or_default(options, l.horizon()), rng);
  WienerHopfSplit out{VectorLevyPath(d, l.horizon()), VectorLevyPath(d, l.horizon())};
  out.x.set_brownian(psd_sqrt(drift.positive).matrix(), driver);
  out.y.set_brownian(psd_sqrt(drift.negative).matrix(), driver);
  for (const TimedRankOne& j : l.jumps()) {
    const double lambda = j.jump.eigenvalue;
    if (lambda == 0.0) throw std::invalid_argument("wiener_hopf_split: zero-eigenvalue jump");
    const ComplexVector v = std::sqrt(std::abs(lambda)) * j.jump.direction;
    (lambda > 0.0 ? out.x : out.y).add_jump(j.time, v);
  }
  return out;
}

CovariationPair bgcd_covariation_pair(Index d, const ScalarIDLaw& law, double drift, double horizon,
                                      RateScaling scaling, Rng& rng, const ConstructionOptions& options) {
  const LevyMeasureDescriptor nu = law.levy_measure();
  if (!nu.finite()) throw std::domain_error("bgcd_covariation_pair: law has infinite activity");
  CovariationPair out{VectorLevyPath(d, horizon), VectorLevyPath(d, horizon), MatrixLevyPath(d, horizon)};
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  out.m.set_drift(HermitianMatrix(drift * id));
  if (drift != 0.0) {
    auto driver = BrownianDriver::sample(d, 1, grid_or_default(options, horizon), rng);
    const double root = std::sqrt(std::abs(drift));
    out.x.set_brownian(root * id, driver);
    out.y.set_brownian((drift > 0.0 ? root : -root) * id, driver);
  }
  if (nu.total_mass > 0.0) {
    for (double time : sample_jump_times(clock_rate(scaling, d, nu.total_mass), horizon, rng)) {
      const double beta = nu.jump_sampler(rng);
      const ComplexVector u = canonical_phase(sample_uniform_sphere(d, rng));
      if (beta == 0.0) continue;
      const double root = std::sqrt(std::abs(beta));
      out.x.add_jump(time, root * u);
      out.y.add_jump(time, (beta > 0.0 ? root : -root) * u);
      out.m.add_jump(time, RankOneHermitian(beta, u));
    }
  }
  return out;
}

std::vector<double> default_checkpoints(const MatrixLevyPath& l) {
  std::vector<double> points{0.0};
  double previous = 0.0;
  for (const TimedRankOne& j : l.jumps()) {
    points.push_back(0.5 * (previous + j.time));
    points.push_back(j.time);
    previous = j.time;
  }
  if (previous < l.horizon()) points.push_back(0.5 * (previous + l.horizon()));
  points.push_back(l.horizon());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

RepresentationReport verify_representation(const MatrixLevyPath& l, const VectorLevyPath& x,
                                           const VectorLevyPath* y, RepresentationMode mode,
                                           std::vector<double> checkpoints) {
  if (x.dim() != l.dim() || (y && y->dim() != l.dim())) {
    throw std::invalid_argument("verify_representation: dimension mismatch");
  }
  if (mode != RepresentationMode::quadratic && !y) {
    throw std::invalid_argument("verify_representation: mode needs a second process");
  }
  if (checkpoints.empty()) checkpoints = default_checkpoints(l);
  RepresentationReport report;
  report.mode = mode;
  for (double t : checkpoints) {
    if (t < 0.0 || t > l.horizon() || t > x.horizon() || (y && t > y->horizon())) {
      throw std::invalid_argument("verify_representation: checkpoint outside the horizon");
    }
    ComplexMatrix represented;
    switch (mode) {
      case RepresentationMode::quadratic:
        represented = quadratic_variation(x, t).value;
        break;
      case RepresentationMode::difference:
        represented = quadratic_variation(x, t).value - quadratic_variation(*y, t).value;
        break;
      case RepresentationMode::covariation:
        represented = structural_covariation(x, *y, t).value;
        break;
    }
    const double gap = (represented - evaluate_path(l, t)).norm();
    report.checkpoints.push_back(t);
    report.per_checkpoint.push_back(gap);
    report.max_discrepancy = std::max(report.max_discrepancy, gap);
  }
  return report;
}

IndependenceProbe independence_probe(const std::vector<WienerHopfSplit>& splits, double t) {
  constexpr std::size_t kMinReplicas = 100;
  if (splits.size() < kMinReplicas) {
    throw std::invalid_argument("independence_probe: at least 100 replicas are required");
  }
  const Index d = splits.front().x.dim();
  IndependenceProbe probe;
  probe.replicas = splits.size();

  std::vector<std::pair<Index, Index>> cells;
  std::vector<bool> imaginary;
  for (Index i = 0; i < d; ++i) {
    for (Index j = i; j < d; ++j) {
      cells.emplace_back(i, j);
      imaginary.push_back(false);
      probe.entries.push_back("re(" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (i != j) {
        cells.emplace_back(i, j);
        imaginary.push_back(true);
        probe.entries.push_back("im(" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  const std::size_t features = cells.size();
  const std::size_t r = splits.size();
  RealMatrix fx(r, features), fy(r, features);
  for (std::size_t k = 0; k < r; ++k) {
    const WienerHopfSplit& s = splits[k];
    if (s.x.dim() != d || s.y.dim() != d) throw std::invalid_argument("independence_probe: mixed dimensions");
    const ComplexMatrix qx = quadratic_variation(s.x, t).value;
    const ComplexMatrix qy = quadratic_variation(s.y, t).value;
    for (std::size_t f = 0; f < features; ++f) {
      const auto [i, j] = cells[f];
      fx(k, f) = imaginary[f] ? qx(i, j).imag() : qx(i, j).real();
      fy(k, f) = imaginary[f] ? qy(i, j).imag() : qy(i, j).real();
    }
    // Jump streams come from disjoint sign classes; verify on the realized times.
    const auto& jx = s.x.jumps();
    const auto& jy = s.y.jumps();
    std::size_t a = 0, b = 0;
    while (a < jx.size() && b < jy.size()) {
      if (jx[a].time == jy[b].time) {
        probe.jump_times_disjoint = false;
        break;
      }
      (jx[a].time < jy[b].time) ? ++a : ++b;
    }
  }

  const double se = 1.0 / std::sqrt(static_cast<double>(r) - 3.0);
  probe.zero_band = std::tanh(1.959963984540054 * se);
  for (std::size_t f = 0; f < features; ++f) {
    const Eigen::VectorXd x = fx.col(static_cast<Index>(f)).array() - fx.col(static_cast<Index>(f)).mean();
    const Eigen::VectorXd y = fy.col(static_cast<Index>(f)).array() - fy.col(static_cast<Index>(f)).mean();
    const double sxx = x.squaredNorm();
    const double syy = y.squaredNorm();
    if (sxx <= 0.0 || syy <= 0.0) {
      probe.correlations.push_back(std::numeric_limits<double>::quiet_NaN());
      probe.ci_lower.push_back(std::numeric_limits<double>::quiet_NaN());
      probe.ci_upper.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const double rho = std::clamp(x.dot(y) / std::sqrt(sxx * syy), -1.0, 1.0);
    const double z = std::atanh(std::clamp(rho, -0.999999999, 0.999999999));
    probe.correlations.push_back(rho);
    probe.ci_lower.push_back(std::tanh(z - 1.959963984540054 * se));
    probe.ci_upper.push_back(std::tanh(z + 1.959963984540054 * se));
  }
  return probe;
}

std::string to_string(RepresentationMode mode) {
  switch (mode) {
    case RepresentationMode::quadratic: return "quadratic";
    case RepresentationMode::difference: return "difference";
    case RepresentationMode::covariation: return "covariation";
  }
  return "unknown";
}

}  // namespace matlevy
