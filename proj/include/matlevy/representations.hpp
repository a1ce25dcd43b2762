#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matlevy/covariation.hpp"
#include "matlevy/matpath.hpp"

namespace matlevy {

/// Options shared by the constructions: the grid on which the fresh Brownian
/// driver is realized (defaults to [0, T] in one step).
struct ConstructionOptions {
  std::vector<double> grid;
};

/// X with [X](t) = L(t) for a finite-activity matrix subordinator L
/// (PSD drift, no Gaussian part, rank-one jumps with positive eigenvalue):
/// X = Psi0^{1/2} B + sum of canonical square roots of the jumps.
VectorLevyPath subordinator_to_vector_process(const MatrixLevyPath& l, Rng& rng,
                                              const ConstructionOptions& options = {});

struct WienerHopfSplit {
  VectorLevyPath x;
  VectorLevyPath y;
};

/// X, Y on a common Brownian driver with [X](t) - [Y](t) = L(t) for a
/// bounded-variation path with rank-one jumps; positive jumps go to X,
/// negative ones to Y.
WienerHopfSplit wiener_hopf_split(const MatrixLevyPath& l, Rng& rng, const ConstructionOptions& options = {});

struct CovariationPair {
  VectorLevyPath x;
  VectorLevyPath y;
  MatrixLevyPath m;
};

/// X_d, Y_d and M_d sharing one Brownian driver and one set of (beta_j, u_j)
/// draws, so that [X_d, Y_d^*](t) = M_d(t).
CovariationPair bgcd_covariation_pair(Index d, const ScalarIDLaw& law, double drift, double horizon,
                                      RateScaling scaling, Rng& rng, const ConstructionOptions& options = {});

enum class RepresentationMode { quadratic, difference, covariation };

struct RepresentationReport {
  RepresentationMode mode = RepresentationMode::quadratic;
  double max_discrepancy = 0.0;
  std::vector<double> checkpoints;
  std::vector<double> per_checkpoint;
};

/// Jump times, midpoints between consecutive jumps and the end points.
std::vector<double> default_checkpoints(const MatrixLevyPath& l);

/// Structural check of [X] = L (no Y), [X] - [Y] = L (mode difference) or
/// [X, Y^*] = L (mode covariation). Empty checkpoints use the defaults.
RepresentationReport verify_representation(const MatrixLevyPath& l, const VectorLevyPath& x,
                                           const VectorLevyPath* y, RepresentationMode mode,
                                           std::vector<double> checkpoints = {});

struct IndependenceProbe {
  std::vector<std::string> entries;    // "re(i,j)" / "im(i,j)"
  std::vector<double> correlations;    // NaN when a side is degenerate
  std::vector<double> ci_lower;        // 95% interval around each correlation
  std::vector<double> ci_upper;
  double zero_band = 0.0;              // 95% acceptance band for a null correlation
  bool jump_times_disjoint = true;
  std::size_t replicas = 0;
};

/// Entrywise correlations of [X](1) and [Y](1) over replicas of a split,
/// plus the exact check that X and Y never jump at the same time.
IndependenceProbe independence_probe(const std::vector<WienerHopfSplit>& splits, double t = 1.0);

std::string to_string(RepresentationMode mode);

}  // namespace matlevy
