#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matlevy/io.hpp"
#include "matlevy/matpath.hpp"
#include "matlevy/scalar_levy.hpp"

namespace matlevy {

inline constexpr const char* kVersion = "0.1.0";

enum class ExperimentKind { spectrum, verify, approx, exponent };

ExperimentKind experiment_kind_from_string(const std::string& name);
std::string to_string(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::spectrum;
  Index d = 10;
  double horizon = 1.0;
  double grid_step = 0.0;  // 0: a single step over [0, T]
  ScalarIDLaw law = ScalarIDLaw::gaussian(0.0, 1.0);
  std::vector<int> n;
  int replicas = 10;
  std::uint64_t seed = 0;
  RateScaling rate_scaling = RateScaling::esd_consistent;
  double epsilon = 1.0;           // small-jump cutoff of the approx diagnostics
  std::size_t mc_samples = 100000;
  int thetas = 5;                 // test matrices of the exponent command
  double ks_threshold = 0.1;
  double tolerance = 1e-10;
  double z_threshold = 3.0;
  bool perturb = false;
};

/// Parses and validates a config object. `kind` is taken from the
/// "experiment" field when present.
ExperimentConfig parse_config(const Json& j);
/// Echo that parses back to the same config.
Json config_to_json(const ExperimentConfig& config);

struct OutputFile {
  std::string name;
  std::string contents;
};

struct RunResult {
  Json report;
  std::vector<OutputFile> files;  // report.json included
  bool passed = true;             // acceptance thresholds of the command
};

/// Runs the configured command with `threads` workers. Outputs depend only on
/// the config, never on `threads`.
RunResult run_experiment(const ExperimentConfig& config, int threads = 1);

/// The time-T marginal of a Gaussian or Poisson law mapped to its free
/// counterpart.
TargetLaw free_target_at(const ScalarIDLaw& law, double horizon);

}  // namespace matlevy
