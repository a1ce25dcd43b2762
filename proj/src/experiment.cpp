#include "matlevy/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "matlevy/covariation.hpp"
#include "matlevy/parallel.hpp"
#include "matlevy/random.hpp"
#include "matlevy/representations.hpp"
#include "matlevy/spectral.hpp"

namespace matlevy {

namespace {

// Stream identifiers of derive_seed; replica streams use stream 0.
constexpr std::uint64_t kThetaStream = 1;
constexpr std::uint64_t kTripletStream = 2;
constexpr std::uint64_t kExponentStream = 3;
constexpr std::uint64_t kDiagnosticStream = 4;
constexpr std::uint64_t kSphereStream = 5;
constexpr std::uint64_t kApproxStreamBase = 100;

// Size of the drift defect injected by --perturb.
constexpr double kDefect = 1e-6;
// Approximation order used for raw spectra of infinite-activity laws.
constexpr int kDefaultSpectrumOrder = 100;
// Sample count of the sphere moment diagnostic.
constexpr std::size_t kSphereSamples = 100000;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

long long require_integer(const Json& j, const std::string& key, long long fallback, long long min_value) {
  if (!j.contains(key)) {
    if (fallback < min_value) throw ConfigError(key, "missing field");
    return fallback;
  }
  const Json& v = j.at(key);
  long long value = 0;
  if (v.is_number_integer()) {
    value = v.get<long long>();
  } else if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>() &&
             std::abs(v.get<double>()) < 9.0e15) {
    value = static_cast<long long>(v.get<double>());
  } else {
    throw ConfigError(key, "expected an integer");
  }
  if (value < min_value) throw ConfigError(key, "must be >= " + std::to_string(min_value));
  return value;
}

double positive_number(const Json& j, const std::string& key, double fallback) {
  const double x = optional_number(j, key, "", fallback);
  if (!(x > 0.0)) throw ConfigError(key, "must be > 0");
  return x;
}

std::vector<double> make_grid(const ExperimentConfig& c) {
  return c.grid_step > 0.0 ? uniform_grid(c.horizon, c.grid_step) : std::vector<double>{0.0, c.horizon};
}

std::string rate_scaling_name(RateScaling s) {
  return s == RateScaling::esd_consistent ? "esd_consistent" : "paper_literal";
}

std::optional<TargetLaw> target_if_available(const ScalarIDLaw& law, double horizon) {
  try {
    return free_target_at(law, horizon);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

struct Summary {
  double mean = 0.0;
  double standard_error = 0.0;
};

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.standard_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return s;
}

class Csv {
 public:
  explicit Csv(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      if (!first) out_ << ',';
      out_ << h;
      first = false;
    }
    out_ << '\n';
  }
  template <typename... Ts>
  void row(const Ts&... values) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(values), first = false), ...);
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  static std::string cell(double x) { return format_number(x); }
  static std::string cell(std::size_t x) { return std::to_string(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(Index x) { return std::to_string(x); }
  static std::string cell(bool x) { return x ? "1" : "0"; }
  std::ostringstream out_;
};

std::vector<double> eigenvalues_at(const MatrixLevyPath& m, double t) {
  return esd(HermitianMatrix(evaluate_path(m, t))).atoms();
}

MatrixLevyPath with_defect(MatrixLevyPath path) {
  path.set_general_drift(path.drift() + kDefect * ComplexMatrix::Identity(path.dim(), path.dim()));
  return path;
}

// Bounded-variation path with a random drift and rank-one jumps drawn from
// the law's Levy measure; `positive` folds the jumps and drift into the PSD cone.
MatrixLevyPath random_bounded_variation_path(const ExperimentConfig& c, bool positive, Rng& rng) {
  const Index d = c.d;
  MatrixLevyPath path(d, c.horizon);
  const ComplexMatrix a = complex_normal_matrix(d, d, rng);
  const ComplexMatrix drift = positive ? ComplexMatrix(a * a.adjoint() / static_cast<double>(d))
                                       : ComplexMatrix(0.5 * (a + a.adjoint()));
  path.set_drift(HermitianMatrix(drift));
  const LevyMeasureDescriptor nu = c.law.levy_measure();
  if (nu.total_mass > 0.0) {
    for (double time : sample_jump_times(clock_rate(c.rate_scaling, d, nu.total_mass), c.horizon, rng)) {
      double beta = nu.jump_sampler(rng);
      ComplexVector u = sample_uniform_sphere(d, rng);
      if (positive) beta = std::abs(beta);
      if (beta == 0.0) continue;
      path.add_jump(time, RankOneHermitian(beta, std::move(u)));
    }
  }
  return path;
}

Json base_report(const ExperimentConfig& c) {
  return Json{{"tool", "matlevy"}, {"version", kVersion}, {"command", to_string(c.kind)}, {"config", config_to_json(c)}};
}

RunResult run_spectrum(const ExperimentConfig& c, int threads) {
  const auto grid = make_grid(c);
  const auto target = target_if_available(c.law, c.horizon);
  const bool exact = c.law.finite_activity();
  const int order = c.n.empty() ? kDefaultSpectrumOrder : c.n.back();

  struct Row {
    std::vector<double> eigenvalues;
    double ks = kNaN;
    double trace = 0.0;
    std::size_t jumps = 0;
  };
  const auto rows = parallel_map(static_cast<std::size_t>(c.replicas), threads, [&](std::size_t r) {
    Rng rng = make_rng(c.seed, r);
    const MatrixLevyPath m = exact ? sample_bgcd_path(c.d, c.law, c.horizon, grid, c.rate_scaling, rng)
                                   : sample_bgcd_approx(c.d, c.law, order, c.horizon, grid, c.rate_scaling, rng, false).m;
    Row row;
    const EmpiricalSpectralDistribution e(eigenvalues_at(m, c.horizon));
    row.eigenvalues = e.atoms();
    if (target) row.ks = ks_distance(e, *target);
    for (double x : row.eigenvalues) row.trace += x;
    row.jumps = m.jumps().size();
    return row;
  });

  Csv eig({"replica", "index", "eigenvalue"});
  Csv per({"replica", "ks", "trace", "jumps"});
  Json per_replica = Json::array();
  std::vector<double> ks;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < rows[r].eigenvalues.size(); ++i) eig.row(r, i, rows[r].eigenvalues[i]);
    per.row(r, rows[r].ks, rows[r].trace, rows[r].jumps);
    per_replica.push_back({{"replica", r},
                           {"ks", target ? Json(rows[r].ks) : Json(nullptr)},
                           {"trace", rows[r].trace},
                           {"jumps", rows[r].jumps}});
    if (target) ks.push_back(rows[r].ks);
  }

  RunResult out;
  out.report = base_report(c);
  out.report["sampler"] = exact ? "exact" : "compound_poisson_approximation";
  if (!exact) out.report["approximation_order"] = order;
  out.report["per_replica"] = per_replica;
  Json aggregate{{"replicas", c.replicas}};
  if (target) {
    const Summary s = summarize(ks);
    aggregate["target"] = target_to_json(*target);
    aggregate["ks_mean"] = s.mean;
    aggregate["ks_standard_error"] = s.standard_error;
    out.passed = s.mean <= c.ks_threshold;
  } else {
    aggregate["target"] = nullptr;
  }
  out.report["aggregate"] = aggregate;
  out.report["check"] = {{"passed", out.passed}, {"ks_threshold", c.ks_threshold}, {"applicable", target.has_value()}};
  out.files = {{"eigenvalues.csv", eig.str()}, {"replicas.csv", per.str()}};
  return out;
}

RunResult run_verify(const ExperimentConfig& c, int threads) {
  const ConstructionOptions options{make_grid(c)};
  struct Row {
    double pair = 0.0;
    double subordinator = 0.0;
    double split = 0.0;
    std::size_t jumps = 0;
    WienerHopfSplit halves{VectorLevyPath(1, 1.0), VectorLevyPath(1, 1.0)};
  };
  const auto rows = parallel_map(static_cast<std::size_t>(c.replicas), threads, [&](std::size_t r) {
    Rng rng = make_rng(c.seed, r);
    Row row;
    CovariationPair pair = bgcd_covariation_pair(c.d, c.law, c.law.path_drift(), c.horizon, c.rate_scaling, rng, options);
    const MatrixLevyPath m = c.perturb ? with_defect(pair.m) : pair.m;
    row.pair = verify_representation(m, pair.x, &pair.y, RepresentationMode::covariation).max_discrepancy;
    row.jumps = pair.m.jumps().size();

    const MatrixLevyPath sub = random_bounded_variation_path(c, true, rng);
    const VectorLevyPath x = subordinator_to_vector_process(sub, rng, options);
    row.subordinator = verify_representation(c.perturb ? with_defect(sub) : sub, x, nullptr,
                                             RepresentationMode::quadratic)
                           .max_discrepancy;

    const MatrixLevyPath signed_path = random_bounded_variation_path(c, false, rng);
    row.halves = wiener_hopf_split(signed_path, rng, options);
    row.split = verify_representation(c.perturb ? with_defect(signed_path) : signed_path, row.halves.x,
                                      &row.halves.y, RepresentationMode::difference)
                    .max_discrepancy;
    return row;
  });

  Csv per({"replica", "covariation_pair", "subordinator", "wiener_hopf", "jumps"});
  Json per_replica = Json::array();
  double max_pair = 0.0, max_sub = 0.0, max_split = 0.0;
  std::vector<WienerHopfSplit> splits;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Row& row = rows[r];
    per.row(r, row.pair, row.subordinator, row.split, row.jumps);
    per_replica.push_back({{"replica", r},
                           {"covariation_pair", row.pair},
                           {"subordinator", row.subordinator},
                           {"wiener_hopf", row.split},
                           {"jumps", row.jumps}});
    max_pair = std::max(max_pair, row.pair);
    max_sub = std::max(max_sub, row.subordinator);
    max_split = std::max(max_split, row.split);
    splits.push_back(row.halves);
  }

  RunResult out;
  out.report = base_report(c);
  out.report["per_replica"] = per_replica;
  Json aggregate{{"replicas", c.replicas},
                 {"max_discrepancy",
                  {{"covariation_pair", max_pair}, {"subordinator", max_sub}, {"wiener_hopf", max_split}}}};
  bool disjoint = true;
  if (splits.size() >= 100) {
    const IndependenceProbe probe = independence_probe(splits, c.horizon);
    aggregate["independence"] = to_json(probe);
    disjoint = probe.jump_times_disjoint;
  }
  out.report["aggregate"] = aggregate;
  out.passed = max_pair <= c.tolerance && max_sub <= c.tolerance && max_split <= c.tolerance && disjoint;
  out.report["check"] = {{"passed", out.passed}, {"tolerance", c.tolerance}};
  out.files = {{"replicas.csv", per.str()}};
  return out;
}

RunResult run_approx(const ExperimentConfig& c, int threads) {
  const auto grid = make_grid(c);
  const auto target = target_if_available(c.law, c.horizon);

  Csv per({"n", "replica", "ks", "jumps"});
  Csv eig({"n", "replica", "index", "eigenvalue"});
  Json levels = Json::array();
  std::vector<Summary> ks_by_level;

  for (std::size_t k = 0; k < c.n.size(); ++k) {
    const int n = c.n[k];
    struct Row {
      std::vector<double> eigenvalues;
      double ks = kNaN;
      std::size_t jumps = 0;
    };
    const auto rows = parallel_map(static_cast<std::size_t>(c.replicas), threads, [&](std::size_t r) {
      Rng rng = make_rng(c.seed, r, kApproxStreamBase + k);
      const MatrixLevyPath m = sample_bgcd_approx(c.d, c.law, n, c.horizon, grid, c.rate_scaling, rng, false).m;
      Row row;
      const EmpiricalSpectralDistribution e(eigenvalues_at(m, c.horizon));
      row.eigenvalues = e.atoms();
      if (target) row.ks = ks_distance(e, *target);
      row.jumps = m.jumps().size();
      return row;
    });
    std::vector<double> ks;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      per.row(n, r, rows[r].ks, rows[r].jumps);
      for (std::size_t i = 0; i < rows[r].eigenvalues.size(); ++i) eig.row(n, r, i, rows[r].eigenvalues[i]);
      if (target) ks.push_back(rows[r].ks);
    }

    Rng diag = make_rng(c.seed, k, kDiagnosticStream);
    const Estimate small = small_jump_second_moment(discretize(c.law, n), c.epsilon, c.mc_samples, diag);
    const double eps = c.epsilon;
    const auto f = [eps](double r) { return std::max(0.0, std::abs(r) - eps) / (1.0 + std::abs(r)); };
    const WeakConvergenceProbe weak = weak_convergence_probe(c.law, n, f, eps, c.mc_samples, diag);

    Json level{{"n", n},
               {"small_jump_second_moment", {{"value", small.value}, {"standard_error", small.standard_error}}},
               {"weak_convergence",
                {{"approximate", {{"value", weak.approximate.value}, {"standard_error", weak.approximate.standard_error}}},
                 {"reference", {{"value", weak.reference.value}, {"standard_error", weak.reference.standard_error}}}}}};
    if (target) {
      const Summary s = summarize(ks);
      level["ks_mean"] = s.mean;
      level["ks_standard_error"] = s.standard_error;
      ks_by_level.push_back(s);
    }
    levels.push_back(level);
  }

  Rng sphere_rng = make_rng(c.seed, 0, kSphereStream);
  RealVector first = RealVector::Zero(c.d);
  first(0) = 1.0;
  const SphereMomentProbe sphere = sphere_quadratic_moment(HermitianMatrix::diagonal(first), kSphereSamples, sphere_rng);

  RunResult out;
  out.report = base_report(c);
  Json aggregate{{"replicas", c.replicas},
                 {"levels", levels},
                 {"gaussian_variance", c.law.gaussian_variance()},
                 {"sphere_moment",
                  {{"value", sphere.estimate.value},
                   {"standard_error", sphere.estimate.standard_error},
                   {"reference", sphere.reference}}}};
  if (target) aggregate["target"] = target_to_json(*target);

  // KS must not grow with n beyond one inversion inside its noise, and the
  // finest level must meet the threshold.
  int inversions = 0;
  bool monotone = true;
  for (std::size_t k = 1; k < ks_by_level.size(); ++k) {
    const double rise = ks_by_level[k].mean - ks_by_level[k - 1].mean;
    if (rise <= 0.0) continue;
    const double noise = std::hypot(ks_by_level[k].standard_error, ks_by_level[k - 1].standard_error);
    if (rise <= noise && inversions == 0) {
      ++inversions;
    } else {
      monotone = false;
    }
  }
  if (target) {
    out.passed = monotone && ks_by_level.back().mean <= c.ks_threshold;
    aggregate["ks_inversions"] = inversions;
    aggregate["ks_monotone"] = monotone;
  }
  out.report["aggregate"] = aggregate;
  out.report["check"] = {{"passed", out.passed}, {"ks_threshold", c.ks_threshold}, {"applicable", target.has_value()}};
  out.files = {{"replicas.csv", per.str()}, {"eigenvalues.csv", eig.str()}};
  return out;
}

RunResult run_exponent(const ExperimentConfig& c, int threads) {
  const Index d = c.d;
  Rng theta_rng = make_rng(c.seed, 0, kThetaStream);
  std::vector<HermitianMatrix> thetas;
  for (int k = 0; k < c.thetas; ++k) {
    const ComplexMatrix a = complex_normal_matrix(d, d, theta_rng);
    thetas.emplace_back(ComplexMatrix(0.5 * (a + a.adjoint()) / std::sqrt(static_cast<double>(d))));
  }
  Rng triplet_rng = make_rng(c.seed, 0, kTripletStream);
  const BgcdTriplet triplet = bgcd_triplet(d, c.law, c.rate_scaling, triplet_rng, c.mc_samples);

  const std::vector<double> grid{0.0, c.horizon};
  const auto rows = parallel_map(static_cast<std::size_t>(c.replicas), threads, [&](std::size_t r) {
    Rng rng = make_rng(c.seed, r);
    const ComplexMatrix m = evaluate_path(sample_bgcd_path(d, c.law, c.horizon, grid, c.rate_scaling, rng), c.horizon);
    std::vector<double> traces;
    traces.reserve(thetas.size());
    for (const HermitianMatrix& th : thetas) traces.push_back((th.matrix() * m).trace().real());
    return traces;
  });

  Csv per({"replica", "theta", "trace"});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t k = 0; k < thetas.size(); ++k) per.row(r, k, rows[r][k]);
  }

  Json results = Json::array();
  double max_z = 0.0;
  const double count = static_cast<double>(rows.size());
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    double sc = 0.0, ss = 0.0, sc2 = 0.0, ss2 = 0.0;
    for (const auto& row : rows) {
      const double cs = std::cos(row[k]);
      const double sn = std::sin(row[k]);
      sc += cs;
      ss += sn;
      sc2 += cs * cs;
      ss2 += sn * sn;
    }
    const Complex empirical(sc / count, ss / count);
    double empirical_se = 0.0;
    if (rows.size() > 1) {
      const double var_c = std::max(0.0, (sc2 - count * empirical.real() * empirical.real()) / (count - 1.0));
      const double var_s = std::max(0.0, (ss2 - count * empirical.imag() * empirical.imag()) / (count - 1.0));
      empirical_se = std::sqrt((var_c + var_s) / count);
    }
    Rng exponent_rng = make_rng(c.seed, k, kExponentStream);
    const ComplexEstimate exponent = matrix_levy_exponent(d, triplet, thetas[k], c.mc_samples, exponent_rng);
    const Complex predicted = std::exp(c.horizon * exponent.value);
    const double predicted_se = std::abs(predicted) * c.horizon * exponent.standard_error;
    const double combined = std::hypot(empirical_se, predicted_se);
    const double gap = std::abs(empirical - predicted);
    const double z = combined > 0.0 ? gap / combined : (gap <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity());
    max_z = std::max(max_z, z);
    results.push_back({{"theta", matrix_to_json(thetas[k].matrix())},
                       {"exponent", complex_to_json(exponent.value)},
                       {"exponent_standard_error", exponent.standard_error},
                       {"predicted", complex_to_json(predicted)},
                       {"empirical", complex_to_json(empirical)},
                       {"combined_standard_error", combined},
                       {"z", std::isfinite(z) ? Json(z) : Json(nullptr)}});
  }

  RunResult out;
  out.report = base_report(c);
  out.report["triplet"] = {{"gaussian_variance", triplet.gaussian_variance},
                           {"drift", triplet.drift},
                           {"drift_standard_error", triplet.drift_standard_error},
                           {"levy_mass", triplet.levy_mass},
                           {"rate_scaling", rate_scaling_name(triplet.scaling)}};
  out.report["aggregate"] = {{"replicas", c.replicas}, {"thetas", results}, {"max_z", std::isfinite(max_z) ? Json(max_z) : Json(nullptr)}};
  out.passed = max_z <= c.z_threshold;
  out.report["check"] = {{"passed", out.passed}, {"z_threshold", c.z_threshold}};
  out.files = {{"replicas.csv", per.str()}};
  return out;
}

void validate_for_kind(const ExperimentConfig& c) {
  switch (c.kind) {
    case ExperimentKind::verify:
    case ExperimentKind::exponent:
      if (!c.law.finite_activity()) throw ConfigError("law", "command requires a finite-activity law");
      break;
    case ExperimentKind::approx:
      if (c.n.empty()) throw ConfigError("n", "empty n list");
      break;
    case ExperimentKind::spectrum:
      break;
  }
}

}  // namespace

ExperimentKind experiment_kind_from_string(const std::string& name) {
  if (name == "spectrum") return ExperimentKind::spectrum;
  if (name == "verify") return ExperimentKind::verify;
  if (name == "approx") return ExperimentKind::approx;
  if (name == "exponent") return ExperimentKind::exponent;
  throw ConfigError("experiment", "unknown experiment '" + name + "'");
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::spectrum: return "spectrum";
    case ExperimentKind::verify: return "verify";
    case ExperimentKind::approx: return "approx";
    case ExperimentKind::exponent: return "exponent";
  }
  return "unknown";
}

ExperimentConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");
  require_known_keys(j,
                     {"experiment", "d", "T", "grid_step", "law", "n", "replicas", "seed", "rate_scaling", "epsilon",
                      "mc_samples", "thetas", "ks_threshold", "tolerance", "z_threshold", "perturb"},
                     "");
  ExperimentConfig c;
  if (j.contains("experiment")) {
    if (!j.at("experiment").is_string()) throw ConfigError("experiment", "expected a string");
    c.kind = experiment_kind_from_string(j.at("experiment").get<std::string>());
  }
  c.d = static_cast<Index>(require_integer(j, "d", c.d, 1));
  c.horizon = positive_number(j, "T", c.horizon);
  c.grid_step = optional_number(j, "grid_step", "", 0.0);
  if (c.grid_step < 0.0 || c.grid_step > c.horizon) throw ConfigError("grid_step", "must lie in [0, T]");
  if (c.grid_step > 0.0 && c.horizon / c.grid_step > 1e7) throw ConfigError("grid_step", "grid has too many steps");
  if (j.contains("law")) c.law = law_from_json(j.at("law"), "law");
  if (j.contains("n")) {
    const Json& n = j.at("n");
    if (!n.is_array()) throw ConfigError("n", "expected an array of positive integers");
    for (std::size_t k = 0; k < n.size(); ++k) {
      const std::string path = "n[" + std::to_string(k) + "]";
      if (!n[k].is_number_integer() || n[k].get<long long>() < 1 || n[k].get<long long>() > 1000000) {
        throw ConfigError(path, "expected an integer in [1, 1000000]");
      }
      const int value = n[k].get<int>();
      if (!c.n.empty() && value <= c.n.back()) throw ConfigError(path, "n must be strictly increasing");
      c.n.push_back(value);
    }
  }
  c.replicas = static_cast<int>(require_integer(j, "replicas", c.replicas, 1));
  if (j.contains("seed")) {
    const Json& s = j.at("seed");
    if (s.is_number_unsigned()) {
      c.seed = s.get<std::uint64_t>();
    } else if (s.is_number_integer() && s.get<long long>() >= 0) {
      c.seed = static_cast<std::uint64_t>(s.get<long long>());
    } else {
      throw ConfigError("seed", "expected a non-negative 64-bit integer");
    }
  }
  if (j.contains("rate_scaling")) {
    const Json& s = j.at("rate_scaling");
    if (s == "esd_consistent") {
      c.rate_scaling = RateScaling::esd_consistent;
    } else if (s == "paper_literal") {
      c.rate_scaling = RateScaling::paper_literal;
    } else {
      throw ConfigError("rate_scaling", "expected \"esd_consistent\" or \"paper_literal\"");
    }
  }
  c.epsilon = positive_number(j, "epsilon", c.epsilon);
  c.mc_samples = static_cast<std::size_t>(require_integer(j, "mc_samples", static_cast<long long>(c.mc_samples), 1000));
  c.thetas = static_cast<int>(require_integer(j, "thetas", c.thetas, 1));
  c.ks_threshold = positive_number(j, "ks_threshold", c.ks_threshold);
  c.tolerance = positive_number(j, "tolerance", c.tolerance);
  c.z_threshold = positive_number(j, "z_threshold", c.z_threshold);
  if (j.contains("perturb")) {
    if (!j.at("perturb").is_boolean()) throw ConfigError("perturb", "expected a boolean");
    c.perturb = j.at("perturb").get<bool>();
  }
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  return Json{{"experiment", to_string(c.kind)},
              {"d", c.d},
              {"T", c.horizon},
              {"grid_step", c.grid_step},
              {"law", law_to_json(c.law)},
              {"n", c.n},
              {"replicas", c.replicas},
              {"seed", c.seed},
              {"rate_scaling", rate_scaling_name(c.rate_scaling)},
              {"epsilon", c.epsilon},
              {"mc_samples", c.mc_samples},
              {"thetas", c.thetas},
              {"ks_threshold", c.ks_threshold},
              {"tolerance", c.tolerance},
              {"z_threshold", c.z_threshold},
              {"perturb", c.perturb}};
}

TargetLaw free_target_at(const ScalarIDLaw& law, double horizon) {
  if (law.is<GaussianLaw>()) {
    const auto& g = law.as<GaussianLaw>();
    if (!(g.variance > 0.0)) throw std::invalid_argument("free_target_at: degenerate Gaussian law");
    return Semicircle{g.mean * horizon, g.variance * horizon};
  }
  if (law.is<PoissonLaw>()) return MarchenkoPastur{law.as<PoissonLaw>().intensity * horizon};
  return free_target_for(law);
}

RunResult run_experiment(const ExperimentConfig& config, int threads) {
  if (threads < 1) throw ConfigError("threads", "must be >= 1");
  validate_for_kind(config);
  RunResult out;
  switch (config.kind) {
    case ExperimentKind::spectrum: out = run_spectrum(config, threads); break;
    case ExperimentKind::verify: out = run_verify(config, threads); break;
    case ExperimentKind::approx: out = run_approx(config, threads); break;
    case ExperimentKind::exponent: out = run_exponent(config, threads); break;
  }
  out.files.insert(out.files.begin(), OutputFile{"report.json", out.report.dump(2) + "\n"});
  return out;
}

}  // namespace matlevy
