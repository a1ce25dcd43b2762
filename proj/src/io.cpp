#include "matlevy/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <set>

namespace matlevy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

const Json& require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  return j;
}

std::string require_string(const Json& object, const std::string& key, const std::string& path) {
  const auto it = object.find(key);
  if (it == object.end()) throw ConfigError(join(path, key), "missing field");
  if (!it->is_string()) throw ConfigError(join(path, key), "expected a string");
  return it->get<std::string>();
}

double positive_field(const Json& object, const std::string& key, const std::string& path, double fallback) {
  const double x = optional_number(object, key, path, fallback);
  if (!(x > 0.0)) throw ConfigError(join(path, key), "must be > 0");
  return x;
}

JumpLaw jump_from_json(const Json& j, const std::string& path) {
  require_object(j, path);
  const std::string kind = require_string(j, "law", path);
  if (kind == "dirac") {
    require_known_keys(j, {"law", "value"}, path);
    return DiracJump{require_number(j, "value", path)};
  }
  if (kind == "normal") {
    require_known_keys(j, {"law", "mean", "sd"}, path);
    return NormalJump{optional_number(j, "mean", path, 0.0), positive_field(j, "sd", path, 1.0)};
  }
  if (kind == "exponential") {
    require_known_keys(j, {"law", "rate"}, path);
    return ExponentialJump{positive_field(j, "rate", path, 1.0)};
  }
  if (kind == "conv_power") {
    require_known_keys(j, {"law", "base", "t"}, path);
    if (!j.contains("base")) throw ConfigError(join(path, "base"), "missing field");
    auto base = std::make_shared<const ScalarIDLaw>(law_from_json(j.at("base"), join(path, "base")));
    const double t = require_number(j, "t", path);
    if (!(t > 0.0)) throw ConfigError(join(path, "t"), "must be > 0");
    return ConvolutionPowerJump{std::move(base), t};
  }
  throw ConfigError(join(path, "law"), "unknown jump law '" + kind + "'");
}

Json jump_to_json(const JumpLaw& jump) {
  return std::visit(overloaded{
                        [](const DiracJump& d) { return Json{{"law", "dirac"}, {"value", d.value}}; },
                        [](const NormalJump& n) { return Json{{"law", "normal"}, {"mean", n.mean}, {"sd", n.sd}}; },
                        [](const ExponentialJump& e) { return Json{{"law", "exponential"}, {"rate", e.rate}}; },
                        [](const ConvolutionPowerJump& c) {
                          return Json{{"law", "conv_power"}, {"base", law_to_json(*c.base)}, {"t", c.t}};
                        },
                    },
                    jump);
}

// NaN and infinities are not representable in JSON; they become null.
Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json gaussian_to_json(const GaussianComponentSpec& spec) {
  return std::visit(overloaded{
                        [](const NoGaussian&) { return Json{{"kind", "none"}}; },
                        [](const BgcdGaussian& g) { return Json{{"kind", "bgcd"}, {"a2", g.a2}}; },
                        [](const KroneckerGaussian& k) {
                          return Json{{"kind", "kronecker"},
                                      {"sigma1", matrix_to_json(k.sigma1)},
                                      {"sigma2", matrix_to_json(k.sigma2)}};
                        },
                        [](const ScalarIdentityGaussian&) { return Json{{"kind", "scalar_identity"}}; },
                        [](const StandardGaussian& s) {
                          return Json{{"kind", "standard"}, {"loading", matrix_to_json(s.loading)}};
                        },
                    },
                    spec);
}

Json driver_to_json(const std::shared_ptr<const BrownianDriver>& driver) {
  if (!driver) return nullptr;
  Json increments = Json::array();
  for (std::size_t k = 0; k < driver->steps(); ++k) increments.push_back(matrix_to_json(driver->increment(k)));
  return Json{{"rows", driver->rows()}, {"cols", driver->cols()}, {"grid", driver->grid()}, {"increments", increments}};
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

}  // namespace

double require_number(const Json& object, const std::string& key, const std::string& path) {
  const auto it = object.find(key);
  if (it == object.end()) throw ConfigError(join(path, key), "missing field");
  if (!it->is_number()) throw ConfigError(join(path, key), "expected a number");
  const double x = it->get<double>();
  if (!std::isfinite(x)) throw ConfigError(join(path, key), "expected a finite number");
  return x;
}

double optional_number(const Json& object, const std::string& key, const std::string& path, double fallback) {
  return object.contains(key) ? require_number(object, key, path) : fallback;
}

void require_known_keys(const Json& object, std::initializer_list<const char*> allowed, const std::string& path) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& item : object.items()) {
    if (!keys.count(item.key())) throw ConfigError(join(path, item.key()), "unknown field");
  }
}

ScalarIDLaw law_from_json(const Json& j, const std::string& path) {
  require_object(j, path);
  const std::string family = require_string(j, "family", path);
  try {
    if (family == "gaussian") {
      require_known_keys(j, {"family", "mean", "variance"}, path);
      return ScalarIDLaw::gaussian(optional_number(j, "mean", path, 0.0), optional_number(j, "variance", path, 1.0));
    }
    if (family == "poisson") {
      require_known_keys(j, {"family", "intensity"}, path);
      return ScalarIDLaw::poisson(optional_number(j, "intensity", path, 1.0));
    }
    if (family == "gamma") {
      require_known_keys(j, {"family", "shape", "rate"}, path);
      return ScalarIDLaw::gamma(optional_number(j, "shape", path, 1.0), optional_number(j, "rate", path, 1.0));
    }
    if (family == "compound_poisson") {
      require_known_keys(j, {"family", "rate", "jump", "drift"}, path);
      JumpLaw jump = DiracJump{};
      if (j.contains("jump")) jump = jump_from_json(j.at("jump"), join(path, "jump"));
      return ScalarIDLaw::compound_poisson(optional_number(j, "rate", path, 1.0), std::move(jump),
                                           optional_number(j, "drift", path, 0.0));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(join(path, "family"), "unknown family '" + family + "'");
}

Json law_to_json(const ScalarIDLaw& law) {
  return std::visit(overloaded{
                        [](const GaussianLaw& g) {
                          return Json{{"family", "gaussian"}, {"mean", g.mean}, {"variance", g.variance}};
                        },
                        [](const PoissonLaw& p) { return Json{{"family", "poisson"}, {"intensity", p.intensity}}; },
                        [](const GammaLaw& g) { return Json{{"family", "gamma"}, {"shape", g.shape}, {"rate", g.rate}}; },
                        [](const CompoundPoissonLaw& c) {
                          return Json{{"family", "compound_poisson"},
                                      {"rate", c.rate},
                                      {"jump", jump_to_json(c.jump)},
                                      {"drift", c.drift}};
                        },
                    },
                    law.family());
}

Json target_to_json(const TargetLaw& law) {
  return std::visit(overloaded{
                        [](const Semicircle& s) {
                          return Json{{"law", "semicircle"}, {"mean", s.mean}, {"variance", s.variance}};
                        },
                        [](const MarchenkoPastur& mp) { return Json{{"law", "marchenko_pastur"}, {"ratio", mp.ratio}}; },
                        [](const Cauchy& c) { return Json{{"law", "cauchy"}, {"location", c.location}, {"scale", c.scale}}; },
                        [](const EmpiricalReference& e) {
                          return Json{{"law", "empirical"}, {"size", e.sample.size()}};
                        },
                    },
                    law);
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a non-empty array of rows");
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0) throw ConfigError(path, "expected non-empty rows");
  ComplexMatrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) throw ConfigError(row_path, "ragged matrix row");
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& entry = j[r][c];
      const std::string entry_path = row_path + "[" + std::to_string(c) + "]";
      if (entry.is_number()) {
        m(static_cast<Index>(r), static_cast<Index>(c)) = entry.get<double>();
      } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() && entry[1].is_number()) {
        m(static_cast<Index>(r), static_cast<Index>(c)) = Complex(entry[0].get<double>(), entry[1].get<double>());
      } else {
        throw ConfigError(entry_path, "expected a number or [re, im]");
      }
    }
  }
  return m;
}

Json path_to_json(const MatrixLevyPath& path) {
  Json jumps = Json::array();
  for (const TimedRankOne& j : path.jumps()) {
    jumps.push_back({{"t", j.time}, {"lambda", j.jump.eigenvalue}, {"u", vector_to_json(j.jump.direction)}});
  }
  return Json{{"d", path.dim()},
              {"cols", path.cols()},
              {"T", path.horizon()},
              {"drift", matrix_to_json(path.drift())},
              {"gaussian", gaussian_to_json(path.gaussian())},
              {"matrix_driver", driver_to_json(path.matrix_driver())},
              {"scalar_driver", driver_to_json(path.scalar_driver())},
              {"jumps", jumps}};
}

Json path_to_json(const VectorLevyPath& path) {
  Json jumps = Json::array();
  for (const TimedVector& j : path.jumps()) jumps.push_back({{"t", j.time}, {"x", vector_to_json(j.jump)}});
  return Json{{"d", path.dim()},
              {"T", path.horizon()},
              {"drift", vector_to_json(path.drift())},
              {"loading", matrix_to_json(path.loading())},
              {"driver", driver_to_json(path.driver())},
              {"jumps", jumps}};
}

Json to_json(const CovariationResult& result) {
  return Json{{"method", to_string(result.method)},
              {"value", matrix_to_json(result.value)},
              {"continuous", matrix_to_json(result.continuous)},
              {"jump", matrix_to_json(result.jump)}};
}

Json to_json(const RepresentationReport& report) {
  return Json{{"mode", to_string(report.mode)},
              {"max_discrepancy", report.max_discrepancy},
              {"checkpoints", report.checkpoints},
              {"per_checkpoint", report.per_checkpoint}};
}

Json to_json(const IndependenceProbe& probe) {
  Json entries = Json::array();
  for (std::size_t k = 0; k < probe.entries.size(); ++k) {
    entries.push_back({{"entry", probe.entries[k]},
                       {"correlation", number_or_null(probe.correlations[k])},
                       {"ci_lower", number_or_null(probe.ci_lower[k])},
                       {"ci_upper", number_or_null(probe.ci_upper[k])}});
  }
  return Json{{"replicas", probe.replicas},
              {"zero_band", probe.zero_band},
              {"jump_times_disjoint", probe.jump_times_disjoint},
              {"entries", entries}};
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), x);
  return std::string(buffer.data(), result.ptr);
}

}  // namespace matlevy
