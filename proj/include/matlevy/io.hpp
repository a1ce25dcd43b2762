#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "matlevy/covariation.hpp"
#include "matlevy/matpath.hpp"
#include "matlevy/representations.hpp"
#include "matlevy/scalar_levy.hpp"
#include "matlevy/spectral.hpp"

namespace matlevy {

using Json = nlohmann::json;

/// Invalid configuration value; `path()` names the offending field, e.g.
/// "law.jump.rate".
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::invalid_argument(path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Field accessors that report failures with the field path.
double require_number(const Json& object, const std::string& key, const std::string& path);
double optional_number(const Json& object, const std::string& key, const std::string& path, double fallback);
/// Rejects keys outside `allowed`.
void require_known_keys(const Json& object, std::initializer_list<const char*> allowed, const std::string& path);

/// {"family": "gaussian" | "poisson" | "gamma" | "compound_poisson", ...}.
ScalarIDLaw law_from_json(const Json& j, const std::string& path = "law");
Json law_to_json(const ScalarIDLaw& law);

Json target_to_json(const TargetLaw& law);

/// Complex matrices are nested [[[re, im], ...], ...] row-major arrays.
Json complex_to_json(Complex z);
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& path);

Json path_to_json(const MatrixLevyPath& path);
Json path_to_json(const VectorLevyPath& path);

Json to_json(const CovariationResult& result);
Json to_json(const RepresentationReport& report);
Json to_json(const IndependenceProbe& probe);

/// Shortest decimal form that round-trips; non-finite values print as nan/inf.
std::string format_number(double x);

}  // namespace matlevy
