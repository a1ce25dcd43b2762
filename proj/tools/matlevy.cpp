#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "matlevy/experiment.hpp"
#include "matlevy/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;
constexpr int kExitThreshold = 3;

matlevy::Json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw matlevy::ConfigError("--config", "cannot open '" + path + "'");
  try {
    return matlevy::Json::parse(in);
  } catch (const matlevy::Json::parse_error& e) {
    throw matlevy::ConfigError("--config", std::string("invalid JSON: ") + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and verification of Hermitian matrix Levy processes with rank-one jumps"};
  app.set_version_flag("--version", std::string(matlevy::kVersion));

  std::string command;
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool perturb = false;
  bool check = false;
  int threads = 1;

  app.add_option("command", command, "spectrum | verify | approx | exponent")
      ->required()
      ->check(CLI::IsMember({"spectrum", "verify", "approx", "exponent"}));
  app.add_option("--config", config_path, "JSON experiment config")->required();
  app.add_option("--out", out_dir, "Output directory")->required();
  app.add_option("--seed", seed, "Override the config seed");
  app.add_flag("--perturb", perturb, "Inject a defect into the verified identities");
  app.add_flag("--check", check, "Exit with status 3 when an acceptance threshold fails");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 1024));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    const matlevy::Json raw = read_config(config_path);
    matlevy::ExperimentConfig config = matlevy::parse_config(raw);
    if (raw.is_object() && raw.contains("experiment") &&
        matlevy::experiment_kind_from_string(raw.at("experiment").get<std::string>()) !=
            matlevy::experiment_kind_from_string(command)) {
      throw matlevy::ConfigError("experiment", "config is for '" + raw.at("experiment").get<std::string>() +
                                                   "' but the command is '" + command + "'");
    }
    config.kind = matlevy::experiment_kind_from_string(command);
    if (seed) config.seed = *seed;
    if (perturb) config.perturb = true;

    const auto start = std::chrono::steady_clock::now();
    const matlevy::RunResult result = matlevy::run_experiment(config, threads);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    for (const auto& file : result.files) write_file(dir / file.name, file.contents);
    const matlevy::Json timing{{"wall_seconds", seconds}, {"threads", threads}};
    write_file(dir / "timing.json", timing.dump(2) + "\n");

    std::cout << command << ": " << (result.passed ? "thresholds met" : "thresholds NOT met") << " ("
              << dir.string() << ")\n";
    if (check && !result.passed) return kExitThreshold;
    return kExitOk;
  } catch (const matlevy::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
