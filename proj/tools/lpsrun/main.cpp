#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "lps/error.hpp"

namespace {

enum Exit : int { kOk = 0, kCheckFailed = 1, kConfigError = 2, kNumerical = 3 };

int write_artifacts(const std::filesystem::path& dir, const std::vector<lpsrun::Artifact>& files) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::cerr << "lpsrun: cannot create " << dir << ": " << ec.message() << "\n";
    return kConfigError;
  }
  for (const auto& f : files) {
    std::ofstream out(dir / f.name, std::ios::binary);
    out << f.content;
    if (!out) {
      std::cerr << "lpsrun: cannot write " << (dir / f.name) << "\n";
      return kConfigError;
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie-Poisson structures: invariant checks and experiment runner"};
  std::string command, config_path, out_dir;
  app.add_option("command", command, "verify | toda-run | lvn-run | reduce-demo | orbit-kks")
      ->required()
      ->check(CLI::IsMember({"verify", "toda-run", "lvn-run", "reduce-demo", "orbit-kks"}));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory (overrides output_path)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  lpsrun::Job job;
  std::filesystem::path dir;
  try {
    const lpsrun::RunConfig cfg = lpsrun::load_config(config_path, command);
    job = lpsrun::prepare(cfg);
    dir = !out_dir.empty() ? out_dir : !cfg.output_path.empty() ? cfg.output_path : ".";
  } catch (const lpsrun::ConfigError& e) {
    std::cerr << "lpsrun: config error: " << e.what() << "\n";
    return kConfigError;
  }

  lpsrun::Outcome outcome;
  try {
    outcome = job();
  } catch (const lps::NumericalError& e) {
    std::cerr << "lpsrun: numerical abort: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    // Library argument errors surface here only for inputs
    // that passed the schema but not the mathematics.
    std::cerr << "lpsrun: invalid input: " << e.what() << "\n";
    return kConfigError;
  }

  if (const int rc = write_artifacts(dir, outcome.files); rc != kOk) return rc;
  std::cout << command << ": " << outcome.summary << (outcome.pass ? ", pass" : ", FAIL") << "\n";
  return outcome.pass ? kOk : kCheckFailed;
}
