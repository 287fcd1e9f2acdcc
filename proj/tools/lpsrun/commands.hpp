#pragma once

#include <functional>
#include <string>
#include <vector>

#include "config.hpp"

namespace lpsrun {

struct Artifact {
  std::string name;  // relative to the output directory
  std::string content;
};

struct Outcome {
  std::vector<Artifact> files;
  bool pass = true;
  std::string summary;  // one line for stdout
};

using Job = std::function<Outcome()>;

/// Validates every command parameter and returns the work to do. Throws
/// ConfigError; nothing is computed or written before the job runs. Jobs
/// keep results in memory, so a failed run leaves no partial files.
Job prepare(const RunConfig& cfg);

}  // namespace lpsrun
