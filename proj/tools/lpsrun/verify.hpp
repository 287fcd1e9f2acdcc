#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lpsrun {

struct Check {
  std::string name;
  double defect = 0.0;
  double tol = 0.0;
  bool pass = true;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  int max_dim = 6;
  int instances = 20;
};

struct VerifyReport {
  std::vector<Check> checks;
  std::set<std::string> covered;
  std::vector<std::string> missing;
  bool pass = true;
};

/// Every operation the suite is required to exercise, as "module.op".
const std::vector<std::string>& required_operations();

/// Runs the invariant suite. Module groups run concurrently; the report is
/// assembled in a fixed order, so it does not depend on scheduling.
VerifyReport run_verify(const VerifyOptions& opts);

nlohmann::json to_json(const VerifyReport& report);

}  // namespace lpsrun
