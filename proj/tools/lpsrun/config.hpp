#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "lps/dynamics.hpp"

namespace lpsrun {

using Json = nlohmann::json;

/// Anything wrong with the configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::uint64_t seed = 0;
  Json params = Json::object();
  std::optional<lps::IntegratorConfig> integrator;
  std::string output_path;
};

bool is_command(const std::string& name);

/// Checks the top-level schema. `cli_command` must match the "command" field.
RunConfig parse_config(const Json& j, const std::string& cli_command);
RunConfig load_config(const std::string& path, const std::string& cli_command);

/// Rejects keys outside `allowed`; `where` names the object in messages.
void require_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where);

// Typed parameter lookups with defaults and inclusive bounds.
int param_int(const Json& params, const char* key, int fallback, int lo, int hi);
double param_double(const Json& params, const char* key, double fallback, double lo, double hi);
std::string param_choice(const Json& params, const char* key, const std::string& fallback,
                         std::initializer_list<const char*> choices);
std::uint64_t as_seed(const Json& v, const std::string& where);

}  // namespace lpsrun
