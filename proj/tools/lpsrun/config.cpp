#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "lps/error.hpp"

namespace lpsrun {

namespace {

constexpr const char* kCommands[] = {"verify", "toda-run", "lvn-run", "reduce-demo", "orbit-kks"};

lps::IntegratorConfig parse_integrator(const Json& j) {
  if (!j.is_object()) throw ConfigError("integrator must be an object");
  require_keys(j, {"scheme", "dt", "t_end", "record_stride"}, "integrator");
  for (const char* key : {"scheme", "dt", "t_end"}) {
    if (!j.contains(key)) throw ConfigError(std::string("integrator.") + key + " is required");
  }
  lps::IntegratorConfig cfg;
  if (j["scheme"] == "RK4") {
    cfg.scheme = lps::Scheme::RK4;
  } else if (j["scheme"] == "IsospectralExp") {
    cfg.scheme = lps::Scheme::IsospectralExp;
  } else {
    throw ConfigError("integrator.scheme must be \"RK4\" or \"IsospectralExp\"");
  }
  for (const char* key : {"dt", "t_end"}) {
    if (!j[key].is_number()) throw ConfigError(std::string("integrator.") + key + " must be a number");
  }
  cfg.dt = j["dt"].get<double>();
  cfg.t_end = j["t_end"].get<double>();
  if (j.contains("record_stride")) {
    if (!j["record_stride"].is_number_integer()) throw ConfigError("integrator.record_stride must be an integer");
    const auto stride = j["record_stride"].get<std::int64_t>();
    if (stride < 1 || stride > 1'000'000'000) throw ConfigError("integrator.record_stride out of range");
    cfg.record_stride = static_cast<int>(stride);
  }
  try {
    cfg.validate();
  } catch (const lps::ContractError& e) {
    throw ConfigError(e.what());
  }
  // Guard against configs that would run for hours.
  if (static_cast<double>(cfg.steps()) > 1e8) throw ConfigError("integrator: more than 1e8 steps");
  return cfg;
}

}  // namespace

bool is_command(const std::string& name) {
  return std::find(std::begin(kCommands), std::end(kCommands), name) != std::end(kCommands);
}

void require_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError("unknown key \"" + key + "\" in " + where);
    }
  }
}

std::uint64_t as_seed(const Json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ConfigError(where + " must be an unsigned integer");
  }
  return v.get<std::uint64_t>();
}

RunConfig parse_config(const Json& j, const std::string& cli_command) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  require_keys(j, {"command", "seed", "params", "integrator", "output_path"}, "config");
  if (!j.contains("command") || !j["command"].is_string()) throw ConfigError("command is required");

  RunConfig cfg;
  cfg.command = j["command"].get<std::string>();
  if (!is_command(cfg.command)) throw ConfigError("unknown command \"" + cfg.command + "\"");
  if (cfg.command != cli_command) {
    throw ConfigError("config is for \"" + cfg.command + "\" but \"" + cli_command + "\" was requested");
  }
  if (j.contains("seed")) cfg.seed = as_seed(j["seed"], "seed");
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ConfigError("params must be an object");
    cfg.params = j["params"];
  }
  if (j.contains("integrator")) cfg.integrator = parse_integrator(j["integrator"]);
  if (j.contains("output_path")) {
    if (!j["output_path"].is_string()) throw ConfigError("output_path must be a string");
    cfg.output_path = j["output_path"].get<std::string>();
  }
  return cfg;
}

RunConfig load_config(const std::string& path, const std::string& cli_command) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j, cli_command);
}

int param_int(const Json& params, const char* key, int fallback, int lo, int hi) {
  if (!params.contains(key)) return fallback;
  const Json& v = params[key];
  if (!v.is_number_integer()) throw ConfigError(std::string("params.") + key + " must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < lo || x > hi) {
    throw ConfigError(std::string("params.") + key + " must lie in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  return static_cast<int>(x);
}

double param_double(const Json& params, const char* key, double fallback, double lo, double hi) {
  if (!params.contains(key)) return fallback;
  const Json& v = params[key];
  if (!v.is_number()) throw ConfigError(std::string("params.") + key + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x) || x < lo || x > hi) throw ConfigError(std::string("params.") + key + " out of range");
  return x;
}

std::string param_choice(const Json& params, const char* key, const std::string& fallback,
                         std::initializer_list<const char*> choices) {
  if (!params.contains(key)) return fallback;
  const Json& v = params[key];
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (std::any_of(choices.begin(), choices.end(), [&](const char* c) { return s == c; })) return s;
  }
  std::string msg = std::string("params.") + key + " must be one of";
  for (const char* c : choices) msg += std::string(" ") + c;
  throw ConfigError(msg);
}

}  // namespace lpsrun
