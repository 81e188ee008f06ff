// Experiment configuration: a flat JSON document with defaults matching the
// benchmark setup, validated field by field. Only "topology" and "beta" are
// mandatory; everything else falls back to the defaults below.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "msad/environment.hpp"
#include "msad/graph.hpp"
#include "msad/topologies.hpp"

namespace msad {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Environment description. The shorthand form expands to the standard
// left-right-left switching scenario; an explicit schedule overrides it.
struct EnvironmentSpec {
  int period = 400;
  double high_q = 0.3;
  double low_q = 0.1;
  std::string pattern = "left-right-left";
  std::vector<ScheduleEntry> schedule;  // when non-empty, used verbatim

  bool is_shorthand() const { return schedule.empty(); }
};

struct ExperimentConfig {
  TopologyKind topology = TopologyKind::GrowableTree;
  int num_regions = 8;
  double total_assets = 100.0;
  ModelParams params;
  EnvironmentSpec environment;
  int total_steps = 1200;
  std::string output_path;
};

inline Environment make_environment(const ExperimentConfig& cfg) {
  if (cfg.environment.is_shorthand())
    return make_left_right_left(cfg.num_regions, cfg.environment.period, cfg.environment.high_q,
                                cfg.environment.low_q);
  return Environment(cfg.num_regions, cfg.environment.schedule);
}

inline void validate_config(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  const ModelParams& p = cfg.params;
  if (!(p.beta >= 0.0)) fail("beta must be >= 0");
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) fail("alpha must be in (0, 1]");
  if (!(p.gamma_up_assets >= 0.0 && p.gamma_up_assets <= 1.0)) fail("gamma_up_assets must be in [0, 1]");
  if (!(p.gamma_up_profit >= 0.0 && p.gamma_up_profit <= 1.0)) fail("gamma_up_profit must be in [0, 1]");
  if (!(p.gamma_down >= 0.0 && p.gamma_down <= 1.0)) fail("gamma_down must be in [0, 1]");
  if (!(p.cost >= 0.0)) fail("cost must be >= 0");
  if (!(p.grow_threshold > 0.0)) fail("grow_threshold must be > 0");
  if (!(p.trim_threshold > 0.0)) fail("trim_threshold must be > 0");
  if (!(p.trim_threshold < p.grow_threshold)) fail("trim_threshold must be < grow_threshold");
  if (cfg.num_regions < 1) fail("num_regions must be >= 1");
  if (!(cfg.total_assets >= 0.0)) fail("total_assets must be >= 0");
  if (cfg.total_steps < 1) fail("total_steps must be >= 1");
  const EnvironmentSpec& env = cfg.environment;
  if (env.is_shorthand()) {
    if (env.period < 1) fail("environment.T must be >= 1");
    if (!(env.high_q >= 0.0 && env.low_q >= 0.0)) fail("environment qualities must be >= 0");
    if (env.pattern != "left-right-left") fail("environment.pattern must be \"left-right-left\"");
  }
  make_environment(cfg);  // delegates schedule checks to Environment
}

namespace detail {

template <typename T>
T get_field(const nlohmann::json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("field \"" + key + "\" has the wrong type");
  }
}

}  // namespace detail

inline ExperimentConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  ExperimentConfig cfg;
  if (!j.contains("topology")) throw ConfigError("missing required field \"topology\"");
  std::string topology_name = detail::get_field<std::string>(j, "topology", "");
  auto kind = topology_from_name(topology_name);
  if (!kind) throw ConfigError("unknown topology \"" + topology_name + "\"");
  cfg.topology = *kind;
  if (!j.contains("beta")) throw ConfigError("missing required field \"beta\"");

  cfg.num_regions = detail::get_field<int>(j, "num_regions", cfg.num_regions);
  cfg.total_assets = detail::get_field<double>(j, "total_assets", cfg.total_assets);
  cfg.total_steps = detail::get_field<int>(j, "total_steps", cfg.total_steps);
  cfg.output_path = detail::get_field<std::string>(j, "output_path", cfg.output_path);

  ModelParams& p = cfg.params;
  p.beta = detail::get_field<double>(j, "beta", p.beta);
  p.alpha = detail::get_field<double>(j, "alpha", p.alpha);
  p.gamma_up_assets = detail::get_field<double>(j, "gamma_up_assets", p.gamma_up_assets);
  p.gamma_up_profit = detail::get_field<double>(j, "gamma_up_profit", p.gamma_up_profit);
  p.gamma_down = detail::get_field<double>(j, "gamma_down", p.gamma_down);
  p.cost = detail::get_field<double>(j, "cost", p.cost);
  p.grow_threshold = detail::get_field<double>(j, "grow_threshold", p.grow_threshold);
  p.trim_threshold = detail::get_field<double>(j, "trim_threshold", p.trim_threshold);
  p.growable = detail::get_field<bool>(j, "growable", cfg.topology == TopologyKind::GrowableTree);

  if (j.contains("environment")) {
    const nlohmann::json& env = j.at("environment");
    if (!env.is_object()) throw ConfigError("field \"environment\" must be an object");
    if (env.contains("schedule")) {
      const nlohmann::json& sched = env.at("schedule");
      if (!sched.is_array() || sched.empty())
        throw ConfigError("environment.schedule must be a non-empty array");
      for (const nlohmann::json& entry : sched) {
        ScheduleEntry se;
        se.start_step = detail::get_field<int>(entry, "start_step", 0);
        se.qualities = detail::get_field<std::vector<double>>(entry, "qualities", {});
        cfg.environment.schedule.push_back(std::move(se));
      }
    } else {
      cfg.environment.period = detail::get_field<int>(env, "T", cfg.environment.period);
      cfg.environment.high_q = detail::get_field<double>(env, "high_q", cfg.environment.high_q);
      cfg.environment.low_q = detail::get_field<double>(env, "low_q", cfg.environment.low_q);
      cfg.environment.pattern = detail::get_field<std::string>(env, "pattern", cfg.environment.pattern);
    }
  }

  try {
    validate_config(cfg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

// Emits a config with every field explicit. parse_config() of the result
// reproduces the config exactly.
inline std::string canonical_config_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["topology"] = to_string(cfg.topology);
  j["num_regions"] = cfg.num_regions;
  j["total_assets"] = cfg.total_assets;
  j["beta"] = cfg.params.beta;
  j["alpha"] = cfg.params.alpha;
  j["gamma_up_assets"] = cfg.params.gamma_up_assets;
  j["gamma_up_profit"] = cfg.params.gamma_up_profit;
  j["gamma_down"] = cfg.params.gamma_down;
  j["cost"] = cfg.params.cost;
  j["grow_threshold"] = cfg.params.grow_threshold;
  j["trim_threshold"] = cfg.params.trim_threshold;
  j["growable"] = cfg.params.growable;
  nlohmann::ordered_json env;
  if (cfg.environment.is_shorthand()) {
    env["T"] = cfg.environment.period;
    env["high_q"] = cfg.environment.high_q;
    env["low_q"] = cfg.environment.low_q;
    env["pattern"] = cfg.environment.pattern;
  } else {
    nlohmann::ordered_json sched = nlohmann::ordered_json::array();
    for (const ScheduleEntry& e : cfg.environment.schedule) {
      nlohmann::ordered_json entry;
      entry["start_step"] = e.start_step;
      entry["qualities"] = e.qualities;
      sched.push_back(std::move(entry));
    }
    env["schedule"] = std::move(sched);
  }
  j["environment"] = std::move(env);
  j["total_steps"] = cfg.total_steps;
  j["output_path"] = cfg.output_path;
  return j.dump(2) + "\n";
}

}  // namespace msad
