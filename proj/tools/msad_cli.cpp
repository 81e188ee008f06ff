// Command-line front end: single experiment runs and beta x topology sweeps.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "msad/msad.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read config file \"" + path + "\"");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      if (!current.empty()) items.push_back(current);
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current += c;
    }
  }
  if (!current.empty()) items.push_back(current);
  return items;
}

// Assembles the effective config from --preset/--config plus overrides.
// "--preset paper" stands in for an empty config file: every field takes the
// benchmark default, so only topology and beta still have to come from
// somewhere.
msad::ExperimentConfig load_config(const std::string& config_path, const std::string& preset,
                                   const std::optional<std::string>& topology,
                                   const std::optional<double>& beta) {
  if (!preset.empty() && preset != "paper")
    throw msad::ConfigError("unknown preset \"" + preset + "\"");
  nlohmann::json j = nlohmann::json::object();
  if (!config_path.empty()) {
    j = nlohmann::json::parse(read_file(config_path), nullptr, true);
    if (!j.is_object()) throw msad::ConfigError("config must be a JSON object");
  } else if (preset.empty()) {
    throw msad::ConfigError("either --config or --preset paper is required");
  }
  if (topology) j["topology"] = *topology;
  if (beta) j["beta"] = *beta;
  if (!j.contains("topology")) throw msad::ConfigError("missing topology (set it in the config or pass --topology)");
  if (!j.contains("beta")) throw msad::ConfigError("missing beta (set it in the config or pass --beta)");
  return msad::parse_config(j.dump());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-scale asset distribution simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  std::string out_path;
  std::optional<std::string> topology;
  std::optional<double> beta;
  std::optional<double> alpha;
  std::optional<int> steps;

  CLI::App* run_cmd = app.add_subcommand("run", "Run one experiment and write its CSV time series");
  run_cmd->add_option("--config", config_path, "Experiment config (JSON)");
  run_cmd->add_option("--preset", preset, "Named parameter preset (\"paper\")");
  run_cmd->add_option("--topology", topology, "Topology name override");
  run_cmd->add_option("--beta", beta, "Competition factor override");
  run_cmd->add_option("--alpha", alpha, "Release factor override");
  run_cmd->add_option("--steps", steps, "Total steps override");
  run_cmd->add_option("--out", out_path, "Output CSV path (overrides output_path)");

  std::string betas_arg;
  std::string topologies_arg;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a beta x topology sweep and write the mean-profit table");
  sweep_cmd->add_option("--config", config_path, "Base experiment config (JSON)");
  sweep_cmd->add_option("--preset", preset, "Named parameter preset (\"paper\")");
  sweep_cmd->add_option("--betas", betas_arg, "Comma-separated beta values")->required();
  sweep_cmd->add_option("--topologies", topologies_arg, "Comma-separated topology names")->required();
  sweep_cmd->add_option("--alpha", alpha, "Release factor override");
  sweep_cmd->add_option("--out", out_path, "Output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      msad::ExperimentConfig cfg = load_config(config_path, preset, topology, beta);
      if (alpha) cfg.params.alpha = *alpha;
      if (steps) cfg.total_steps = *steps;
      msad::validate_config(cfg);
      msad::run_experiment(cfg, out_path);
      std::cout << "wrote " << (out_path.empty() ? cfg.output_path : out_path) << "\n";
    } else {
      std::vector<double> betas;
      for (const std::string& b : split_list(betas_arg)) betas.push_back(std::stod(b));
      std::vector<msad::TopologyKind> kinds;
      for (const std::string& name : split_list(topologies_arg)) {
        auto kind = msad::topology_from_name(name);
        if (!kind) throw msad::ConfigError("unknown topology \"" + name + "\"");
        kinds.push_back(*kind);
      }
      // sweeps supply beta per cell; topology is irrelevant but must parse
      msad::ExperimentConfig base =
          load_config(config_path, preset, topology.value_or(kinds.empty() ? "growable" : to_string(kinds.front())),
                      beta.value_or(0.0));
      if (alpha) base.params.alpha = *alpha;
      if (steps) base.total_steps = *steps;
      msad::validate_config(base);
      msad::SweepResult sweep = msad::run_sweep(kinds, betas, base);
      msad::write_file(out_path, msad::sweep_csv(sweep));
      std::cout << "wrote " << out_path << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
