// Experiment harness: runs a config to a per-step CSV time series, and runs
// beta x topology sweeps to a mean-profit summary table. Output is
// byte-deterministic for a fixed config.
#pragma once

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "msad/config.hpp"
#include "msad/engine.hpp"

namespace msad {

// Sweep cells average profit over this window (clamped to the run length).
inline constexpr int kSweepWindow = 800;

// Locale-independent decimal formatting, 12 significant digits.
inline std::string format_number(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

inline RunResult run_config(const ExperimentConfig& cfg, const StepObserver& observer = {}) {
  return run(cfg.topology, cfg.params, make_environment(cfg), cfg.total_steps, cfg.total_assets,
             observer);
}

// Header plus one row per step:
//   step,profit,relocated_pct,assets_region_1..assets_region_M,node_count,leaf_count
inline std::string experiment_csv(const ExperimentConfig& cfg) {
  RunResult result = run_config(cfg);
  std::string out = "step,profit,relocated_pct";
  for (int r = 1; r <= cfg.num_regions; ++r) out += ",assets_region_" + std::to_string(r);
  out += ",node_count,leaf_count\n";
  for (const MetricsRow& row : result.rows) {
    out += std::to_string(row.step);
    out += ',';
    out += format_number(row.profit);
    out += ',';
    out += format_number(row.relocated_pct);
    for (double a : row.region_assets) {
      out += ',';
      out += format_number(a);
    }
    out += ',';
    out += std::to_string(row.node_count);
    out += ',';
    out += std::to_string(row.leaf_count);
    out += '\n';
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open \"" + path + "\" for writing");
  f << text;
  f.flush();
  if (!f) throw std::runtime_error("write failed for \"" + path + "\"");
}

inline void run_experiment(const ExperimentConfig& cfg, const std::string& out_override = "") {
  const std::string& path = out_override.empty() ? cfg.output_path : out_override;
  if (path.empty()) throw ConfigError("no output path given (set output_path or pass --out)");
  write_file(path, experiment_csv(cfg));
}

struct SweepResult {
  std::vector<TopologyKind> topologies;
  std::vector<double> betas;
  std::vector<std::vector<double>> mean_profits;  // [beta index][topology index]
};

// Runs every (beta, topology) combination of the base config. Morphology is
// enabled exactly for the growable kind, so static topologies in the same
// sweep stay static.
inline SweepResult run_sweep(const std::vector<TopologyKind>& topologies,
                             const std::vector<double>& betas, const ExperimentConfig& base) {
  if (topologies.empty() || betas.empty())
    throw ConfigError("sweep needs at least one topology and one beta");
  SweepResult result;
  result.topologies = topologies;
  result.betas = betas;
  const int window = std::min(kSweepWindow, base.total_steps);
  for (double beta : betas) {
    std::vector<double> row;
    row.reserve(topologies.size());
    for (TopologyKind kind : topologies) {
      ExperimentConfig cfg = base;
      cfg.topology = kind;
      cfg.params.beta = beta;
      cfg.params.growable = kind == TopologyKind::GrowableTree;
      try {
        row.push_back(mean_profit(run_config(cfg), 0, window));
      } catch (const std::exception& e) {
        throw std::runtime_error("sweep cell (" + std::string(to_string(kind)) + ", beta=" +
                                 format_number(beta) + ") failed: " + e.what());
      }
    }
    result.mean_profits.push_back(std::move(row));
  }
  return result;
}

inline std::string sweep_csv(const SweepResult& sweep) {
  std::string out = "beta";
  for (TopologyKind kind : sweep.topologies) {
    out += ',';
    out += to_string(kind);
  }
  out += '\n';
  for (std::size_t i = 0; i < sweep.betas.size(); ++i) {
    out += format_number(sweep.betas[i]);
    for (double cell : sweep.mean_profits[i]) {
      out += ',';
      out += format_number(cell);
    }
    out += '\n';
  }
  return out;
}

}  // namespace msad
