#ifndef SPP_CONFIG_HPP
#define SPP_CONFIG_HPP

#include <string>

#include "spp/analysis.hpp"

// Experiment configs: one JSON document describing the system (tiered or
// fractal), the sweep grid, units, overlap policy and tolerance overrides.
// Unknown keys are rejected so typos fail loudly. Tier spacing accepts three
// parametrizations:
//   s  start-to-start period
//   c  edge-to-edge gap to the previous block, s_i = d_{i-1} + c_i
//   y  comb spacing defect (tier 2 only), s_2 = N_1 s_1 + y

namespace spp {

enum class OutputFormat { csv, jsonl };

struct Tolerances {
  double oracle_abs = 1e-9;
  double oracle_rel_log = 1e-6;
};

struct ExperimentConfig {
  SweepSystem system;
  SweepGrid grid;
  Units units;
  OutputFormat format = OutputFormat::csv;
  Tolerances tolerances;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

}  // namespace spp

#endif
