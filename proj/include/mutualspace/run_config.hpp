#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "mutualspace/evaluation.hpp"

namespace mutualspace::config {

// Tunable knobs with their documented defaults. Unknown config keys are
// rejected; command-line flags override file values.
struct RunConfig {
  std::string context = "table";
  std::string method;             // empty = derive SA method from context
  double weights[5] = {10.0, 10.0, 100.0, 0.0, 0.0};
  bool weights_overridden = false;
  double d_step = 0.2;
  double personal_diameter = 0.6;
  double surface_offset = 0.45;
  double marker_step = 0.1;
  double marker_thickness = 0.1;
  double marker_start = 0.3;
  double marker_initial_length = 0.6;
  double a_min = 4.0;
  double boundary_eps = 0.05;
  int population = 32;
  int generations = 100;
  std::uint64_t seed = 1;
  int jobs = 0;
  std::string out_dir = "out";

  void validate() const;  // throws ValidationError on out-of-range values

  eval::EvalConfig eval_config() const;
  match::ContextWeights context_weights() const;
};

RunConfig load_config_file(const std::string& path);
void apply_json(RunConfig& cfg, const nlohmann::json& j);  // rejects unknown keys
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace mutualspace::config
