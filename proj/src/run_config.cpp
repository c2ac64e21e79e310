#include "mutualspace/run_config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mutualspace/errors.hpp"

namespace mutualspace::config {

using nlohmann::json;

void RunConfig::validate() const {
  if (context != "table" && context != "wall" && context != "floor")
    throw ValidationError("context must be table|wall|floor");
  if (!method.empty()) eval::method_from_name(method);
  for (double w : weights)
    if (w < 0.0) throw ValidationError("weights must be >= 0");
  if (d_step <= 0.0 || d_step > 0.5) throw ValidationError("d_step must be in (0, 0.5]");
  if (personal_diameter < 0.3) throw ValidationError("personal_diameter must be >= 0.3");
  if (surface_offset <= 0.0) throw ValidationError("surface_offset must be > 0");
  if (marker_step <= 0.0 || marker_thickness <= 0.0 || marker_start <= 0.0 ||
      marker_initial_length <= 0.0)
    throw ValidationError("marker parameters must be > 0");
  if (a_min < 0.0) throw ValidationError("a_min must be >= 0");
  if (boundary_eps <= 0.0) throw ValidationError("boundary_eps must be > 0");
  if (population < 8) throw ValidationError("population must be >= 8");
  if (generations < 20) throw ValidationError("generations must be >= 20");
  if (jobs < 0) throw ValidationError("jobs must be >= 0");
}

eval::EvalConfig RunConfig::eval_config() const {
  eval::EvalConfig e;
  e.match.population = population;
  e.match.generations = generations;
  e.match.seed = seed;
  e.match.boundary_eps = boundary_eps;
  e.placement.d_step = d_step;
  e.placement.personal_diameter = personal_diameter;
  e.placement.surface_offset = surface_offset;
  e.sweep.marker_initial_length = marker_initial_length;
  e.sweep.marker_thickness = marker_thickness;
  e.sweep.marker_start = marker_start;
  e.sweep.marker_step = marker_step;
  e.sweep.a_min = a_min;
  e.jobs = jobs;
  e.out_dir = out_dir;
  return e;
}

match::ContextWeights RunConfig::context_weights() const {
  if (weights_overridden)
    return {weights[0], weights[1], weights[2], weights[3], weights[4]};
  if (!method.empty()) return eval::method_weights(eval::method_from_name(method));
  if (context == "table") return match::ContextWeights::sa_table();
  if (context == "wall") return match::ContextWeights::sa_wall();
  return match::ContextWeights::sa_floor();
}

void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw ParseError("config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "context") cfg.context = value.get<std::string>();
    else if (key == "method") cfg.method = value.get<std::string>();
    else if (key == "weights") {
      if (!value.is_array() || value.size() != 5)
        throw ParseError("config.weights: expected an array of 5 numbers");
      for (int i = 0; i < 5; ++i) cfg.weights[i] = value[i].get<double>();
      cfg.weights_overridden = true;
    } else if (key == "d_step") cfg.d_step = value.get<double>();
    else if (key == "personal_diameter") cfg.personal_diameter = value.get<double>();
    else if (key == "surface_offset") cfg.surface_offset = value.get<double>();
    else if (key == "marker_step") cfg.marker_step = value.get<double>();
    else if (key == "marker_thickness") cfg.marker_thickness = value.get<double>();
    else if (key == "marker_start") cfg.marker_start = value.get<double>();
    else if (key == "marker_initial_length") cfg.marker_initial_length = value.get<double>();
    else if (key == "a_min") cfg.a_min = value.get<double>();
    else if (key == "boundary_eps") cfg.boundary_eps = value.get<double>();
    else if (key == "population") cfg.population = value.get<int>();
    else if (key == "generations") cfg.generations = value.get<int>();
    else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
    else if (key == "jobs") cfg.jobs = value.get<int>();
    else if (key == "out_dir") cfg.out_dir = value.get<std::string>();
    else throw ParseError("config: unknown key '" + key + "'");
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: invalid JSON: ") + e.what());
  }
  RunConfig cfg;
  apply_json(cfg, j);
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json j;
  j["context"] = cfg.context;
  j["method"] = cfg.method;
  j["weights"] = {cfg.weights[0], cfg.weights[1], cfg.weights[2], cfg.weights[3], cfg.weights[4]};
  j["d_step"] = cfg.d_step;
  j["personal_diameter"] = cfg.personal_diameter;
  j["surface_offset"] = cfg.surface_offset;
  j["marker_step"] = cfg.marker_step;
  j["marker_thickness"] = cfg.marker_thickness;
  j["marker_start"] = cfg.marker_start;
  j["marker_initial_length"] = cfg.marker_initial_length;
  j["a_min"] = cfg.a_min;
  j["boundary_eps"] = cfg.boundary_eps;
  j["population"] = cfg.population;
  j["generations"] = cfg.generations;
  j["seed"] = cfg.seed;
  j["jobs"] = cfg.jobs;
  j["out_dir"] = cfg.out_dir;
  return j;
}

}  // namespace mutualspace::config
