#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mutualspace/corpus.hpp"
#include "mutualspace/errors.hpp"
#include "mutualspace/evaluation.hpp"
#include "mutualspace/optimizer.hpp"
#include "mutualspace/run_config.hpp"
#include "mutualspace/svg_render.hpp"

namespace fs = std::filesystem;
using namespace mutualspace;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitAlgorithmFailure = 2;

struct CliOptions {
  std::string config_file;
  config::RunConfig cfg;
  // flag presence trackers so flags override the config file
  bool has_context = false, has_method = false, has_seed = false, has_jobs = false,
       has_out = false;
  std::string context, method, out;
  std::uint64_t seed = 1;
  int jobs = 0;
};

void finalize_config(CliOptions& cli) {
  config::RunConfig base;
  if (const char* env = std::getenv("MUTUALSPACE_OUT")) base.out_dir = env;
  if (!cli.config_file.empty()) {
    config::RunConfig from_file = base;
    nlohmann::json j;
    std::ifstream in(cli.config_file);
    if (!in) throw ParseError("cannot open config '" + cli.config_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      j = nlohmann::json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("config: invalid JSON: ") + e.what());
    }
    config::apply_json(from_file, j);
    base = from_file;
  }
  // Flags override the file.
  const config::RunConfig flag_values = cli.cfg;
  cli.cfg = base;
  if (cli.has_context) cli.cfg.context = cli.context;
  if (cli.has_method) cli.cfg.method = cli.method;
  if (cli.has_seed) cli.cfg.seed = cli.seed;
  if (cli.has_jobs) cli.cfg.jobs = cli.jobs;
  if (cli.has_out) cli.cfg.out_dir = cli.out;
  (void)flag_values;
  cli.cfg.validate();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (!fs::path(path).parent_path().empty()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

int cmd_match(const CliOptions& cli, const std::string& host_file,
              const std::vector<std::string>& client_files) {
  const config::RunConfig& cfg = cli.cfg;
  const plan::Context context = plan::context_from_string(cfg.context);
  const match::ContextWeights weights = cfg.context_weights();
  const eval::EvalConfig ecfg = cfg.eval_config();

  const plan::Floorplan host = plan::load_floorplan(host_file);
  std::vector<plan::Floorplan> clients;
  for (const auto& f : client_files) clients.push_back(plan::load_floorplan(f));

  std::vector<match::PairSetup> setups;
  std::vector<match::MatchResult> results;
  std::vector<match::OverlayClasses> overlays;
  for (const auto& client : clients) {
    match::PairSetup setup = match::prepare_pair(host, client, context);
    match::MatchConfig mc = ecfg.match;
    mc.seed = opt::mix_seed(cfg.seed, opt::hash_string(host.id + "|" + client.id));
    mc.jobs = cfg.jobs;
    match::MatchResult r = match::optimize_pose(setup, weights, mc);
    overlays.push_back(match::semantic_overlay(setup.host_map, setup.client_map, r.pose, context));
    setups.push_back(std::move(setup));
    results.push_back(std::move(r));
  }

  place::PlacementInputs inputs;
  inputs.context = context;
  inputs.host_map = &setups.front().host_map;
  if (context == plan::Context::Table) inputs.host_target_table = setups.front().host_table;
  if (context == plan::Context::Wall) inputs.host_target_face = setups.front().host_wall_face;
  for (std::size_t k = 0; k < clients.size(); ++k) {
    place::PlacementInputs::Client c;
    c.plan = &clients[k];
    c.map = &setups[k].client_map;
    c.pose = results[k].pose;
    if (context == plan::Context::Table) c.target_table = setups[k].client_table;
    if (context == plan::Context::Wall) {
      const plan::LabeledRegion* cw = clients[k].find_region(setups[k].targets.client.region_id);
      c.target_face = scene::wall_inner_face(clients[k], *cw);
    }
    c.overlay = &overlays[k];
    inputs.clients.push_back(std::move(c));
  }

  place::PlacementConfig pcfg = ecfg.placement;
  pcfg.n_hosts = 1;
  pcfg.n_clients = static_cast<int>(clients.size());
  const auto geoms = place::build_user_geometry(inputs, pcfg);
  place::CandidateSets sets = place::sample_candidates(geoms, pcfg);
  sets = place::filter_candidates(sets, geoms, pcfg);
  const place::Placement placement = place::select_positions(sets, pcfg, geoms);

  std::vector<subspace::ClientAllocation> allocations;
  if (placement.success) {
    for (std::size_t k = 0; k < clients.size(); ++k) {
      const geom::PolygonSet footprint =
          geom::intersect(overlays[k].client_footprint, setups.front().host_map.footprint);
      subspace::Subspace sub = subspace::extract_subspace(
          overlays[k], footprint, placement.positions[1 + k], results[k].pose.theta, ecfg.sweep);
      sub.owner = clients[k].id;
      subspace::ClientAllocation ca;
      ca.client_id = clients[k].id;
      ca.pose = results[k].pose;
      ca.subspace = std::move(sub);
      allocations.push_back(std::move(ca));
    }
  }
  const std::string method_name = cfg.method.empty()
                                      ? std::string("SA-") + (cfg.context == "table"   ? "Table"
                                                              : cfg.context == "wall" ? "Wall"
                                                                                      : "Floor")
                                      : cfg.method;
  subspace::MutualSpace ms =
      subspace::allocate(host, context, method_name, inputs.host_target_table,
                         inputs.host_target_face, std::move(allocations), placement, 1);

  fs::create_directories(cfg.out_dir);
  const std::string base = cfg.out_dir + "/mutual-space";
  write_text(base + ".json", subspace::to_json(ms).dump(2) + "\n");
  write_text(base + ".svg", svg::render_mutual_space(ms));
  std::cout << (placement.success ? "placed " : "placement failed; wrote ")
            << base + ".json and " << base + ".svg\n";
  return placement.success ? kExitOk : kExitAlgorithmFailure;
}

int cmd_evaluate(const CliOptions& cli, const std::string& corpus_dir,
                 const std::vector<std::string>& method_names,
                 const std::vector<std::string>& condition_names,
                 const std::vector<int>& n_hosts_list) {
  const config::RunConfig& cfg = cli.cfg;
  eval::EvalConfig ecfg = cfg.eval_config();

  eval::Corpus corpus = corpus_dir.empty() ? corpus::builtin_corpus(cfg.seed)
                                           : eval::load_corpus(corpus_dir);
  std::vector<eval::Method> methods;
  if (method_names.empty()) methods = eval::all_methods();
  else
    for (const auto& n : method_names) methods.push_back(eval::method_from_name(n));
  std::vector<eval::Condition> conditions;
  if (condition_names.empty()) conditions = eval::all_conditions();
  else
    for (const auto& n : condition_names) conditions.push_back(eval::condition_from_name(n));
  std::vector<int> hosts = n_hosts_list.empty() ? std::vector<int>{1, 2, 3} : n_hosts_list;

  eval::PoseCache cache;
  cache.precompute(corpus, methods, ecfg);
  const auto records = eval::run_sweep(corpus, methods, conditions, hosts, ecfg, cache);
  const auto report = eval::aggregate(records);
  eval::write_report_csv(report, ecfg.out_dir + "/report.csv");
  std::cout << eval::format_aggregate_table(report);
  std::cout << "report: " << ecfg.out_dir + "/report.csv" << "\n";
  return kExitOk;
}

int cmd_render(const std::string& input, const std::string& out_file) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(slurp(input));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  std::string svg_text;
  if (j.contains("clients"))
    svg_text = svg::render_mutual_space(subspace::mutual_space_from_json(j));
  else
    svg_text = svg::render_floorplan(plan::floorplan_from_json(j));
  std::string path = out_file;
  if (path.empty()) path = fs::path(input).replace_extension(".svg").string();
  write_text(path, svg_text);
  std::cout << "wrote " << path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mutual-space generation for MR telepresence"};
  app.require_subcommand(1);

  CliOptions cli;
  app.add_option("--config", cli.config_file, "JSON config file");
  app.add_option("--context", cli.context, "collaboration context: table|wall|floor")
      ->each([&](const std::string&) { cli.has_context = true; });
  app.add_option("--method", cli.method, "SA-Table|SA-Wall|SA-Floor|S-ISA|S-TI")
      ->each([&](const std::string&) { cli.has_method = true; });
  app.add_option("--seed", cli.seed, "optimizer seed")
      ->each([&](const std::string&) { cli.has_seed = true; });
  app.add_option("--jobs", cli.jobs, "worker threads (0 = all cores)")
      ->each([&](const std::string&) { cli.has_jobs = true; });
  app.add_option("--out", cli.out, "output directory")
      ->each([&](const std::string&) { cli.has_out = true; });

  // match
  auto* match_cmd = app.add_subcommand("match", "match client plans onto a host plan");
  std::string host_file;
  std::vector<std::string> client_files;
  match_cmd->add_option("host", host_file, "host floorplan JSON")->required();
  match_cmd->add_option("clients", client_files, "client floorplan JSONs")->required();

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "run the batch evaluation");
  std::string corpus_dir;
  std::vector<std::string> method_names, condition_names;
  std::vector<int> n_hosts_list;
  eval_cmd->add_option("--corpus", corpus_dir, "corpus directory (default: bundled corpus)");
  eval_cmd->add_option("--methods", method_names, "methods to run")->delimiter(',');
  eval_cmd->add_option("--conditions", condition_names, "H1-C2,H1-C4,H1-C6")->delimiter(',');
  eval_cmd->add_option("--n-hosts", n_hosts_list, "host user counts (default 1,2,3)")
      ->delimiter(',');

  // render
  auto* render_cmd = app.add_subcommand("render", "render a floorplan or mutual-space JSON");
  std::string render_input, render_out;
  render_cmd->add_option("input", render_input, "JSON file")->required();
  render_cmd->add_option("--out-file", render_out, "output SVG path");

  // gen-corpus
  auto* gen_cmd = app.add_subcommand("gen-corpus", "write the bundled 14-plan corpus");
  std::string gen_dir = "data/corpus";
  gen_cmd->add_option("--out-dir", gen_dir, "target directory");

  // print-config
  app.add_subcommand("print-config", "print the effective configuration");

  CLI11_PARSE(app, argc, argv);

  try {
    finalize_config(cli);
    if (match_cmd->parsed()) return cmd_match(cli, host_file, client_files);
    if (eval_cmd->parsed())
      return cmd_evaluate(cli, corpus_dir, method_names, condition_names, n_hosts_list);
    if (render_cmd->parsed()) return cmd_render(render_input, render_out);
    if (gen_cmd->parsed()) {
      corpus::write_corpus(gen_dir, cli.cfg.seed);
      std::cout << "wrote 14 floorplans to " << gen_dir << "\n";
      return kExitOk;
    }
    std::cout << config::to_json(cli.cfg).dump(2) << "\n";
    return kExitOk;
  } catch (const MatchFailedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAlgorithmFailure;
  } catch (const TargetNotFoundError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAlgorithmFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
