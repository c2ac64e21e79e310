#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mutualspace/floorplan.hpp"
#include "mutualspace/matching.hpp"
#include "mutualspace/placement.hpp"
#include "mutualspace/subspace.hpp"

namespace mutualspace::eval {

enum class Method { SaTable, SaWall, SaFloor, SIsa, STi };

const char* method_name(Method m);
Method method_from_name(const std::string& name);
plan::Context method_context(Method m);
match::ContextWeights method_weights(Method m);
std::vector<Method> all_methods();

enum class Condition { H1C2, H1C4, H1C6 };

const char* condition_name(Condition c);
Condition condition_from_name(const std::string& name);
int condition_clients(Condition c);
std::vector<Condition> all_conditions();

struct Corpus {
  std::vector<plan::Floorplan> hosts, homes, offices;
};

Corpus load_corpus(const std::string& dir);  // validates the 4/5/5 shape

struct Combination {
  Condition condition = Condition::H1C2;
  int host_index = 0;
  std::vector<int> home_indices, office_indices;

  std::string id(const Corpus& corpus) const;
};

// 100 H1-C2 (4*5*5), 400 H1-C4 (4*C(5,2)^2), 400 H1-C6 (4*C(5,3)^2), in
// lexicographic host/home/office order.
std::vector<Combination> enumerate_combinations(const Corpus& corpus, Condition condition);

struct MetricsRecord {
  Method method = Method::SaFloor;
  Condition condition = Condition::H1C2;
  int n_hosts = 1;
  std::string combo_id;
  bool success = false;
  std::string failure_stage;  // "target" | "match" | "placement" when failed
  double total_interactable = 0.0;
  double total_obstacle = 0.0;
  std::vector<double> per_client_interactable, per_client_obstacle;
};

struct EvalConfig {
  match::MatchConfig match;
  place::PlacementConfig placement;  // n_hosts/n_clients filled per run
  subspace::SweepParams sweep;
  int jobs = 0;
  std::string out_dir;        // when set, per-combination outputs are written
  bool write_mutual = true;   // also dump mutual-space JSON per combination
};

// Pose optimization is per (host, client) pair and shared across
// combinations; S-ISA and S-TI share the geometric-weights group.
class PoseCache {
 public:
  struct Entry {
    bool ok = false;
    std::string failure_stage;
    match::PairSetup setup;
    match::MatchResult result;
    match::OverlayClasses overlay;
  };

  void precompute(const Corpus& corpus, const std::vector<Method>& methods,
                  const EvalConfig& cfg);
  const Entry& get(Method m, int host_index, bool is_home, int client_index) const;

 private:
  // key: (group, host, client-pool index)
  std::map<std::tuple<int, int, int>, Entry> entries_;
};

MetricsRecord run_method(Method method, const Corpus& corpus, const Combination& combo,
                         int n_hosts, const EvalConfig& cfg, const PoseCache& cache,
                         subspace::MutualSpace* mutual_out = nullptr);

// Full or filtered sweep; parallel over (method, combination, n_hosts) with
// deterministic result order. Resumes from existing per-combination records
// when out_dir is set.
std::vector<MetricsRecord> run_sweep(const Corpus& corpus, const std::vector<Method>& methods,
                                     const std::vector<Condition>& conditions,
                                     const std::vector<int>& n_hosts_list, const EvalConfig& cfg,
                                     const PoseCache& cache);

struct Stats {
  int n = 0;
  double mean = 0.0, sd = 0.0, sem = 0.0;
};

Stats compute_stats(const std::vector<double>& values);

struct AggregateRow {
  Method method = Method::SaFloor;
  Condition condition = Condition::H1C2;
  int n_hosts = 1;
  int combinations = 0;
  int successes = 0;
  double success_rate = 0.0;
  bool has_areas = false;  // area stats reported for n_hosts == 1 only
  Stats total_interactable, total_obstacle, client_interactable, client_obstacle;
};

using AggregateReport = std::vector<AggregateRow>;

AggregateReport aggregate(const std::vector<MetricsRecord>& records);

void report_csv(const AggregateReport& report, std::ostream& out);
void write_report_csv(const AggregateReport& report, const std::string& path);

nlohmann::json record_to_json(const MetricsRecord& r);
MetricsRecord record_from_json(const nlohmann::json& j);

std::string format_aggregate_table(const AggregateReport& report);

}  // namespace mutualspace::eval
