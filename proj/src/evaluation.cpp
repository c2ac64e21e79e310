#include "mutualspace/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <nlohmann/json.hpp>

#include "mutualspace/errors.hpp"
#include "mutualspace/optimizer.hpp"

namespace mutualspace::eval {

namespace fs = std::filesystem;
using nlohmann::json;

const char* method_name(Method m) {
  switch (m) {
    case Method::SaTable: return "SA-Table";
    case Method::SaWall: return "SA-Wall";
    case Method::SaFloor: return "SA-Floor";
    case Method::SIsa: return "S-ISA";
    case Method::STi: return "S-TI";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  for (Method m : all_methods())
    if (name == method_name(m)) return m;
  throw ParseError("unknown method '" + name + "'");
}

plan::Context method_context(Method m) {
  switch (m) {
    case Method::SaTable: return plan::Context::Table;
    case Method::SaWall: return plan::Context::Wall;
    default: return plan::Context::Floor;
  }
}

match::ContextWeights method_weights(Method m) {
  switch (m) {
    case Method::SaTable: return match::ContextWeights::sa_table();
    case Method::SaWall: return match::ContextWeights::sa_wall();
    case Method::SaFloor: return match::ContextWeights::sa_floor();
    default: return match::ContextWeights::geometric();
  }
}

std::vector<Method> all_methods() {
  return {Method::SaTable, Method::SaWall, Method::SaFloor, Method::SIsa, Method::STi};
}

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::H1C2: return "H1-C2";
    case Condition::H1C4: return "H1-C4";
    case Condition::H1C6: return "H1-C6";
  }
  return "?";
}

Condition condition_from_name(const std::string& name) {
  for (Condition c : all_conditions())
    if (name == condition_name(c)) return c;
  throw ParseError("unknown condition '" + name + "'");
}

int condition_clients(Condition c) {
  switch (c) {
    case Condition::H1C2: return 2;
    case Condition::H1C4: return 4;
    case Condition::H1C6: return 6;
  }
  return 0;
}

std::vector<Condition> all_conditions() {
  return {Condition::H1C2, Condition::H1C4, Condition::H1C6};
}

Corpus load_corpus(const std::string& dir) {
  Corpus corpus;
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    plan::Floorplan fp = plan::load_floorplan(f);
    switch (fp.kind) {
      case plan::PlanKind::Host: corpus.hosts.push_back(std::move(fp)); break;
      case plan::PlanKind::Home: corpus.homes.push_back(std::move(fp)); break;
      case plan::PlanKind::Office: corpus.offices.push_back(std::move(fp)); break;
    }
  }
  auto by_id = [](const plan::Floorplan& a, const plan::Floorplan& b) { return a.id < b.id; };
  std::sort(corpus.hosts.begin(), corpus.hosts.end(), by_id);
  std::sort(corpus.homes.begin(), corpus.homes.end(), by_id);
  std::sort(corpus.offices.begin(), corpus.offices.end(), by_id);
  if (corpus.hosts.size() != 4 || corpus.homes.size() != 5 || corpus.offices.size() != 5)
    throw ValidationError("corpus must contain 4 host, 5 home, and 5 office plans; found " +
                          std::to_string(corpus.hosts.size()) + "/" +
                          std::to_string(corpus.homes.size()) + "/" +
                          std::to_string(corpus.offices.size()));
  return corpus;
}

std::string Combination::id(const Corpus& corpus) const {
  std::string s = corpus.hosts[host_index].id;
  for (int i : home_indices) s += "__" + corpus.homes[i].id;
  for (int i : office_indices) s += "__" + corpus.offices[i].id;
  return s;
}

namespace {

std::vector<std::vector<int>> index_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick(k);
  // lexicographic k-subsets of {0..n-1}
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    out.push_back(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

}  // namespace

std::vector<Combination> enumerate_combinations(const Corpus& corpus, Condition condition) {
  const int k = condition_clients(condition) / 2;
  const auto homes = index_subsets(static_cast<int>(corpus.homes.size()), k);
  const auto offices = index_subsets(static_cast<int>(corpus.offices.size()), k);
  std::vector<Combination> out;
  out.reserve(corpus.hosts.size() * homes.size() * offices.size());
  for (int h = 0; h < static_cast<int>(corpus.hosts.size()); ++h)
    for (const auto& hm : homes)
      for (const auto& of : offices) {
        Combination c;
        c.condition = condition;
        c.host_index = h;
        c.home_indices = hm;
        c.office_indices = of;
        out.push_back(std::move(c));
      }
  return out;
}

namespace {

// Pose groups: the three SA contexts plus the shared geometric group.
enum class MatchGroup { Table, Wall, Floor, Geometric };

MatchGroup method_group(Method m) {
  switch (m) {
    case Method::SaTable: return MatchGroup::Table;
    case Method::SaWall: return MatchGroup::Wall;
    case Method::SaFloor: return MatchGroup::Floor;
    default: return MatchGroup::Geometric;
  }
}

plan::Context group_context(MatchGroup g) {
  switch (g) {
    case MatchGroup::Table: return plan::Context::Table;
    case MatchGroup::Wall: return plan::Context::Wall;
    default: return plan::Context::Floor;
  }
}

match::ContextWeights group_weights(MatchGroup g) {
  switch (g) {
    case MatchGroup::Table: return match::ContextWeights::sa_table();
    case MatchGroup::Wall: return match::ContextWeights::sa_wall();
    case MatchGroup::Floor: return match::ContextWeights::sa_floor();
    default: return match::ContextWeights::geometric();
  }
}

const char* group_name(MatchGroup g) {
  switch (g) {
    case MatchGroup::Table: return "table";
    case MatchGroup::Wall: return "wall";
    case MatchGroup::Floor: return "floor";
    default: return "geometric";
  }
}

}  // namespace

void PoseCache::precompute(const Corpus& corpus, const std::vector<Method>& methods,
                           const EvalConfig& cfg) {
  std::vector<MatchGroup> groups;
  for (Method m : methods) {
    MatchGroup g = method_group(m);
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(g);
  }
  std::sort(groups.begin(), groups.end());

  struct Task {
    MatchGroup group;
    int host;
    int client;  // 0..9: homes then offices
  };
  std::vector<Task> tasks;
  for (MatchGroup g : groups)
    for (int h = 0; h < static_cast<int>(corpus.hosts.size()); ++h)
      for (int c = 0; c < static_cast<int>(corpus.homes.size() + corpus.offices.size()); ++c)
        tasks.push_back({g, h, c});

  std::vector<Entry> results(tasks.size());
#ifdef _OPENMP
  const int nt = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
#endif
  for (std::int64_t ti = 0; ti < static_cast<std::int64_t>(tasks.size()); ++ti) {
    const Task& t = tasks[static_cast<std::size_t>(ti)];
    Entry& e = results[static_cast<std::size_t>(ti)];
    const plan::Floorplan& host = corpus.hosts[t.host];
    const int n_homes = static_cast<int>(corpus.homes.size());
    const plan::Floorplan& client =
        t.client < n_homes ? corpus.homes[t.client] : corpus.offices[t.client - n_homes];
    try {
      e.setup = match::prepare_pair(host, client, group_context(t.group));
      match::MatchConfig mc = cfg.match;
      mc.jobs = 1;  // pairs are already parallel
      mc.seed = opt::mix_seed(cfg.match.seed,
                              opt::hash_string(std::string(group_name(t.group)) + "|" + host.id +
                                               "|" + client.id));
      e.result = match::optimize_pose(e.setup, group_weights(t.group), mc);
      e.overlay = match::semantic_overlay(e.setup.host_map, e.setup.client_map, e.result.pose,
                                          group_context(t.group));
      e.ok = true;
    } catch (const TargetNotFoundError&) {
      e.failure_stage = "target";
    } catch (const MatchFailedError&) {
      e.failure_stage = "match";
    }
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Task& t = tasks[i];
    entries_[{static_cast<int>(t.group), t.host, t.client}] = std::move(results[i]);
  }
}

const PoseCache::Entry& PoseCache::get(Method m, int host_index, bool is_home,
                                       int client_index) const {
  const int pool = is_home ? client_index : client_index + 5;
  auto it = entries_.find({static_cast<int>(method_group(m)), host_index, pool});
  if (it == entries_.end())
    throw ValidationError("pose cache miss; precompute() must cover every method");
  return it->second;
}

namespace {

struct ComboClients {
  std::vector<const PoseCache::Entry*> entries;
  std::vector<const plan::Floorplan*> plans;
};

ComboClients combo_clients(Method method, const Corpus& corpus, const Combination& combo,
                           const PoseCache& cache) {
  ComboClients cc;
  for (int i : combo.home_indices) {
    cc.entries.push_back(&cache.get(method, combo.host_index, true, i));
    cc.plans.push_back(&corpus.homes[i]);
  }
  for (int i : combo.office_indices) {
    cc.entries.push_back(&cache.get(method, combo.host_index, false, i));
    cc.plans.push_back(&corpus.offices[i]);
  }
  return cc;
}

MetricsRecord make_record(Method method, const Combination& combo, int n_hosts,
                          const Corpus& corpus) {
  MetricsRecord r;
  r.method = method;
  r.condition = combo.condition;
  r.n_hosts = n_hosts;
  r.combo_id = combo.id(corpus);
  return r;
}

// S-TI: the mutual space is the per-class semantic intersection of the host
// and every transformed client; all users stand inside its floor class.
struct StiSpace {
  geom::PolygonSet m_table, m_wall, m_floor, m_obstacle;
  geom::PolygonSet common;      // host ∩ all transformed client footprints
  geom::PolygonSet interactable;  // table ∪ wall ∪ floor classes
  double interactable_area = 0.0;
  double obstacle_area = 0.0;  // matched obstacles + unmatched inside common
};

StiSpace sti_space(const plan::SemanticMap& host_map, const ComboClients& cc) {
  StiSpace s;
  // Floor-context classes: chair merges into obstacle.
  s.m_table = host_map.table;
  s.m_wall = host_map.wall;
  s.m_floor = host_map.floor;
  s.m_obstacle = geom::unite(host_map.obstacle, host_map.chair);
  s.common = host_map.footprint;
  for (const auto* e : cc.entries) {
    const geom::Pose& pose = e->result.pose;
    const plan::SemanticMap& cm = e->setup.client_map;
    s.m_table = geom::intersect(s.m_table, geom::transformed(cm.table, pose));
    s.m_wall = geom::intersect(s.m_wall, geom::transformed(cm.wall, pose));
    s.m_floor = geom::intersect(s.m_floor, geom::transformed(cm.floor, pose));
    s.m_obstacle =
        geom::intersect(s.m_obstacle, geom::transformed(geom::unite(cm.obstacle, cm.chair), pose));
    s.common = geom::intersect(s.common, geom::transformed(cm.footprint, pose));
  }
  s.interactable = geom::unite(geom::unite(s.m_table, s.m_wall), s.m_floor);
  s.interactable_area = s.interactable.area();
  const double matched =
      s.m_table.area() + s.m_wall.area() + s.m_floor.area() + s.m_obstacle.area();
  s.obstacle_area = s.m_obstacle.area() + std::max(0.0, s.common.area() - matched);
  return s;
}

MetricsRecord run_sti(Method method, const Corpus& corpus, const Combination& combo, int n_hosts,
                      const EvalConfig& cfg, const PoseCache& cache,
                      subspace::MutualSpace* mutual_out) {
  MetricsRecord rec = make_record(method, combo, n_hosts, corpus);
  const ComboClients cc = combo_clients(method, corpus, combo, cache);
  for (const auto* e : cc.entries) {
    if (!e->ok) {
      rec.failure_stage = e->failure_stage;
      return rec;
    }
  }
  const plan::SemanticMap& host_map = cc.entries.front()->setup.host_map;
  const StiSpace space = sti_space(host_map, cc);

  const int n_clients = static_cast<int>(cc.entries.size());
  place::PlacementConfig pcfg = cfg.placement;
  pcfg.n_hosts = n_hosts;
  pcfg.n_clients = n_clients;

  place::UserClassGeometry shared;
  shared.stand_region = space.m_floor;
  shared.forbidden = geom::subtract(host_map.footprint, space.m_floor);
  shared.target_kind = place::UserClassGeometry::TargetKind::Point;
  shared.target_point = space.m_floor.empty() ? host_map.footprint.centroid()
                                              : space.m_floor.centroid();
  shared.sample_kind = place::UserClassGeometry::SampleKind::Grid;
  shared.grid_region = space.m_floor;
  std::vector<place::UserClassGeometry> geoms(static_cast<std::size_t>(n_clients) + 1, shared);

  place::CandidateSets sets = place::sample_candidates(geoms, pcfg);
  sets = place::filter_candidates(sets, geoms, pcfg);
  const place::Placement placement = place::select_positions(sets, pcfg, geoms);
  if (!placement.success) {
    rec.failure_stage = "placement";
  } else {
    rec.success = true;
    rec.total_interactable = space.interactable_area;
    rec.total_obstacle = space.obstacle_area;
    rec.per_client_interactable.assign(n_clients, space.interactable_area);
    rec.per_client_obstacle.assign(n_clients, space.obstacle_area);
  }

  if (mutual_out != nullptr) {
    std::vector<subspace::ClientAllocation> allocations;
    for (int k = 0; k < n_clients; ++k) {
      subspace::ClientAllocation ca;
      ca.client_id = cc.plans[k]->id;
      ca.pose = cc.entries[k]->result.pose;
      ca.subspace.owner = ca.client_id;
      ca.subspace.region = space.interactable;
      ca.subspace.obstacle_region = geom::subtract(space.common, space.interactable);
      ca.subspace.interactable_area = space.interactable_area;
      ca.subspace.obstacle_area = space.obstacle_area;
      allocations.push_back(std::move(ca));
    }
    *mutual_out =
        subspace::allocate(corpus.hosts[combo.host_index], plan::Context::Floor,
                           method_name(method), {}, {}, std::move(allocations), placement, n_hosts);
    // The intersection is one shared region; it carries no allocation walls.
    for (auto& c : mutual_out->clients) c.walls.clear();
  }
  return rec;
}

MetricsRecord run_subspace_method(Method method, const Corpus& corpus, const Combination& combo,
                                  int n_hosts, const EvalConfig& cfg, const PoseCache& cache,
                                  subspace::MutualSpace* mutual_out) {
  MetricsRecord rec = make_record(method, combo, n_hosts, corpus);
  const plan::Context context = method_context(method);
  const ComboClients cc = combo_clients(method, corpus, combo, cache);
  for (const auto* e : cc.entries) {
    if (!e->ok) {
      rec.failure_stage = e->failure_stage;
      return rec;
    }
  }
  const int n_clients = static_cast<int>(cc.entries.size());
  const match::PairSetup& first = cc.entries.front()->setup;

  place::PlacementInputs inputs;
  inputs.context = context;
  inputs.host_map = &first.host_map;
  if (context == plan::Context::Table) inputs.host_target_table = first.host_table;
  if (context == plan::Context::Wall) inputs.host_target_face = first.host_wall_face;
  for (int k = 0; k < n_clients; ++k) {
    const auto& e = *cc.entries[k];
    place::PlacementInputs::Client c;
    c.plan = cc.plans[k];
    c.map = &e.setup.client_map;
    c.pose = e.result.pose;
    if (context == plan::Context::Table) c.target_table = e.setup.client_table;
    if (context == plan::Context::Wall) {
      const plan::LabeledRegion* cw = cc.plans[k]->find_region(e.setup.targets.client.region_id);
      c.target_face = scene::wall_inner_face(*cc.plans[k], *cw);
    }
    c.overlay = &e.overlay;
    inputs.clients.push_back(std::move(c));
  }

  place::PlacementConfig pcfg = cfg.placement;
  pcfg.n_hosts = n_hosts;
  pcfg.n_clients = n_clients;
  const auto geoms = place::build_user_geometry(inputs, pcfg);
  place::CandidateSets sets = place::sample_candidates(geoms, pcfg);
  sets = place::filter_candidates(sets, geoms, pcfg);
  const place::Placement placement = place::select_positions(sets, pcfg, geoms);

  std::vector<subspace::ClientAllocation> allocations;
  if (placement.success) {
    rec.success = true;
    geom::PolygonSet interactable_union, obstacle_union;
    for (int k = 0; k < n_clients; ++k) {
      const auto& e = *cc.entries[k];
      const geom::PolygonSet footprint =
          geom::intersect(e.overlay.client_footprint, first.host_map.footprint);
      const geom::Point2 pos = placement.positions[static_cast<std::size_t>(n_hosts) + k];
      subspace::Subspace sub = subspace::extract_subspace(e.overlay, footprint, pos,
                                                          e.result.pose.theta, cfg.sweep);
      sub.owner = cc.plans[k]->id;
      rec.per_client_interactable.push_back(sub.interactable_area);
      rec.per_client_obstacle.push_back(sub.obstacle_area);
      const geom::PolygonSet obst = geom::unite(e.overlay.matched_obstacle, e.overlay.unmatched);
      const geom::PolygonSet sub_obst = geom::intersect(sub.region, obst);
      const geom::PolygonSet sub_inter = geom::subtract(sub.region, obst);
      interactable_union = geom::unite(interactable_union, sub_inter);
      obstacle_union = geom::unite(obstacle_union, sub_obst);
      subspace::ClientAllocation ca;
      ca.client_id = cc.plans[k]->id;
      ca.pose = e.result.pose;
      ca.subspace = std::move(sub);
      allocations.push_back(std::move(ca));
    }
    rec.total_interactable = interactable_union.area();
    rec.total_obstacle = obstacle_union.area();
  } else {
    rec.failure_stage = "placement";
  }

  if (mutual_out != nullptr) {
    *mutual_out = subspace::allocate(corpus.hosts[combo.host_index], context,
                                     method_name(method), inputs.host_target_table,
                                     inputs.host_target_face, std::move(allocations), placement,
                                     n_hosts);
  }
  return rec;
}

}  // namespace

MetricsRecord run_method(Method method, const Corpus& corpus, const Combination& combo,
                         int n_hosts, const EvalConfig& cfg, const PoseCache& cache,
                         subspace::MutualSpace* mutual_out) {
  if (method == Method::STi)
    return run_sti(method, corpus, combo, n_hosts, cfg, cache, mutual_out);
  return run_subspace_method(method, corpus, combo, n_hosts, cfg, cache, mutual_out);
}

namespace {

std::string record_path(const EvalConfig& cfg, const MetricsRecord& r) {
  return cfg.out_dir + "/" + method_name(r.method) + "/" + condition_name(r.condition) + "/" +
         r.combo_id + "/record-h" + std::to_string(r.n_hosts) + ".json";
}

}  // namespace

std::vector<MetricsRecord> run_sweep(const Corpus& corpus, const std::vector<Method>& methods,
                                     const std::vector<Condition>& conditions,
                                     const std::vector<int>& n_hosts_list, const EvalConfig& cfg,
                                     const PoseCache& cache) {
  struct Task {
    Method method;
    Combination combo;
    int n_hosts;
  };
  std::vector<Task> tasks;
  for (Method m : methods)
    for (Condition c : conditions)
      for (const Combination& combo : enumerate_combinations(corpus, c))
        for (int nh : n_hosts_list) tasks.push_back({m, combo, nh});

  std::vector<MetricsRecord> records(tasks.size());
  const bool writing = !cfg.out_dir.empty();

#ifdef _OPENMP
  const int nt = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt)
#endif
  for (std::int64_t ti = 0; ti < static_cast<std::int64_t>(tasks.size()); ++ti) {
    const Task& t = tasks[static_cast<std::size_t>(ti)];
    MetricsRecord probe = make_record(t.method, t.combo, t.n_hosts, corpus);
    if (writing) {
      const std::string path = record_path(cfg, probe);
      std::ifstream in(path);
      if (in) {
        std::stringstream ss;
        ss << in.rdbuf();
        records[static_cast<std::size_t>(ti)] = record_from_json(json::parse(ss.str()));
        continue;
      }
    }
    subspace::MutualSpace mutual;
    subspace::MutualSpace* mp = writing && cfg.write_mutual ? &mutual : nullptr;
    MetricsRecord rec = run_method(t.method, corpus, t.combo, t.n_hosts, cfg, cache, mp);
    if (writing) {
      const std::string path = record_path(cfg, rec);
      fs::create_directories(fs::path(path).parent_path());
      std::ofstream out(path);
      out << record_to_json(rec).dump(2) << "\n";
      if (mp != nullptr) {
        std::ofstream mout(fs::path(path).parent_path() /
                           ("mutual-space-h" + std::to_string(t.n_hosts) + ".json"));
        mout << subspace::to_json(*mp).dump(2) << "\n";
      }
    }
    records[static_cast<std::size_t>(ti)] = std::move(rec);
  }
  return records;
}

Stats compute_stats(const std::vector<double>& values) {
  Stats s;
  s.n = static_cast<int>(values.size());
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / s.n;
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / (s.n - 1));
    s.sem = s.sd / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

AggregateReport aggregate(const std::vector<MetricsRecord>& records) {
  AggregateReport report;
  for (Method m : all_methods()) {
    for (Condition c : all_conditions()) {
      for (int nh = 1; nh <= 3; ++nh) {
        std::vector<const MetricsRecord*> cell;
        for (const auto& r : records)
          if (r.method == m && r.condition == c && r.n_hosts == nh) cell.push_back(&r);
        if (cell.empty()) continue;
        AggregateRow row;
        row.method = m;
        row.condition = c;
        row.n_hosts = nh;
        row.combinations = static_cast<int>(cell.size());
        std::vector<double> ti, to, ci, co;
        for (const auto* r : cell) {
          if (!r->success) continue;
          ++row.successes;
          if (nh == 1) {
            ti.push_back(r->total_interactable);
            to.push_back(r->total_obstacle);
            for (double v : r->per_client_interactable) ci.push_back(v);
            for (double v : r->per_client_obstacle) co.push_back(v);
          }
        }
        row.success_rate = static_cast<double>(row.successes) / row.combinations;
        // Area metrics follow the reporting rule: successful runs with a
        // single host user.
        row.has_areas = nh == 1 && row.successes > 0;
        if (row.has_areas) {
          row.total_interactable = compute_stats(ti);
          row.total_obstacle = compute_stats(to);
          row.client_interactable = compute_stats(ci);
          row.client_obstacle = compute_stats(co);
        }
        report.push_back(std::move(row));
      }
    }
  }
  return report;
}

namespace {

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

void append_stats(std::vector<std::string>& fields, const Stats& s, bool present) {
  if (!present) {
    fields.insert(fields.end(), {"", "", ""});
    return;
  }
  fields.push_back(fmt_num(s.mean));
  fields.push_back(fmt_num(s.sd));
  fields.push_back(fmt_num(s.sem));
}

}  // namespace

void report_csv(const AggregateReport& report, std::ostream& out) {
  out << "method,condition,n_hosts,combinations,successes,success_rate,"
         "mean_total_interactable_m2,sd_total_interactable_m2,sem_total_interactable_m2,"
         "mean_total_obstacle_m2,sd_total_obstacle_m2,sem_total_obstacle_m2,"
         "mean_client_interactable_m2,sd_client_interactable_m2,sem_client_interactable_m2,"
         "mean_client_obstacle_m2,sd_client_obstacle_m2,sem_client_obstacle_m2\r\n";
  for (const auto& row : report) {
    std::vector<std::string> fields;
    fields.push_back(csv_quote(method_name(row.method)));
    fields.push_back(condition_name(row.condition));
    fields.push_back(std::to_string(row.n_hosts));
    fields.push_back(std::to_string(row.combinations));
    fields.push_back(std::to_string(row.successes));
    fields.push_back(fmt_num(row.success_rate));
    append_stats(fields, row.total_interactable, row.has_areas);
    append_stats(fields, row.total_obstacle, row.has_areas);
    append_stats(fields, row.client_interactable, row.has_areas);
    append_stats(fields, row.client_obstacle, row.has_areas);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i != 0) out << ',';
      out << fields[i];
    }
    out << "\r\n";
  }
}

void write_report_csv(const AggregateReport& report, const std::string& path) {
  fs::create_directories(fs::path(path).parent_path().empty() ? "."
                                                              : fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  report_csv(report, out);
}

json record_to_json(const MetricsRecord& r) {
  json j;
  j["method"] = method_name(r.method);
  j["condition"] = condition_name(r.condition);
  j["n_hosts"] = r.n_hosts;
  j["combo"] = r.combo_id;
  j["success"] = r.success;
  j["failure_stage"] = r.failure_stage;
  j["total_interactable"] = r.total_interactable;
  j["total_obstacle"] = r.total_obstacle;
  j["per_client_interactable"] = r.per_client_interactable;
  j["per_client_obstacle"] = r.per_client_obstacle;
  return j;
}

MetricsRecord record_from_json(const json& j) {
  MetricsRecord r;
  r.method = method_from_name(j.at("method").get<std::string>());
  r.condition = condition_from_name(j.at("condition").get<std::string>());
  r.n_hosts = j.at("n_hosts").get<int>();
  r.combo_id = j.at("combo").get<std::string>();
  r.success = j.at("success").get<bool>();
  r.failure_stage = j.at("failure_stage").get<std::string>();
  r.total_interactable = j.at("total_interactable").get<double>();
  r.total_obstacle = j.at("total_obstacle").get<double>();
  r.per_client_interactable = j.at("per_client_interactable").get<std::vector<double>>();
  r.per_client_obstacle = j.at("per_client_obstacle").get<std::vector<double>>();
  return r;
}

std::string format_aggregate_table(const AggregateReport& report) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof(line), "%-9s %-6s %2s %5s %8s %10s %10s %10s %10s\n", "method",
                "cond", "nh", "rate", "success", "tot_int", "tot_obst", "cli_int", "cli_obst");
  os << line;
  for (const auto& row : report) {
    std::string ti = row.has_areas ? fmt_num(row.total_interactable.mean) : "-";
    std::string to = row.has_areas ? fmt_num(row.total_obstacle.mean) : "-";
    std::string ci = row.has_areas ? fmt_num(row.client_interactable.mean) : "-";
    std::string co = row.has_areas ? fmt_num(row.client_obstacle.mean) : "-";
    std::snprintf(line, sizeof(line), "%-9s %-6s %2d %5.3f %4d/%-4d %10.10s %10.10s %10.10s %10.10s\n",
                  method_name(row.method), condition_name(row.condition), row.n_hosts,
                  row.success_rate, row.successes, row.combinations, ti.c_str(), to.c_str(),
                  ci.c_str(), co.c_str());
    os << line;
  }
  return os.str();
}

}  // namespace mutualspace::eval
