#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "mutualspace/corpus.hpp"
#include "mutualspace/floorplan.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kCli = MUTUALSPACE_CLI_PATH;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string tmp = (fs::temp_directory_path() / "ms_cli_out.txt").string();
  const std::string cmd = std::string(kCli) + " " + args + " >" + tmp + " 2>&1";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(rc);
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

void write_fast_config(const fs::path& p) {
  std::ofstream out(p);
  out << R"({"population": 8, "generations": 20, "seed": 3})";
}

}  // namespace

TEST_CASE("print-config: defaults carry the documented constants") {
  const RunResult r = run("print-config");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["personal_diameter"].get<double>() == 0.6);
  CHECK(j["surface_offset"].get<double>() == 0.45);
  CHECK(j["d_step"].get<double>() == 0.2);
  CHECK(j["marker_step"].get<double>() == 0.1);
  CHECK(j["marker_thickness"].get<double>() == 0.1);
  CHECK(j["marker_start"].get<double>() == 0.3);
  CHECK(j["marker_initial_length"].get<double>() == 0.6);
  CHECK(j["a_min"].get<double>() == 4.0);
  CHECK(j["boundary_eps"].get<double>() == 0.05);
  CHECK(j["population"].get<int>() == 32);
  CHECK(j["generations"].get<int>() == 100);
  CHECK(j["weights"][0].get<double>() == 10.0);
  CHECK(j["weights"][2].get<double>() == 100.0);
}

TEST_CASE("print-config: unknown config keys are rejected") {
  const fs::path dir = fresh_dir("ms_cli_badcfg");
  std::ofstream(dir / "cfg.json") << R"({"populaton": 8})";
  const RunResult r = run("--config " + (dir / "cfg.json").string() + " print-config");
  CHECK(r.exit_code == 1);
}

TEST_CASE("gen-corpus: 14 valid plans, regeneration is byte-identical") {
  const fs::path dir = fresh_dir("ms_cli_corpus");
  const RunResult r = run("gen-corpus --out-dir " + dir.string());
  REQUIRE(r.exit_code == 0);
  int count = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") ++count;
  CHECK(count == 14);
  // every plan loads and validates
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json")
      CHECK_NOTHROW(mutualspace::plan::load_floorplan(e.path().string()));

  const std::string before = slurp(dir / "home-3.json");
  const fs::path dir2 = fresh_dir("ms_cli_corpus2");
  REQUIRE(run("gen-corpus --out-dir " + dir2.string()).exit_code == 0);
  CHECK(slurp(dir2 / "home-3.json") == before);
}

TEST_CASE("render: floorplan SVG is deterministic; missing file exits 1") {
  const fs::path dir = fresh_dir("ms_cli_render");
  REQUIRE(run("gen-corpus --out-dir " + dir.string()).exit_code == 0);
  const std::string plan_file = (dir / "office-2.json").string();
  REQUIRE(run("render " + plan_file + " --out-file " + (dir / "a.svg").string()).exit_code == 0);
  REQUIRE(run("render " + plan_file + " --out-file " + (dir / "b.svg").string()).exit_code == 0);
  const std::string a = slurp(dir / "a.svg");
  CHECK(!a.empty());
  CHECK(a == slurp(dir / "b.svg"));
  CHECK(a.find("<svg") == 0);

  CHECK(run("render /no/such/file.json").exit_code == 1);
}

TEST_CASE("match: self-match succeeds, renders, and wall counts line up") {
  const fs::path dir = fresh_dir("ms_cli_match");
  REQUIRE(run("gen-corpus --out-dir " + dir.string()).exit_code == 0);
  write_fast_config(dir / "cfg.json");
  const std::string host = (dir / "meeting-room-2.json").string();
  const RunResult r = run("--config " + (dir / "cfg.json").string() + " --context floor --out " +
                          (dir / "out").string() + " match " + host + " " + host);
  REQUIRE(r.exit_code == 0);
  const fs::path msj = dir / "out" / "mutual-space.json";
  REQUIRE(fs::exists(msj));
  const json j = json::parse(slurp(msj));
  CHECK(j["success"].get<bool>());
  std::size_t wall_count = 0;
  for (const auto& c : j["clients"]) wall_count += c["walls"].size();

  // the rendered SVG draws exactly one line element per wall segment
  REQUIRE(run("render " + msj.string() + " --out-file " + (dir / "ms.svg").string()).exit_code ==
          0);
  const std::string svg_text = slurp(dir / "ms.svg");
  std::size_t lines = 0;
  for (std::size_t pos = svg_text.find("<line"); pos != std::string::npos;
       pos = svg_text.find("<line", pos + 1))
    ++lines;
  CHECK(lines == wall_count);

  CHECK(run("match /no/such/host.json " + host).exit_code == 1);
}

TEST_CASE("match: a room with no standable candidates exits 2 but writes JSON") {
  const fs::path dir = fresh_dir("ms_cli_fail");
  // A corridor of a room: the table ring at 0.45 m falls outside the
  // boundary, so no candidate survives.
  json plan;
  plan["id"] = "corridor";
  plan["kind"] = "host";
  plan["boundary"] = {{0, 0}, {5, 0}, {5, 1.1}, {0, 1.1}};
  plan["regions"] = json::array();
  plan["regions"].push_back(
      {{"id", "table-1"},
       {"label", "table"},
       {"polygon", {{0.3, 0.3}, {4.7, 0.3}, {4.7, 0.8}, {0.3, 0.8}}}});
  std::ofstream(dir / "corridor.json") << plan.dump(2);
  write_fast_config(dir / "cfg.json");
  const std::string host = (dir / "corridor.json").string();
  const RunResult r = run("--config " + (dir / "cfg.json").string() + " --context table --out " +
                          (dir / "out").string() + " match " + host + " " + host);
  CHECK(r.exit_code == 2);
  REQUIRE(fs::exists(dir / "out" / "mutual-space.json"));
  const json j = json::parse(slurp(dir / "out" / "mutual-space.json"));
  CHECK_FALSE(j["success"].get<bool>());
}

TEST_CASE("evaluate: tiny filtered sweep writes a report and resumes identically") {
  const fs::path dir = fresh_dir("ms_cli_eval");
  REQUIRE(run("gen-corpus --out-dir " + (dir / "corpus").string()).exit_code == 0);
  write_fast_config(dir / "cfg.json");
  const std::string args = "--config " + (dir / "cfg.json").string() + " --out " +
                           (dir / "out").string() + " evaluate --corpus " +
                           (dir / "corpus").string() +
                           " --methods SA-Floor --conditions H1-C2 --n-hosts 1";
  REQUIRE(run(args).exit_code == 0);
  const fs::path csv = dir / "out" / "report.csv";
  REQUIRE(fs::exists(csv));
  const std::string first = slurp(csv);
  CHECK(first.find("SA-Floor,H1-C2,1,100,") != std::string::npos);

  // resume: rerunning over existing outputs reproduces the same CSV
  REQUIRE(run(args).exit_code == 0);
  CHECK(slurp(csv) == first);
}
