#include <catch2/catch.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "phaselimit/cli.hpp"

using namespace phaselimit;
using namespace phaselimit::cli;

namespace {

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

std::string run_to_string(const RunConfig& cfg, int& code) {
  std::ostringstream out;
  std::ostringstream err;
  code = run(cfg, out, err);
  return out.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  return parts;
}

int shell(const std::string& args) {
  const std::string cmd = std::string(PHASELIMIT_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("number formatting round-trips exactly") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.338107410459767, 52.293441021}) {
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
  }
  CHECK(format_number(NAN) == "nan");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(2.0) == "2");
}

TEST_CASE("CSV layout") {
  auto cfg = config("bounds");
  cfg.p = 3;
  cfg.N = 30;
  cfg.seed = 4;
  int code = -1;
  const auto text = run_to_string(cfg, code);
  REQUIRE(code == 0);
  const auto lines = split(text, '\n');
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].rfind("# tool=phaselimit version=", 0) == 0);
  CHECK(lines[0].find("command=bounds") != std::string::npos);
  CHECK(lines[0].find("seed=4") != std::string::npos);
  CHECK(lines[0].find("p=3") != std::string::npos);
  CHECK(lines[1] == "p,N,joint_hl_bound,joint_hl_achievable,separate_hl,joint_sql,separate_sql");
  const auto fields = split(lines[2], ',');
  REQUIRE(fields.size() == 7);
  CHECK(std::strtod(fields[2].c_str(), nullptr) == continuous::fundamental_bound(3, 30));
}

TEST_CASE("CSV values are byte-identical to the library") {
  auto cfg = config("separate");
  cfg.p = 2;
  cfg.N = 64;
  const auto d = execute(cfg);
  std::ostringstream a;
  std::ostringstream b;
  write_csv(a, d);
  write_csv(b, execute(cfg));
  CHECK(a.str() == b.str());
  const auto lines = split(a.str(), '\n');
  const auto cols = split(lines[1], ',');
  const auto vals = split(lines[2], ',');
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] == "separate_cost") CHECK(std::strtod(vals[i].c_str(), nullptr) == discrete::separate_optimal_cost(2, 64));
  }
}

TEST_CASE("JSON output") {
  auto cfg = config("qfi-table");
  cfg.p = 3;
  cfg.N = 100;
  cfg.format = "json";
  int code = -1;
  const auto j = nlohmann::json::parse(run_to_string(cfg, code));
  CHECK(code == 0);
  CHECK(j["header"]["command"] == "qfi-table");
  CHECK(j["rows"].size() == 12);
  bool saw_null = false;
  for (const auto& r : j["rows"])
    for (const auto& v : r) saw_null = saw_null || v.is_null();
  CHECK(saw_null);
}

TEST_CASE("exit codes") {
  int code = -1;
  auto bad = config("bounds");
  bad.p = 0;
  run_to_string(bad, code);
  CHECK(code == 1);
  CHECK(run_to_string(config("nope"), code).empty());
  CHECK(code == 1);

  auto sep = config("separate");
  sep.p = 3;
  sep.N = 32;
  run_to_string(sep, code);
  CHECK(code == 2);

  auto sim = config("simulate");
  sim.p = 12;
  sim.samples = 1000;
  run_to_string(sim, code);
  CHECK(code == 3);

  auto fig = config("reproduce");
  fig.figure = "fig-none";
  run_to_string(fig, code);
  CHECK(code == 1);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "phaselimit_cli_test.csv";
  auto cfg = config("photon-stats");
  cfg.output = path.string();
  int code = -1;
  CHECK(run_to_string(cfg, code).empty());
  CHECK(code == 0);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::ostringstream direct;
  write_csv(direct, execute(config("photon-stats")));
  CHECK(buf.str() == direct.str());
  std::filesystem::remove(path);
}

TEST_CASE("reproduce inserts the figure name") {
  auto cfg = config("reproduce");
  cfg.figure = "table-1";
  const auto d = execute(cfg);
  bool found = false;
  for (const auto& [k, v] : d.header) found = found || (k == "figure" && v == "table-1");
  CHECK(found);
  CHECK(d.rows.size() == 12);
}

TEST_CASE("simulation is reproducible for a fixed seed") {
  auto cfg = config("simulate");
  cfg.samples = 20000;
  cfg.seed = 9;
  std::ostringstream a;
  std::ostringstream b;
  write_csv(a, execute(cfg));
  cfg.threads = 3;
  write_csv(b, execute(cfg));
  CHECK(a.str() == b.str());
}

TEST_CASE("environment seed") {
  ::unsetenv("PHASELIMIT_SEED");
  CHECK(default_seed() == kDefaultSeed);
  ::setenv("PHASELIMIT_SEED", "777", 1);
  CHECK(default_seed() == 777);
  ::setenv("PHASELIMIT_SEED", "7x", 1);
  CHECK(default_seed() == kDefaultSeed);
  ::unsetenv("PHASELIMIT_SEED");
}

TEST_CASE("command-line executable") {
  CHECK(shell("bounds --p 2 --N 16") == 0);
  CHECK(shell("bounds --p 0") == 1);
  CHECK(shell("bounds --bogus 1") == 1);
  CHECK(shell("") == 1);
  CHECK(shell("separate --p 3 --N 32") == 2);
  CHECK(shell("simulate --p 12 --samples 1000") == 3);
  CHECK(shell("--help") == 0);
  CHECK(shell("reproduce fig-comp --pmax 3 --format json") == 0);
}
