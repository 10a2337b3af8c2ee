#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "rigwalk/corpus.hpp"
#include "rigwalk/model.hpp"

using nlohmann::json;
using namespace rigwalk;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(RIGWALK_BIN) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0)
    result.output.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/rigwalk_cli_test_") + name;
}

}  // namespace

TEST_CASE("help and unknown arguments") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("predict --help").exit_code == 0);
  CHECK(run_cli("definitely-not-a-subcommand").exit_code != 0);
}

TEST_CASE("gen writes deterministic graph files") {
  const std::string prefix_a = temp_path("gen_a");
  const std::string prefix_b = temp_path("gen_b");
  RunResult first = run_cli("gen -n 300 -c 2 --np 1 --seed 5 -o " + prefix_a);
  RunResult second = run_cli("gen -n 300 -c 2 --np 1 --seed 5 -o " + prefix_b);
  REQUIRE(first.exit_code == 0);
  REQUIRE(second.exit_code == 0);

  const std::string incidence = slurp(prefix_a + ".b.txt");
  CHECK(incidence == slurp(prefix_b + ".b.txt"));
  const std::string graph_text = slurp(prefix_a + ".ig.txt");
  CHECK(graph_text == slurp(prefix_b + ".ig.txt"));

  IntersectionGraph g = from_ig(graph_text);
  CHECK(g.n == 300);
  BipartiteGraph b = from_rig(incidence);
  CHECK(b.params.n == 300);

  // The summary line is JSON with the sampled link statistics.
  json summary = json::parse(first.output);
  CHECK(summary["kind"] == "graph");
  CHECK(summary["edges"] == g.edge_count);
}

TEST_CASE("predict reports the derived scalars") {
  RunResult r = run_cli("predict -n 1000 -c 2 --np 1");
  REQUIRE(r.exit_code == 0);
  json report = json::parse(r.output);
  CHECK(report["version"] == "report-v1");
  CHECK(report["params"]["m"] == 21862);
  CHECK(report["derived"]["delta"] == 263);
  CHECK(report["derived"]["i0"] == 7);
  CHECK(double(report["figure1_ratio"]) == doctest::Approx(1.2578855922240415).epsilon(1e-9));
  CHECK(double(report["cover_prediction"]["principal"]) ==
        doctest::Approx(10443.874754693838).epsilon(1e-9));
  CHECK(report["cover_prediction"]["t1"].is_null());
  CHECK(report["lambda_family"]["lambda1_state"] == "undefined");
}

TEST_CASE("parameter validation maps to exit code 2") {
  RunResult below = run_cli("predict -n 1000 -c 0.5 --np 1");
  CHECK(below.exit_code == 2);
  CHECK(below.output.find("exceed 1") != std::string::npos);

  CHECK(run_cli("predict -n 1000 -c 2 --np 1 -m 50 -p 0.001").exit_code == 2);
  CHECK(run_cli("gen -n 1000").exit_code == 2);
}

TEST_CASE("simulate runs trials on a stored graph") {
  const std::string path = temp_path("cycle8.ig.txt");
  save_text(path, to_ig(make_cycle(8)));

  RunResult r = run_cli("simulate --load-ig " + path + " --trials 2000 --seed 3");
  REQUIRE(r.exit_code == 0);
  json report = json::parse(r.output);
  CHECK(report["kind"] == "simulate");
  REQUIRE(report["per_start"].size() >= 1);
  // Expected cover time of the 8-cycle is exactly 28.
  double mean = report["per_start"][0]["mean_cover_steps"];
  double se = report["per_start"][0]["std_error"];
  CHECK(mean == doctest::Approx(28.0).epsilon(0.05));
  CHECK(std::abs(mean - 28.0) <= 4.0 * se + 1e-9);
}

TEST_CASE("simulate exact mode emits the per-vertex expectations") {
  const std::string path = temp_path("cycle4.ig.txt");
  save_text(path, to_ig(make_cycle(4)));

  RunResult r = run_cli("simulate --load-ig " + path + " --trials 50 --exact --seed 1");
  REQUIRE(r.exit_code == 0);
  json report = json::parse(r.output);
  CHECK(report["kind"] == "oracle");
  REQUIRE(report["cover_times"].size() == 4);
  for (const auto& row : report["cover_times"])
    CHECK(double(row["exact"]) == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("simulate rejects a disconnected graph with exit code 3") {
  const std::string path = temp_path("split.ig.txt");
  save_text(path, "ig-v1 4\n0: 1\n1: 0\n2: 3\n3: 2\n");
  RunResult r = run_cli("simulate --load-ig " + path + " --trials 10");
  CHECK(r.exit_code == 3);
}

TEST_CASE("verify single seed prints the property report") {
  RunResult r = run_cli("verify -n 300 -c 2 --np 1 --seed 2");
  json report = json::parse(r.output.substr(0, r.output.find_last_of('}') + 1));
  CHECK(report["kind"] == "verify");
  CHECK(report["properties"].size() == 13);
  CHECK(report["properties"][0]["name"] == "P0");
}

TEST_CASE("verify multi-seed emits a frequency table and gates on it") {
  RunResult r = run_cli("verify -n 300 -c 2 --np 1 --seed 1 --seeds 3 --min-pass-rate 2.0");
  CHECK(r.exit_code == 4);  // no rate can reach 2.0
  CHECK(r.output.find("property,passes,trials") != std::string::npos);

  RunResult ok = run_cli("verify -n 300 -c 2 --np 1 --seed 1 --seeds 3 --min-pass-rate 0.0");
  CHECK(ok.exit_code == 0);
}

TEST_CASE("figure1 output is byte-stable with ratios above one") {
  RunResult a = run_cli("figure1");
  RunResult b = run_cli("figure1");
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);

  std::istringstream lines(a.output);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "np,c,lambda,er_log_term,ratio");
  size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    const size_t last_comma = line.find_last_of(',');
    REQUIRE(last_comma != std::string::npos);
    CHECK(std::stod(line.substr(last_comma + 1)) > 1.0);
  }
  CHECK(rows == 1800);
}

TEST_CASE("oracle command reports the exact benchmark values") {
  RunResult r = run_cli("oracle --trials 0");
  REQUIRE(r.exit_code == 0);
  json report = json::parse(r.output);
  CHECK(report["kind"] == "oracle");
  bool saw_cycle8 = false;
  for (const auto& row : report["cover_times"]) {
    if (row["graph"] == "cycle8") {
      saw_cycle8 = true;
      CHECK(double(row["exact"]) == doctest::Approx(28.0).epsilon(1e-9));
    }
  }
  CHECK(saw_cycle8);
}

TEST_CASE("compare emits a pair table") {
  RunResult r = run_cli("compare -n 120 -c 2 --np 1 --seed 1 --seeds 3 --trials 5");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("seed,cover_rig,cover_er,winner") != std::string::npos);
  CHECK(r.output.find("slower-cover count:") != std::string::npos);
}
