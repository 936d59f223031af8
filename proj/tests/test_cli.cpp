#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ucom2/baselines.hpp"
#include "ucom2/cli.hpp"
#include "ucom2/data_io.hpp"

using namespace ucom2;

namespace {

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"ucom2"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ucom2_cli_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen writes deterministic instances") {
  const std::string a = temp_path("gen_a.fl");
  const std::string b = temp_path("gen_b.fl");
  CHECK(run_cli({"gen", "--kind", "fl", "--n", "30", "--k", "4", "--seed", "7",
                 "--out", a}) == cli::kExitOk);
  CHECK(run_cli({"gen", "--kind", "fl", "--n", "30", "--k", "4", "--seed", "7",
                 "--out", b}) == cli::kExitOk);
  CHECK(slurp(a) == slurp(b));
  CHECK(std::holds_alternative<FacilityInstance>(load_instance(a)));
}

TEST_CASE("gen rejects unknown kinds with a usage error") {
  CHECK(run_cli({"gen", "--kind", "nope", "--out", temp_path("x.txt")}) ==
        cli::kExitUsage);
}

TEST_CASE("unknown flags are rejected") {
  CHECK(run_cli({"gen", "--kind", "fl", "--out", temp_path("y.fl"),
                 "--definitely-not-a-flag", "1"}) == cli::kExitUsage);
}

TEST_CASE("solve with the greedy method reproduces the library baseline") {
  const std::string inst_path = temp_path("solve_greedy.fl");
  CHECK(run_cli({"gen", "--kind", "fl", "--n", "40", "--k", "5", "--seed", "3",
                 "--out", inst_path}) == cli::kExitOk);
  const std::string out = temp_path("solve_greedy.result");
  CHECK(run_cli({"solve", "--instance", inst_path, "--method", "greedy", "--out",
                 out}) == cli::kExitOk);
  const ResultRecord record = ResultRecord::read(out);

  const auto inst = std::get<FacilityInstance>(load_instance(inst_path));
  const BaselineResult direct = greedy_fl(inst);
  CHECK(record.get_double("objective") == doctest::Approx(direct.objective));
  CHECK(record.get("feasible") == "1");
  CHECK(record.get_double("objective_recheck") ==
        doctest::Approx(record.get_double("objective")));
}

TEST_CASE("solve with the probabilistic method returns a feasible subset") {
  const std::string inst_path = temp_path("solve_ucom2.fl");
  CHECK(run_cli({"gen", "--kind", "fl", "--n", "30", "--k", "4", "--seed", "11",
                 "--out", inst_path}) == cli::kExitOk);
  const std::string out = temp_path("solve_ucom2.result");
  CHECK(run_cli({"solve", "--instance", inst_path, "--method", "ucom2", "--iters",
                 "120", "--restarts", "2", "--seed", "1", "--out", out}) ==
        cli::kExitOk);
  const ResultRecord record = ResultRecord::read(out);
  CHECK(record.get("feasible") == "1");
  CHECK(record.get_double("cardinality") == 4.0);
  CHECK(record.get_double("objective_recheck") ==
        doctest::Approx(record.get_double("objective")));
  // Config echo is part of the contract.
  CHECK(record.has("lr"));
  CHECK(record.has("beta"));
  CHECK(record.has("derand"));
  CHECK(record.has("time_optimize_s"));
  CHECK(record.has("time_derand_s"));
}

TEST_CASE("solve on a missing instance is an I/O error") {
  CHECK(run_cli({"solve", "--instance", temp_path("does_not_exist.fl")}) ==
        cli::kExitIo);
}

TEST_CASE("mismatched method and instance kind is a usage error") {
  const std::string inst_path = temp_path("mismatch.fl");
  CHECK(run_cli({"gen", "--kind", "fl", "--n", "10", "--out", inst_path}) ==
        cli::kExitOk);
  CHECK(run_cli({"solve", "--instance", inst_path, "--method", "greedy-rd"}) ==
        cli::kExitUsage);
}

TEST_CASE("bench emits one record per method with the ablation columns") {
  const std::string inst_path = temp_path("bench.fl");
  CHECK(run_cli({"gen", "--kind", "fl", "--n", "25", "--k", "3", "--seed", "5",
                 "--out", inst_path}) == cli::kExitOk);
  const std::string out = temp_path("bench.table");
  CHECK(run_cli({"bench", "--instance", inst_path, "--methods", "ucom2,greedy",
                 "--trials", "1", "--out", out}) == cli::kExitOk);
  const std::string table = slurp(out);
  CHECK(table.find("method ucom2") != std::string::npos);
  CHECK(table.find("method greedy") != std::string::npos);
  CHECK(table.find("mean_objective") != std::string::npos);
  CHECK(table.find("derand_speedup") != std::string::npos);
  CHECK(table.find("derand_finals_identical 1") != std::string::npos);
}

TEST_CASE("verify passes on the bundled toys") {
  CHECK(run_cli({"verify", "--seeds", "2"}) == cli::kExitOk);
}

TEST_CASE("verify accepts an instance and skips oversized oracles") {
  const std::string inst_path = temp_path("verify.mc");
  CHECK(run_cli({"gen", "--kind", "mc", "--n", "25", "--m", "40", "--k", "3",
                 "--seed", "2", "--out", inst_path}) == cli::kExitOk);
  CHECK(run_cli({"verify", "--instance", inst_path, "--seeds", "2"}) ==
        cli::kExitOk);
}

}  // TEST_SUITE
