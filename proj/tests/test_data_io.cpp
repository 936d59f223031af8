#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <variant>

#include "ucom2/data_io.hpp"
#include "ucom2/errors.hpp"
#include "ucom2/oracle.hpp"

using namespace ucom2;

namespace {

std::string temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ucom2_io_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_SUITE("data_io") {

TEST_CASE("facility generation is reproducible and in the unit square") {
  const FacilityInstance a = gen_fl_random(50, 7);
  const FacilityInstance b = gen_fl_random(50, 7);
  CHECK(a.points == b.points);
  CHECK(a.k == 5);
  for (const auto& pt : a.points) {
    CHECK(pt[0] >= 0.0);
    CHECK(pt[0] < 1.0);
    CHECK(pt[1] >= 0.0);
    CHECK(pt[1] < 1.0);
  }
  const FacilityInstance single = gen_fl_random(1, 0);
  CHECK(single.n == 1);
  CHECK(single.k == 1);
}

TEST_CASE("coordinates average to one half") {
  const FacilityInstance inst = gen_fl_random(10000, 123);
  double mean = 0.0;
  for (const auto& pt : inst.points) mean += pt[0] + pt[1];
  mean /= 2.0 * static_cast<double>(inst.n);
  CHECK(std::abs(mean - 0.5) <= 0.02);
}

TEST_CASE("coverage generation respects the documented ranges") {
  const CoverageInstance a = gen_mc_random(40, 100, 5);
  const CoverageInstance b = gen_mc_random(40, 100, 5);
  CHECK(a.sets == b.sets);
  CHECK(a.weights == b.weights);
  for (const auto& s : a.sets) {
    CHECK(s.size() >= 10);
    CHECK(s.size() <= 30);
  }
  for (double w : a.weights) {
    CHECK(w >= 1.0);
    CHECK(w <= 100.0);
    CHECK(w == std::floor(w));
  }
}

TEST_CASE("item weights average near the uniform mean") {
  const CoverageInstance inst = gen_mc_random(5, 50000, 99);
  double mean = 0.0;
  for (double w : inst.weights) mean += w;
  mean /= static_cast<double>(inst.num_items);
  CHECK(std::abs(mean - 50.5) <= 2.0);
}

TEST_CASE("conflict generation hits the requested hard fraction") {
  const RobustColoringInstance none = gen_rc_random(30, 3, 0.3, 0.0, 1);
  for (const auto& e : none.edges) CHECK(e.prob < 1.0);

  const RobustColoringInstance all = gen_rc_random(30, 3, 0.3, 1.0, 2);
  for (const auto& e : all.edges) CHECK(e.prob == 1.0);

  const RobustColoringInstance mixed = gen_rc_random(40, 3, 0.4, 0.25, 3);
  int hard = 0;
  for (const auto& e : mixed.edges) hard += e.prob == 1.0 ? 1 : 0;
  const auto want = static_cast<int>(0.25 * static_cast<double>(mixed.edges.size()) + 0.5);
  CHECK(std::abs(hard - want) <= 1);
}

TEST_CASE("planted instances keep the hard subgraph colorable") {
  // Exhaustively 3-color the hard subgraph of a small planted instance.
  const RobustColoringInstance inst = gen_rc_random(10, 3, 0.8, 0.5, 17, true);
  std::vector<std::pair<int, int>> hard;
  for (const auto& e : inst.edges) {
    if (e.prob == 1.0) hard.emplace_back(e.u, e.v);
  }
  REQUIRE(!hard.empty());
  bool colorable = false;
  std::vector<int> color(10, 0);
  for (long long code = 0; code < 59049 && !colorable; ++code) {  // 3^10
    long long c = code;
    for (int i = 0; i < 10; ++i) {
      color[static_cast<std::size_t>(i)] = static_cast<int>(c % 3);
      c /= 3;
    }
    bool proper = true;
    for (const auto& [u, v] : hard) {
      if (color[static_cast<std::size_t>(u)] == color[static_cast<std::size_t>(v)]) {
        proper = false;
        break;
      }
    }
    colorable = proper;
  }
  CHECK(colorable);
}

TEST_CASE("facility instances round-trip losslessly") {
  const std::string path = temp_path("roundtrip.fl");
  const FacilityInstance inst = gen_fl_random(23, 5, 4);
  save_instance(path, inst);
  const Instance loaded = load_instance(path);
  REQUIRE(std::holds_alternative<FacilityInstance>(loaded));
  const auto& got = std::get<FacilityInstance>(loaded);
  CHECK(got.points == inst.points);
  CHECK(got.k == inst.k);
  CHECK(got.dist == inst.dist);
}

TEST_CASE("coverage instances round-trip losslessly") {
  const std::string path = temp_path("roundtrip.mc");
  const CoverageInstance inst = gen_mc_random(12, 30, 6, 3);
  save_instance(path, inst);
  const Instance loaded = load_instance(path);
  REQUIRE(std::holds_alternative<CoverageInstance>(loaded));
  const auto& got = std::get<CoverageInstance>(loaded);
  CHECK(got.weights == inst.weights);
  CHECK(got.sets == inst.sets);
  CHECK(got.k == inst.k);
}

TEST_CASE("coloring instances round-trip losslessly") {
  const std::string path = temp_path("roundtrip.rc");
  const RobustColoringInstance inst = gen_rc_random(15, 4, 0.4, 0.2, 8);
  save_instance(path, inst);
  const Instance loaded = load_instance(path);
  REQUIRE(std::holds_alternative<RobustColoringInstance>(loaded));
  const auto& got = std::get<RobustColoringInstance>(loaded);
  CHECK(got.c == inst.c);
  REQUIRE(got.edges.size() == inst.edges.size());
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    CHECK(got.edges[e].u == inst.edges[e].u);
    CHECK(got.edges[e].v == inst.edges[e].v);
    CHECK(got.edges[e].prob == inst.edges[e].prob);  // bit-exact
  }
}

TEST_CASE("result records keep order and round-trip") {
  const std::string path = temp_path("record.txt");
  ResultRecord record;
  record.set("method", "ucom2");
  record.set("objective", 1.0 / 3.0);
  record.set("feasible", static_cast<std::int64_t>(1));
  record.set("decision", "1 0 1");
  record.write(path);

  const ResultRecord loaded = ResultRecord::read(path);
  CHECK(loaded.get("method") == "ucom2");
  CHECK(loaded.get_double("objective") == 1.0 / 3.0);
  CHECK(loaded.get("decision") == "1 0 1");
  CHECK(loaded.entries().size() == 4);
}

TEST_CASE("missing and malformed files raise I/O errors") {
  CHECK_THROWS_AS((void)load_instance(temp_path("missing.fl")), IoError);
  const std::string bad = temp_path("bad.txt");
  {
    std::FILE* f = std::fopen(bad.c_str(), "w");
    std::fputs("not an instance\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS((void)load_instance(bad), IoError);
  CHECK_THROWS_AS((void)ResultRecord::read(bad), IoError);
}

TEST_CASE("full-precision doubles survive the text format") {
  const double value = 0.12345678901234567;
  CHECK(std::stod(format_double(value)) == value);
}

}  // TEST_SUITE
