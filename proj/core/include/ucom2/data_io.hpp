// Instance generation matching the evaluation protocol's synthetic
// distributions, plus text loaders/writers for instances and solve results.
//
// Instance format: a `#UCOM2 <kind> <version>` header line, then the body
//   fl: "n k" then n lines "x y"
//   mc: "n m k" then m weight lines then n lines of item indices
//   rc: "n m c" then m lines "u v P"
// Floating values are serialized at full round-trip precision.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ucom2/problems.hpp"

namespace ucom2 {

// n uniform points in the unit square; k defaults to max(1, n/10).
FacilityInstance gen_fl_random(int n, std::uint64_t seed, int k = -1);

// n sets over m items, set sizes uniform in [10, 30] (capped at m), integer
// item weights uniform in [1, 100]; k defaults to max(1, n/10).
CoverageInstance gen_mc_random(int n, int m, std::uint64_t seed, int k = -1);

// Uniform random graph with uniform edge weights in (0, 1); the top
// hard_frac fraction by weight become hard conflicts (P = 1), the rest keep
// P = weight. With plant_colorable, hard edges are restricted to pairs that
// differ under a random hidden c-coloring, so the hard subgraph is
// c-colorable by construction.
RobustColoringInstance gen_rc_random(int n, int c, double edge_prob,
                                     double hard_frac, std::uint64_t seed,
                                     bool plant_colorable = false);

using Instance = std::variant<FacilityInstance, CoverageInstance, RobustColoringInstance>;

void save_instance(const std::string& path, const FacilityInstance& inst);
void save_instance(const std::string& path, const CoverageInstance& inst);
void save_instance(const std::string& path, const RobustColoringInstance& inst);

Instance load_instance(const std::string& path);
std::string instance_kind(const Instance& inst);

// Flat key-value result record, one solve per file. Keys keep insertion
// order; writing embeds whatever pairs were set (config echo, objective,
// feasibility, split timings, recomputed-objective checksum).
class ResultRecord {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, std::int64_t value);

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;
  double get_double(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  void write(const std::string& path) const;
  static ResultRecord read(const std::string& path);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Full-precision double formatting used across the text formats.
std::string format_double(double v);

}  // namespace ucom2
