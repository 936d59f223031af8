#include "ucom2/data_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ucom2/errors.hpp"
#include "ucom2/rng.hpp"

namespace ucom2 {

namespace {

constexpr int kFormatVersion = 1;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

FacilityInstance gen_fl_random(int n, std::uint64_t seed, int k) {
  if (n < 1) throw std::invalid_argument("need at least one point");
  if (k < 0) k = std::max(1, n / 10);
  Rng rng(seed);
  std::vector<std::array<double, 2>> points;
  points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform();
    const double y = rng.uniform();
    points.push_back({x, y});
  }
  return FacilityInstance::from_points(std::move(points), k);
}

CoverageInstance gen_mc_random(int n, int m, std::uint64_t seed, int k) {
  if (n < 1 || m < 1) throw std::invalid_argument("need sets and items");
  if (k < 0) k = std::max(1, n / 10);
  Rng rng(seed);
  CoverageInstance inst;
  inst.num_sets = n;
  inst.num_items = m;
  inst.k = k;
  inst.weights.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    inst.weights.push_back(static_cast<double>(rng.uniform_int(1, 100)));
  }
  std::vector<int> items(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) items[static_cast<std::size_t>(j)] = j;
  inst.sets.reserve(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    const int size = static_cast<int>(rng.uniform_int(std::min(10, m), std::min(30, m)));
    rng.shuffle(items);
    std::vector<int> chosen(items.begin(), items.begin() + size);
    std::sort(chosen.begin(), chosen.end());
    inst.sets.push_back(std::move(chosen));
  }
  inst.validate();
  return inst;
}

RobustColoringInstance gen_rc_random(int n, int c, double edge_prob,
                                     double hard_frac, std::uint64_t seed,
                                     bool plant_colorable) {
  if (n < 1) throw std::invalid_argument("need at least one node");
  if (c < 2) throw std::invalid_argument("need at least two colors");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw std::invalid_argument("edge probability outside [0, 1]");
  }
  if (!(hard_frac >= 0.0 && hard_frac <= 1.0)) {
    throw std::invalid_argument("hard fraction outside [0, 1]");
  }
  Rng rng(seed);

  std::vector<int> hidden_color(static_cast<std::size_t>(n), 0);
  if (plant_colorable) {
    for (int v = 0; v < n; ++v) {
      hidden_color[static_cast<std::size_t>(v)] =
          static_cast<int>(rng.uniform_int(0, c - 1));
    }
  }

  struct Drawn {
    int u, v;
    double weight;
  };
  std::vector<Drawn> drawn;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!rng.bernoulli(edge_prob)) continue;
      double w = rng.uniform();
      if (w == 0.0) w = 0.5;  // open-interval weight
      drawn.push_back({u, v, w});
    }
  }

  // Highest-weight fraction become hard conflicts; planted mode only
  // promotes cross-color pairs so the hard subgraph stays c-partite.
  std::vector<std::size_t> idx(drawn.size());
  for (std::size_t e = 0; e < drawn.size(); ++e) idx[e] = e;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (drawn[a].weight != drawn[b].weight) return drawn[a].weight > drawn[b].weight;
    return a < b;
  });
  const auto hard_target =
      static_cast<std::size_t>(hard_frac * static_cast<double>(drawn.size()) + 0.5);

  RobustColoringInstance inst;
  inst.n = n;
  inst.c = c;
  std::size_t hard_made = 0;
  std::vector<bool> is_hard(drawn.size(), false);
  for (std::size_t rank = 0; rank < idx.size() && hard_made < hard_target; ++rank) {
    const Drawn& e = drawn[idx[rank]];
    if (plant_colorable && hidden_color[static_cast<std::size_t>(e.u)] ==
                               hidden_color[static_cast<std::size_t>(e.v)]) {
      continue;
    }
    is_hard[idx[rank]] = true;
    ++hard_made;
  }
  for (std::size_t e = 0; e < drawn.size(); ++e) {
    inst.edges.push_back(
        {drawn[e].u, drawn[e].v, is_hard[e] ? 1.0 : drawn[e].weight});
  }
  return inst;
}

void save_instance(const std::string& path, const FacilityInstance& inst) {
  auto out = open_output(path);
  out << "#UCOM2 fl " << kFormatVersion << "\n";
  out << inst.n << ' ' << inst.k << "\n";
  if (static_cast<int>(inst.points.size()) != inst.n) {
    throw std::invalid_argument("matrix-mode facility instances have no file form");
  }
  for (const auto& pt : inst.points) {
    out << format_double(pt[0]) << ' ' << format_double(pt[1]) << "\n";
  }
  finish_output(out, path);
}

void save_instance(const std::string& path, const CoverageInstance& inst) {
  inst.validate();
  auto out = open_output(path);
  out << "#UCOM2 mc " << kFormatVersion << "\n";
  out << inst.num_sets << ' ' << inst.num_items << ' ' << inst.k << "\n";
  for (double w : inst.weights) out << format_double(w) << "\n";
  for (const auto& s : inst.sets) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j) out << ' ';
      out << s[j];
    }
    out << "\n";
  }
  finish_output(out, path);
}

void save_instance(const std::string& path, const RobustColoringInstance& inst) {
  inst.validate();
  auto out = open_output(path);
  out << "#UCOM2 rc " << kFormatVersion << "\n";
  out << inst.n << ' ' << inst.edges.size() << ' ' << inst.c << "\n";
  for (const auto& e : inst.edges) {
    out << e.u << ' ' << e.v << ' ' << format_double(e.prob) << "\n";
  }
  finish_output(out, path);
}

Instance load_instance(const std::string& path) {
  auto in = open_input(path);
  std::string magic, kind;
  int version = 0;
  if (!(in >> magic >> kind >> version) || magic != "#UCOM2") {
    throw IoError("not a UCOM2 instance file: " + path);
  }
  if (version != kFormatVersion) {
    throw IoError("unsupported instance format version in " + path);
  }
  if (kind == "fl") {
    int n = 0, k = 0;
    if (!(in >> n >> k)) throw IoError("truncated fl header in " + path);
    std::vector<std::array<double, 2>> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      double x = 0, y = 0;
      if (!(in >> x >> y)) throw IoError("truncated fl body in " + path);
      points.push_back({x, y});
    }
    return FacilityInstance::from_points(std::move(points), k);
  }
  if (kind == "mc") {
    int n = 0, m = 0, k = 0;
    if (!(in >> n >> m >> k)) throw IoError("truncated mc header in " + path);
    CoverageInstance inst;
    inst.num_sets = n;
    inst.num_items = m;
    inst.k = k;
    inst.weights.resize(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      if (!(in >> inst.weights[static_cast<std::size_t>(j)])) {
        throw IoError("truncated mc weights in " + path);
      }
    }
    in.ignore();  // finish the last weight line
    inst.sets.reserve(static_cast<std::size_t>(n));
    std::string line;
    while (static_cast<int>(inst.sets.size()) < n && std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream split(line);
      std::vector<int> items;
      int j = 0;
      while (split >> j) items.push_back(j);
      inst.sets.push_back(std::move(items));
    }
    inst.validate();
    return inst;
  }
  if (kind == "rc") {
    int n = 0, m = 0, c = 0;
    if (!(in >> n >> m >> c)) throw IoError("truncated rc header in " + path);
    RobustColoringInstance inst;
    inst.n = n;
    inst.c = c;
    inst.edges.reserve(static_cast<std::size_t>(m));
    for (int e = 0; e < m; ++e) {
      UncertainEdge edge;
      if (!(in >> edge.u >> edge.v >> edge.prob)) {
        throw IoError("truncated rc body in " + path);
      }
      inst.edges.push_back(edge);
    }
    inst.validate();
    return inst;
  }
  throw IoError("unknown instance kind '" + kind + "' in " + path);
}

std::string instance_kind(const Instance& inst) {
  if (std::holds_alternative<FacilityInstance>(inst)) return "fl";
  if (std::holds_alternative<CoverageInstance>(inst)) return "mc";
  return "rc";
}

void ResultRecord::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

void ResultRecord::set(const std::string& key, double value) {
  set(key, format_double(value));
}

void ResultRecord::set(const std::string& key, std::int64_t value) {
  set(key, std::to_string(value));
}

bool ResultRecord::has(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return true;
  }
  return false;
}

const std::string& ResultRecord::get(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  throw std::out_of_range("result record has no key: " + key);
}

double ResultRecord::get_double(const std::string& key) const {
  return std::stod(get(key));
}

void ResultRecord::write(const std::string& path) const {
  auto out = open_output(path);
  out << "#UCOM2-RESULT " << kFormatVersion << "\n";
  for (const auto& [k, v] : entries_) out << k << ' ' << v << "\n";
  finish_output(out, path);
}

ResultRecord ResultRecord::read(const std::string& path) {
  auto in = open_input(path);
  std::string header;
  std::getline(in, header);
  if (header.rfind("#UCOM2-RESULT", 0) != 0) {
    throw IoError("not a UCOM2 result file: " + path);
  }
  ResultRecord record;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto space = line.find(' ');
    if (space == std::string::npos) {
      record.set(line, std::string());
    } else {
      record.set(line.substr(0, space), line.substr(space + 1));
    }
  }
  return record;
}

}  // namespace ucom2
