#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "egvqc/errors.hpp"
#include "egvqc/rng.hpp"

namespace egvqc {

/// Undirected weighted edge between 1-based vertex ids.
struct Edge {
  int u = 0;
  int v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph with 1-based vertex ids, no self-loops, positive
/// finite edge weights, and each unordered pair stored at most once
/// (canonicalized u < v). Immutable after construction.
class Graph {
 public:
  Graph(int n_vertices, std::vector<Edge> edges)
      : n_vertices_(n_vertices), edges_(std::move(edges)) {
    if (n_vertices_ < 1) {
      throw std::invalid_argument("graph needs at least one vertex");
    }
    degrees_.assign(static_cast<std::size_t>(n_vertices_) + 1, 0.0);
    std::set<std::pair<int, int>> seen;
    for (auto& e : edges_) {
      if (e.u < 1 || e.u > n_vertices_ || e.v < 1 || e.v > n_vertices_) {
        throw std::invalid_argument("edge endpoint out of range");
      }
      if (e.u == e.v) {
        throw std::invalid_argument("self-loops are not allowed");
      }
      if (!(std::isfinite(e.weight) && e.weight > 0.0)) {
        throw std::invalid_argument("edge weights must be finite and positive");
      }
      if (e.u > e.v) std::swap(e.u, e.v);
      if (!seen.insert({e.u, e.v}).second) {
        throw std::invalid_argument("duplicate edge (" + std::to_string(e.u) +
                                    "," + std::to_string(e.v) + ")");
      }
      degrees_[static_cast<std::size_t>(e.u)] += e.weight;
      degrees_[static_cast<std::size_t>(e.v)] += e.weight;
    }
  }

  int n_vertices() const noexcept { return n_vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Sum of incident edge weights; 0 for isolated vertices.
  double weighted_degree(int v) const {
    if (v < 1 || v > n_vertices_) {
      throw std::invalid_argument("vertex id " + std::to_string(v) +
                                  " out of range [1, " +
                                  std::to_string(n_vertices_) + "]");
    }
    return degrees_[static_cast<std::size_t>(v)];
  }

  nlohmann::json to_json() const {
    nlohmann::json edges_json = nlohmann::json::array();
    for (const auto& e : edges_) edges_json.push_back({e.u, e.v, e.weight});
    return {{"n_vertices", n_vertices_}, {"edges", std::move(edges_json)}};
  }

  static Graph from_json(const nlohmann::json& j) {
    std::vector<Edge> edges;
    for (const auto& ej : j.at("edges")) {
      edges.push_back({ej.at(0).get<int>(), ej.at(1).get<int>(), ej.at(2).get<double>()});
    }
    return Graph(j.at("n_vertices").get<int>(), std::move(edges));
  }

 private:
  int n_vertices_;
  std::vector<Edge> edges_;
  std::vector<double> degrees_;  // index 0 unused
};

inline double weighted_degree(const Graph& g, int v) { return g.weighted_degree(v); }

/// A dataset: graphs plus integer class labels in [0, class_count).
struct LabeledGraphSet {
  std::vector<Graph> graphs;
  std::vector<int> labels;
  int class_count = 2;
  std::string name;

  std::size_t size() const noexcept { return graphs.size(); }
};

enum class EdgeWeightMode {
  uniform,          // every edge weight 1.0
  from_edge_labels  // weight = raw edge label + 1 (stays > 0)
};

namespace detail {

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw parse_error(path.string(), 0, "cannot open file");
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // trailing blank lines are common in the published archives
  while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string::npos) {
    lines.pop_back();
  }
  return lines;
}

inline long parse_long(const std::string& text, const std::filesystem::path& path,
                       std::size_t line_no) {
  try {
    std::size_t pos = 0;
    long value = std::stol(text, &pos);
    if (text.find_first_not_of(" \t", pos) != std::string::npos) {
      throw std::invalid_argument("trailing junk");
    }
    return value;
  } catch (const std::exception&) {
    throw parse_error(path.string(), line_no, "expected an integer, got '" + text + "'");
  }
}

inline double parse_double(const std::string& text, const std::filesystem::path& path,
                           std::size_t line_no) {
  try {
    std::size_t pos = 0;
    double value = std::stod(text, &pos);
    if (text.find_first_not_of(" \t", pos) != std::string::npos) {
      throw std::invalid_argument("trailing junk");
    }
    return value;
  } catch (const std::exception&) {
    throw parse_error(path.string(), line_no, "expected a number, got '" + text + "'");
  }
}

}  // namespace detail

/// Loads a dataset in the TU Dortmund benchmark layout:
///   {name}_A.txt               comma-separated directed node pairs, 1-based
///   {name}_graph_indicator.txt graph id per node, 1-based
///   {name}_graph_labels.txt    one label per graph
///   {name}_edge_labels.txt     optional, one label per line of _A.txt
/// Nodes are renumbered 1..N within each graph preserving file order, the
/// directed pair duplicates are collapsed to single undirected edges, and
/// raw labels are remapped to 0..class_count-1 in ascending order.
inline LabeledGraphSet load_tu_dataset(const std::filesystem::path& directory,
                                       const std::string& name,
                                       EdgeWeightMode weight_mode = EdgeWeightMode::uniform) {
  namespace fs = std::filesystem;
  const fs::path a_path = directory / (name + "_A.txt");
  const fs::path indicator_path = directory / (name + "_graph_indicator.txt");
  const fs::path labels_path = directory / (name + "_graph_labels.txt");
  const fs::path edge_labels_path = directory / (name + "_edge_labels.txt");

  const auto indicator_lines = detail::read_lines(indicator_path);
  const auto label_lines = detail::read_lines(labels_path);
  const auto edge_lines = detail::read_lines(a_path);

  const std::size_t n_nodes = indicator_lines.size();
  const std::size_t n_graphs = label_lines.size();
  if (n_graphs == 0) {
    throw parse_error(labels_path.string(), 0, "dataset has no graphs");
  }

  // node -> graph, node -> local 1-based id
  std::vector<std::size_t> node_graph(n_nodes + 1, 0);
  std::vector<int> node_local(n_nodes + 1, 0);
  std::vector<int> graph_size(n_graphs + 1, 0);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    long gid = detail::parse_long(indicator_lines[i], indicator_path, i + 1);
    if (gid < 1 || static_cast<std::size_t>(gid) > n_graphs) {
      throw parse_error(indicator_path.string(), i + 1,
                        "graph id " + std::to_string(gid) + " out of range [1, " +
                            std::to_string(n_graphs) + "]");
    }
    node_graph[i + 1] = static_cast<std::size_t>(gid);
    node_local[i + 1] = ++graph_size[static_cast<std::size_t>(gid)];
  }

  std::vector<double> edge_label_values;
  if (weight_mode == EdgeWeightMode::from_edge_labels) {
    const auto raw = detail::read_lines(edge_labels_path);
    if (raw.size() != edge_lines.size()) {
      throw parse_error(edge_labels_path.string(), raw.size(),
                        "edge label count " + std::to_string(raw.size()) +
                            " does not match edge count " +
                            std::to_string(edge_lines.size()));
    }
    edge_label_values.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      edge_label_values.push_back(detail::parse_double(raw[i], edge_labels_path, i + 1));
    }
  }

  // collect undirected edges per graph, collapsing directed duplicates
  std::vector<std::map<std::pair<int, int>, double>> graph_edges(n_graphs + 1);
  for (std::size_t i = 0; i < edge_lines.size(); ++i) {
    const std::string& line = edge_lines[i];
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw parse_error(a_path.string(), i + 1, "expected 'u, v', got '" + line + "'");
    }
    long u = detail::parse_long(line.substr(0, comma), a_path, i + 1);
    long v = detail::parse_long(line.substr(comma + 1), a_path, i + 1);
    if (u < 1 || static_cast<std::size_t>(u) > n_nodes || v < 1 ||
        static_cast<std::size_t>(v) > n_nodes) {
      throw parse_error(a_path.string(), i + 1, "node id out of range [1, " +
                                                    std::to_string(n_nodes) + "]");
    }
    if (node_graph[static_cast<std::size_t>(u)] != node_graph[static_cast<std::size_t>(v)]) {
      throw parse_error(a_path.string(), i + 1,
                        "edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") crosses two graphs");
    }
    if (u == v) {
      throw parse_error(a_path.string(), i + 1, "self-loop on node " + std::to_string(u));
    }
    const std::size_t gid = node_graph[static_cast<std::size_t>(u)];
    int lu = node_local[static_cast<std::size_t>(u)];
    int lv = node_local[static_cast<std::size_t>(v)];
    if (lu > lv) std::swap(lu, lv);
    double weight = 1.0;
    if (weight_mode == EdgeWeightMode::from_edge_labels) {
      weight = edge_label_values[i] + 1.0;
      if (!(weight > 0.0)) {
        throw parse_error(edge_labels_path.string(), i + 1,
                          "edge label yields non-positive weight");
      }
    }
    graph_edges[gid].emplace(std::make_pair(lu, lv), weight);  // first one wins
  }

  // labels, remapped ascending
  std::vector<long> raw_labels(n_graphs);
  std::set<long> distinct;
  for (std::size_t i = 0; i < n_graphs; ++i) {
    raw_labels[i] = detail::parse_long(label_lines[i], labels_path, i + 1);
    distinct.insert(raw_labels[i]);
  }
  std::map<long, int> remap;
  int next_class = 0;
  for (long raw : distinct) remap[raw] = next_class++;

  LabeledGraphSet ds;
  ds.name = name;
  ds.class_count = next_class;
  ds.graphs.reserve(n_graphs);
  ds.labels.reserve(n_graphs);
  for (std::size_t g = 1; g <= n_graphs; ++g) {
    if (graph_size[g] == 0) {
      throw parse_error(indicator_path.string(), 0,
                        "graph " + std::to_string(g) + " has no nodes");
    }
    std::vector<Edge> edges;
    edges.reserve(graph_edges[g].size());
    for (const auto& [pair, weight] : graph_edges[g]) {
      edges.push_back({pair.first, pair.second, weight});
    }
    ds.graphs.emplace_back(graph_size[g], std::move(edges));
    ds.labels.push_back(remap.at(raw_labels[g - 1]));
  }
  return ds;
}

/// Train/test partition that preserves per-class proportions: per class,
/// round(class_size * test_fraction) members (at least 1, at most
/// class_size - 1) go to test, chosen by a seeded shuffle. Dataset order is
/// preserved within each side.
inline std::pair<LabeledGraphSet, LabeledGraphSet> stratified_split(
    const LabeledGraphSet& ds, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("test_fraction must be in (0, 1)");
  }
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(ds.class_count));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    by_class.at(static_cast<std::size_t>(ds.labels[i])).push_back(i);
  }
  std::vector<bool> in_test(ds.size(), false);
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& members = by_class[c];
    if (members.size() < 2) {
      throw std::invalid_argument("class " + std::to_string(c) +
                                  " has fewer than 2 members");
    }
    auto want = static_cast<std::size_t>(
        std::lround(static_cast<double>(members.size()) * test_fraction));
    want = std::clamp<std::size_t>(want, 1, members.size() - 1);
    SplitMix64 rng(derive_seed(seed, c));
    rng.shuffle(members);
    for (std::size_t k = 0; k < want; ++k) in_test[members[k]] = true;
  }
  LabeledGraphSet train, test;
  train.class_count = test.class_count = ds.class_count;
  train.name = test.name = ds.name;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto& side = in_test[i] ? test : train;
    side.graphs.push_back(ds.graphs[i]);
    side.labels.push_back(ds.labels[i]);
  }
  return {std::move(train), std::move(test)};
}

/// Deterministic class-proportional subset of the dataset (largest-remainder
/// apportionment, members chosen by seeded shuffle). Used for reduced-scale
/// runs on the bigger benchmarks.
inline LabeledGraphSet stratified_subset(const LabeledGraphSet& ds, std::size_t count,
                                         std::uint64_t seed) {
  if (count == 0 || count > ds.size()) {
    throw std::invalid_argument("subset count must be in [1, dataset size]");
  }
  if (count == ds.size()) return ds;
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(ds.class_count));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    by_class.at(static_cast<std::size_t>(ds.labels[i])).push_back(i);
  }
  const double scale = static_cast<double>(count) / static_cast<double>(ds.size());
  std::vector<std::size_t> take(by_class.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    double ideal = static_cast<double>(by_class[c].size()) * scale;
    take[c] = std::min(static_cast<std::size_t>(ideal), by_class[c].size());
    assigned += take[c];
    remainders.push_back({ideal - static_cast<double>(take[c]), c});
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (const auto& [frac, c] : remainders) {
    if (assigned >= count) break;
    if (take[c] < by_class[c].size()) {
      ++take[c];
      ++assigned;
    }
  }
  std::vector<bool> keep(ds.size(), false);
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto members = by_class[c];
    SplitMix64 rng(derive_seed(seed, 1000 + c));
    rng.shuffle(members);
    for (std::size_t k = 0; k < take[c]; ++k) keep[members[k]] = true;
  }
  LabeledGraphSet out;
  out.class_count = ds.class_count;
  out.name = ds.name;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (keep[i]) {
      out.graphs.push_back(ds.graphs[i]);
      out.labels.push_back(ds.labels[i]);
    }
  }
  return out;
}

/// Erdos-Renyi style draw with unit weights; deterministic under seed.
inline Graph random_graph(int n_vertices, double edge_prob, std::uint64_t seed) {
  if (n_vertices < 1) {
    throw std::invalid_argument("graph needs at least one vertex");
  }
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw std::invalid_argument("edge probability must be in [0, 1]");
  }
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  for (int u = 1; u <= n_vertices; ++u) {
    for (int v = u + 1; v <= n_vertices; ++v) {
      if (rng.next_double() < edge_prob) edges.push_back({u, v, 1.0});
    }
  }
  return Graph(n_vertices, std::move(edges));
}

/// Complete graph with unit weights (benchmark fixture).
inline Graph complete_graph(int n_vertices) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n_vertices) * (n_vertices - 1) / 2);
  for (int u = 1; u <= n_vertices; ++u) {
    for (int v = u + 1; v <= n_vertices; ++v) edges.push_back({u, v, 1.0});
  }
  return Graph(n_vertices, std::move(edges));
}

}  // namespace egvqc
