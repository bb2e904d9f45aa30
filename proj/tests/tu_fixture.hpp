// Writes small TU-layout datasets into a temp directory for loader, CLI,
// and determinism tests.
#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "egvqc/graph.hpp"
#include "egvqc/rng.hpp"

namespace fixture {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

/// Three hand-checked graphs, raw labels {-1, 1, -1}:
///   1: triangle on nodes 1-3, edge labels 0,1,2
///   2: single edge on nodes 4-5 (the directed pair appears both ways)
///   3: path on nodes 6-8 plus the isolated node 9
inline std::filesystem::path write_toy_dataset(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "TOY_A.txt",
             "1, 2\n2, 1\n2, 3\n3, 2\n1, 3\n3, 1\n"
             "4, 5\n5, 4\n"
             "6, 7\n7, 6\n7, 8\n8, 7\n");
  write_file(dir / "TOY_graph_indicator.txt", "1\n1\n1\n2\n2\n3\n3\n3\n3\n");
  write_file(dir / "TOY_graph_labels.txt", "-1\n1\n-1\n");
  write_file(dir / "TOY_edge_labels.txt", "0\n0\n1\n1\n2\n2\n0\n0\n0\n0\n1\n1\n");
  return dir;
}

/// Random binary dataset in TU layout; label = edge count above the median.
/// Half the graphs are drawn sparse, half dense, so the classes separate.
inline std::filesystem::path write_density_dataset(const std::filesystem::path& dir,
                                                   const std::string& name,
                                                   int per_class, int n_vertices,
                                                   std::uint64_t seed) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<egvqc::Graph> graphs;
  for (int i = 0; i < per_class; ++i) {
    graphs.push_back(egvqc::random_graph(n_vertices, 0.2, seed + 2 * i));
    graphs.push_back(egvqc::random_graph(n_vertices, 0.8, seed + 2 * i + 1));
  }
  std::vector<std::size_t> edge_counts;
  for (const auto& g : graphs) edge_counts.push_back(g.edges().size());
  auto sorted = edge_counts;
  std::sort(sorted.begin(), sorted.end());
  const double median =
      0.5 * (static_cast<double>(sorted[sorted.size() / 2 - 1]) +
             static_cast<double>(sorted[sorted.size() / 2]));

  std::string a_txt, indicator, labels;
  int next_node = 1;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    const int base = next_node - 1;
    for (int v = 0; v < graphs[g].n_vertices(); ++v) {
      indicator += std::to_string(g + 1) + "\n";
      ++next_node;
    }
    for (const auto& e : graphs[g].edges()) {
      a_txt += std::to_string(base + e.u) + ", " + std::to_string(base + e.v) + "\n";
      a_txt += std::to_string(base + e.v) + ", " + std::to_string(base + e.u) + "\n";
    }
    labels += (static_cast<double>(edge_counts[g]) > median ? "1\n" : "0\n");
  }
  write_file(dir / (name + "_A.txt"), a_txt);
  write_file(dir / (name + "_graph_indicator.txt"), indicator);
  write_file(dir / (name + "_graph_labels.txt"), labels);
  return dir;
}

inline std::filesystem::path temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("egvqc_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixture
