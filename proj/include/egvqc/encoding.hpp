#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "egvqc/errors.hpp"
#include "egvqc/graph.hpp"
#include "egvqc/pauli.hpp"

namespace egvqc {

/// Normalization policy for the encoded Hamiltonian. The probability map
/// used downstream needs the spectrum inside [-1, 1]; the modes differ in
/// how hard they guarantee that.
enum class NormMode {
  paper,   // divide by max|J| + max|h|; spectrum may still leave [-1, 1]
  strict,  // divide by sum|J| + sum|h|; bound holds unconditionally
  exact    // rescale by the exact spectral radius; tightest, the default
};

inline const char* to_string(NormMode mode) {
  switch (mode) {
    case NormMode::paper: return "paper";
    case NormMode::strict: return "strict";
    case NormMode::exact: return "exact";
  }
  return "?";
}

struct EncodingConfig {
  int n_qubits = 1;
  NormMode norm_mode = NormMode::exact;
  bool include_vertex_terms = true;
};

/// Smallest qubit count N whose binary codes 1..2^N-1 cover every vertex id,
/// i.e. n_vertices <= 2^N - 1.
inline int required_qubits(int n_vertices) {
  if (n_vertices < 1) {
    throw std::invalid_argument("vertex count must be positive");
  }
  int n = 1;
  while (((std::uint64_t{1} << n) - 1) < static_cast<std::uint64_t>(n_vertices)) ++n;
  return n;
}

/// Vertex id -> Z-string whose mask is the id's binary expansion. Id 0 is
/// rejected: the all-identity string must never denote a vertex.
inline PauliZString encode_vertex(int vertex_id, int n_qubits) {
  detail::check_qubit_count(n_qubits);
  if (vertex_id < 1 ||
      static_cast<std::uint64_t>(vertex_id) >= (std::uint64_t{1} << n_qubits)) {
    throw std::invalid_argument("vertex id " + std::to_string(vertex_id) +
                                " not encodable on " + std::to_string(n_qubits) +
                                " qubits");
  }
  return PauliZString{static_cast<std::uint64_t>(vertex_id), n_qubits};
}

/// Edge (i, j) -> product of the two vertex strings; Z^2 = I collapses the
/// mask to XOR(i, j), never the identity because i != j.
inline PauliZString encode_edge(int i, int j, int n_qubits) {
  if (i == j) {
    throw std::invalid_argument("self-loop (" + std::to_string(i) +
                                "," + std::to_string(j) + ") cannot be encoded");
  }
  return multiply_zstrings(encode_vertex(i, n_qubits), encode_vertex(j, n_qubits));
}

/// Result of encoding one graph. Besides the Hamiltonian it keeps what the
/// inspection report needs: the per-kind coefficient maxima after
/// normalization and the raw term census (edges + vertices) before masks
/// collide and merge.
struct EncodedGraph {
  GraphHamiltonian hamiltonian;
  double delta_j = 0.0;      // max |edge coefficient| after normalization
  double delta_h = 0.0;      // max |vertex coefficient| after normalization
  int raw_term_count = 0;    // |E| + |V| (vertex part only when enabled)

  int collision_count() const noexcept {
    return raw_term_count - static_cast<int>(hamiltonian.terms().size());
  }
};

namespace detail {

inline std::vector<double> scaled_clamped_diagonal(const GraphHamiltonian& h,
                                                   double divisor) {
  std::vector<double> diag = h.diagonal();
  for (double& d : diag) d = std::clamp(d / divisor, -1.0, 1.0);
  return diag;
}

}  // namespace detail

/// Assembles H(G): one coupling term per edge (coefficient = edge weight)
/// plus one field term per vertex (coefficient = weighted degree), all
/// divided by the mode's normalization constant. Distinct edges whose
/// endpoint ids XOR to the same mask merge into one term; the raw census
/// stays visible through EncodedGraph::collision_count().
inline EncodedGraph encode_graph(const Graph& g, const EncodingConfig& cfg) {
  const int n = cfg.n_qubits;
  if (static_cast<std::uint64_t>(g.n_vertices()) >= (std::uint64_t{1} << n)) {
    throw std::invalid_argument("graph with " + std::to_string(g.n_vertices()) +
                                " vertices does not fit in " + std::to_string(n) +
                                " qubits");
  }

  std::vector<HamiltonianTerm> terms;
  terms.reserve(g.edges().size() +
                (cfg.include_vertex_terms ? static_cast<std::size_t>(g.n_vertices()) : 0));
  double max_j = 0.0, sum_j = 0.0;
  for (const auto& e : g.edges()) {
    terms.push_back({e.weight, encode_edge(e.u, e.v, n)});
    max_j = std::max(max_j, e.weight);
    sum_j += e.weight;
  }
  double max_h = 0.0, sum_h = 0.0;
  int raw_count = static_cast<int>(g.edges().size());
  if (cfg.include_vertex_terms) {
    for (int v = 1; v <= g.n_vertices(); ++v) {
      const double degree = g.weighted_degree(v);
      terms.push_back({degree, encode_vertex(v, n)});
      max_h = std::max(max_h, degree);
      sum_h += degree;
    }
    raw_count += g.n_vertices();
  }

  const double paper_scale = max_j + max_h;
  if (paper_scale <= 0.0) {
    throw degenerate_hamiltonian_error(
        "graph encodes to the zero operator (no edges and no vertex weight)");
  }

  auto scaled = [&terms](double divisor) {
    std::vector<HamiltonianTerm> out = terms;
    for (auto& t : out) t.coefficient /= divisor;
    return out;
  };

  EncodedGraph result = [&]() -> EncodedGraph {
    switch (cfg.norm_mode) {
      case NormMode::paper:
        return {GraphHamiltonian(n, scaled(paper_scale)),
                max_j / paper_scale, max_h / paper_scale, raw_count};
      case NormMode::strict: {
        const double s = sum_j + sum_h;
        GraphHamiltonian h(n, scaled(s));
        auto diag = detail::scaled_clamped_diagonal(h, 1.0);
        return {GraphHamiltonian(n, h.terms(), std::move(diag)),
                max_j / s, max_h / s, raw_count};
      }
      case NormMode::exact: {
        GraphHamiltonian at_paper_scale(n, scaled(paper_scale));
        auto [lo, hi] = at_paper_scale.spectral_bounds();
        const double radius = std::max(std::abs(lo), std::abs(hi));
        if (radius <= 0.0) {
          throw degenerate_hamiltonian_error("encoded operator has zero spectrum");
        }
        const double divisor = paper_scale * radius;
        auto diag = detail::scaled_clamped_diagonal(at_paper_scale, radius);
        return {GraphHamiltonian(n, scaled(divisor), std::move(diag)),
                max_j / divisor, max_h / divisor, raw_count};
      }
    }
    throw std::logic_error("unreachable norm mode");
  }();

  if (result.hamiltonian.terms().empty()) {
    throw degenerate_hamiltonian_error("all encoded terms cancelled or vanished");
  }
  return result;
}

/// Exact spectrum check against the unit interval, with the per-kind
/// coefficient maxima reported alongside. The delta sum is informative
/// only: with more than one term it does not bound the spectrum (the
/// triangle graph under paper normalization exceeds it).
struct BoundReport {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double delta_j_plus_delta_h = 0.0;
  bool within_unit = false;
};

inline BoundReport verify_bound(const EncodedGraph& eg) {
  auto [lo, hi] = eg.hamiltonian.spectral_bounds();
  return {lo, hi, eg.delta_j + eg.delta_h, lo >= -1.0 && hi <= 1.0};
}

/// Drops graphs that do not fit the configured qubit count. Returns the
/// kept set and how many were excluded.
inline std::pair<LabeledGraphSet, int> exclude_oversized(const LabeledGraphSet& ds,
                                                         int n_qubits) {
  LabeledGraphSet kept;
  kept.class_count = ds.class_count;
  kept.name = ds.name;
  int excluded = 0;
  const std::uint64_t capacity = (std::uint64_t{1} << n_qubits) - 1;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (static_cast<std::uint64_t>(ds.graphs[i].n_vertices()) <= capacity) {
      kept.graphs.push_back(ds.graphs[i]);
      kept.labels.push_back(ds.labels[i]);
    } else {
      ++excluded;
    }
  }
  return {std::move(kept), excluded};
}

}  // namespace egvqc
