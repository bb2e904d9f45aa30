#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "egvqc/graph.hpp"

namespace egvqc {

enum class SpectralMatrix {
  adjacency,  // weighted A, the default
  laplacian   // D - A
};

inline const char* to_string(SpectralMatrix m) {
  return m == SpectralMatrix::adjacency ? "adjacency" : "laplacian";
}

/// Dense weighted adjacency (or Laplacian) of a graph, row-major n x n.
inline std::vector<double> spectral_matrix(const Graph& g, SpectralMatrix kind) {
  const auto n = static_cast<std::size_t>(g.n_vertices());
  std::vector<double> m(n * n, 0.0);
  for (const auto& e : g.edges()) {
    const auto u = static_cast<std::size_t>(e.u - 1);
    const auto v = static_cast<std::size_t>(e.v - 1);
    const double w = kind == SpectralMatrix::adjacency ? e.weight : -e.weight;
    m[u * n + v] = w;
    m[v * n + u] = w;
  }
  if (kind == SpectralMatrix::laplacian) {
    for (std::size_t v = 0; v < n; ++v) {
      m[v * n + v] = g.weighted_degree(static_cast<int>(v) + 1);
    }
  }
  return m;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations. The input
/// is consumed as scratch. Unordered output.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n) {
  if (a.size() != n * n) {
    throw std::invalid_argument("matrix buffer does not match dimension");
  }
  if (n == 0) return {};
  auto at = [&a, n](std::size_t r, std::size_t c) -> double& { return a[r * n + c]; };

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(at(i, j)));
  if (scale == 0.0) return std::vector<double>(n, 0.0);

  const double stop = 1e-14 * scale;
  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(at(p, q)));
    if (off <= stop) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) <= stop * 1e-2) continue;
        const double theta = 0.5 * (at(q, q) - at(p, p)) / apq;
        // stable tangent of the rotation angle
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eigenvalues(n);
  for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = at(i, i);
  return eigenvalues;
}

/// Singular values of the graph's spectral matrix in descending order.
/// The matrix is symmetric, so they are the absolute eigenvalues.
inline std::vector<double> singular_values(const Graph& g,
                                           SpectralMatrix kind = SpectralMatrix::adjacency) {
  auto eigs = jacobi_eigenvalues(spectral_matrix(g, kind),
                                 static_cast<std::size_t>(g.n_vertices()));
  for (double& e : eigs) e = std::abs(e);
  std::sort(eigs.begin(), eigs.end(), std::greater<>());
  return eigs;
}

/// Top-k singular values, zero-padded when the graph has fewer vertices.
inline std::vector<double> top_singular_values(const Graph& g, int k,
                                               SpectralMatrix kind = SpectralMatrix::adjacency) {
  if (k < 1) throw std::invalid_argument("feature count must be positive");
  auto sv = singular_values(g, kind);
  sv.resize(static_cast<std::size_t>(k), 0.0);
  return sv;
}

/// Feature scaling fitted on the training split only: the largest singular
/// value seen in training maps to exactly pi.
struct PcaScaler {
  double max_singular_value = 0.0;
  SpectralMatrix kind = SpectralMatrix::adjacency;

  static PcaScaler fit(std::span<const Graph> training_graphs,
                       SpectralMatrix kind = SpectralMatrix::adjacency) {
    PcaScaler scaler;
    scaler.kind = kind;
    for (const auto& g : training_graphs) {
      auto sv = singular_values(g, kind);
      if (!sv.empty()) {
        scaler.max_singular_value = std::max(scaler.max_singular_value, sv.front());
      }
    }
    return scaler;
  }
};

/// Rotation-angle features for one graph: top-k singular values scaled by
/// pi / (training max) and clamped into [0, pi].
inline std::vector<double> pca_features(const Graph& g, int k, const PcaScaler& scaler) {
  auto features = top_singular_values(g, k, scaler.kind);
  for (double& f : features) {
    f = scaler.max_singular_value > 0.0
            ? std::clamp(std::numbers::pi * (f / scaler.max_singular_value), 0.0,
                         std::numbers::pi)
            : 0.0;
  }
  return features;
}

}  // namespace egvqc
