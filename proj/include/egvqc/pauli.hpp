#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "egvqc/errors.hpp"

namespace egvqc {

/// Widest mask we can hold in one word.
inline constexpr int kMaxMaskQubits = 63;
/// Materializing a dense diagonal beyond this many qubits (8 MB of doubles)
/// is refused; every target dataset fits in 10-11 qubits.
inline constexpr int kMaxDiagonalQubits = 20;

/// Tensor product of Pauli-Z and identity factors over n_qubits wires,
/// stored as a bitmask: bit k set means Z acts on qubit k, clear means
/// identity. Qubit 0 is the least-significant bit of both the mask and of
/// computational-basis indices.
struct PauliZString {
  std::uint64_t mask = 0;
  int n_qubits = 1;

  friend bool operator==(const PauliZString&, const PauliZString&) = default;
};

namespace detail {
inline void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxMaskQubits) {
    throw std::invalid_argument("qubit count must be in [1, " +
                                std::to_string(kMaxMaskQubits) + "], got " +
                                std::to_string(n_qubits));
  }
}
}  // namespace detail

/// Builds the Z-string acting on the given qubit indices. An empty index
/// set yields the identity string (mask 0).
inline PauliZString make_zstring(const std::vector<int>& qubit_indices, int n_qubits) {
  detail::check_qubit_count(n_qubits);
  std::uint64_t mask = 0;
  for (int q : qubit_indices) {
    if (q < 0 || q >= n_qubits) {
      throw std::invalid_argument("qubit index " + std::to_string(q) +
                                  " out of range for " + std::to_string(n_qubits) +
                                  " qubits");
    }
    mask |= std::uint64_t{1} << q;
  }
  return PauliZString{mask, n_qubits};
}

inline PauliZString make_zstring(std::initializer_list<int> qubit_indices, int n_qubits) {
  return make_zstring(std::vector<int>(qubit_indices), n_qubits);
}

/// Product of two Z-strings. Z^2 = I on every shared qubit, so the result
/// mask is the XOR of the operands' masks.
inline PauliZString multiply_zstrings(const PauliZString& a, const PauliZString& b) {
  if (a.n_qubits != b.n_qubits) {
    throw std::invalid_argument("cannot multiply Z-strings on " +
                                std::to_string(a.n_qubits) + " and " +
                                std::to_string(b.n_qubits) + " qubits");
  }
  return PauliZString{a.mask ^ b.mask, a.n_qubits};
}

/// Eigenvalue of the Z-string on computational basis state |basis_index>:
/// (-1)^popcount(mask & basis_index).
inline int diagonal_entry(const PauliZString& zs, std::uint64_t basis_index) {
  if (basis_index >= (std::uint64_t{1} << zs.n_qubits)) {
    throw std::invalid_argument("basis index " + std::to_string(basis_index) +
                                " out of range for " + std::to_string(zs.n_qubits) +
                                " qubits");
  }
  return (std::popcount(zs.mask & basis_index) & 1) ? -1 : +1;
}

/// One weighted Z-string of a Hamiltonian.
struct HamiltonianTerm {
  double coefficient = 0.0;
  PauliZString string;
};

/// Terms with |coefficient| below this are dropped when merging; it sits
/// under double-precision noise and keeps term lists canonical.
inline constexpr double kMergeDropThreshold = 1e-12;

/// Canonicalizes a term list: coefficients of equal masks are summed,
/// near-zero terms dropped, output sorted by mask.
inline std::vector<HamiltonianTerm> merge_terms(std::vector<HamiltonianTerm> terms) {
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i].string.n_qubits != terms[0].string.n_qubits) {
      throw std::invalid_argument("merge_terms: mixed qubit counts");
    }
  }
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return a.string.mask < b.string.mask;
  });
  std::vector<HamiltonianTerm> merged;
  merged.reserve(terms.size());
  for (const auto& term : terms) {
    if (!merged.empty() && merged.back().string.mask == term.string.mask) {
      merged.back().coefficient += term.coefficient;
    } else {
      merged.push_back(term);
    }
  }
  std::erase_if(merged, [](const HamiltonianTerm& t) {
    return std::abs(t.coefficient) < kMergeDropThreshold;
  });
  return merged;
}

/// Weighted sum of Z-strings. Diagonal in the computational basis; the
/// dense diagonal is built once on demand (or injected by an encoder that
/// already computed it) and is immutable afterwards, so a constructed
/// Hamiltonian is safe to share across threads.
class GraphHamiltonian {
 public:
  GraphHamiltonian(int n_qubits, std::vector<HamiltonianTerm> terms)
      : n_qubits_(n_qubits), terms_(merge_terms(std::move(terms))) {
    validate();
  }

  /// Variant used by encoders that normalize against the exact spectrum:
  /// the diagonal was already computed at a previous scale and is adopted
  /// as the cache instead of being re-summed from the terms.
  GraphHamiltonian(int n_qubits, std::vector<HamiltonianTerm> terms,
                   std::vector<double> precomputed_diagonal)
      : n_qubits_(n_qubits),
        terms_(merge_terms(std::move(terms))),
        diagonal_(std::move(precomputed_diagonal)) {
    validate();
    if (diagonal_.size() != std::size_t{1} << n_qubits_) {
      throw std::invalid_argument("precomputed diagonal has wrong length");
    }
  }

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<HamiltonianTerm>& terms() const noexcept { return terms_; }

  /// Sum of |coefficient| over all terms; a safe bound on the spectrum.
  double coefficient_l1() const noexcept {
    double sum = 0.0;
    for (const auto& t : terms_) sum += std::abs(t.coefficient);
    return sum;
  }

  /// Dense diagonal, entry x = sum_t coeff_t * (-1)^popcount(mask_t & x).
  /// First call builds and caches; not thread-safe until built.
  const std::vector<double>& diagonal() const {
    if (diagonal_.empty()) diagonal_ = build_diagonal();
    return diagonal_;
  }

  bool has_cached_diagonal() const noexcept { return !diagonal_.empty(); }

  /// Exact extreme eigenvalues (min/max over the diagonal). Cached, so
  /// repeated contract checks during training cost nothing.
  std::pair<double, double> spectral_bounds() const {
    if (!bounds_cached_) {
      const auto& diag = diagonal();
      auto [lo, hi] = std::minmax_element(diag.begin(), diag.end());
      lambda_min_ = *lo;
      lambda_max_ = *hi;
      bounds_cached_ = true;
    }
    return {lambda_min_, lambda_max_};
  }

  nlohmann::json to_json() const {
    nlohmann::json terms_json = nlohmann::json::array();
    for (const auto& t : terms_) {
      terms_json.push_back({{"coeff", t.coefficient}, {"mask", t.string.mask}});
    }
    return {{"n_qubits", n_qubits_}, {"terms", std::move(terms_json)}};
  }

  static GraphHamiltonian from_json(const nlohmann::json& j) {
    int n_qubits = j.at("n_qubits").get<int>();
    std::vector<HamiltonianTerm> terms;
    for (const auto& tj : j.at("terms")) {
      terms.push_back({tj.at("coeff").get<double>(),
                       PauliZString{tj.at("mask").get<std::uint64_t>(), n_qubits}});
    }
    return GraphHamiltonian(n_qubits, std::move(terms));
  }

 private:
  void validate() const {
    detail::check_qubit_count(n_qubits_);
    for (const auto& t : terms_) {
      if (t.string.n_qubits != n_qubits_) {
        throw std::invalid_argument("term qubit count does not match Hamiltonian");
      }
      if (t.string.mask >= (std::uint64_t{1} << n_qubits_)) {
        throw std::invalid_argument("term mask exceeds qubit count");
      }
      if (!std::isfinite(t.coefficient)) {
        throw std::invalid_argument("term coefficient is not finite");
      }
    }
  }

  std::vector<double> build_diagonal() const {
    if (n_qubits_ > kMaxDiagonalQubits) {
      throw resource_error("refusing to build a 2^" + std::to_string(n_qubits_) +
                           " diagonal (cap is 2^" +
                           std::to_string(kMaxDiagonalQubits) + ")");
    }
    const std::uint64_t dim = std::uint64_t{1} << n_qubits_;
    std::vector<double> diag(dim, 0.0);
    for (const auto& term : terms_) {
      for (std::uint64_t x = 0; x < dim; ++x) {
        diag[x] += (std::popcount(term.string.mask & x) & 1) ? -term.coefficient
                                                             : term.coefficient;
      }
    }
    return diag;
  }

  int n_qubits_;
  std::vector<HamiltonianTerm> terms_;
  mutable std::vector<double> diagonal_;
  mutable double lambda_min_ = 0.0;
  mutable double lambda_max_ = 0.0;
  mutable bool bounds_cached_ = false;
};

}  // namespace egvqc
