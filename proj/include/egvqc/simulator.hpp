#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "egvqc/errors.hpp"
#include "egvqc/pauli.hpp"

namespace egvqc {

/// Statevectors above this qubit count (16 MB of amplitudes) are refused.
inline constexpr int kMaxStateQubits = 20;

enum class EntanglerTopology {
  ring,  // CNOT(q -> (q+1) mod n) for q = 0..n-1
  chain  // CNOT(q -> q+1) for q = 0..n-2
};

inline const char* to_string(EntanglerTopology t) {
  return t == EntanglerTopology::ring ? "ring" : "chain";
}

/// Variational angles, one RY per qubit per layer, stored row-major
/// [layer][qubit] in radians.
struct AnsatzParams {
  int layers = 0;
  int n_qubits = 1;
  std::vector<double> angles;  // layers * n_qubits

  static AnsatzParams zeros(int layers, int n_qubits) {
    return {layers, n_qubits,
            std::vector<double>(static_cast<std::size_t>(layers) * n_qubits, 0.0)};
  }

  double& angle(int layer, int qubit) {
    return angles[static_cast<std::size_t>(layer) * n_qubits + qubit];
  }
  double angle(int layer, int qubit) const {
    return angles[static_cast<std::size_t>(layer) * n_qubits + qubit];
  }
  std::size_t parameter_count() const noexcept { return angles.size(); }
};

/// Dense statevector over 2^n complex amplitudes, mutated in place by gate
/// kernels. Bit k of a basis index is the state of qubit k.
class StateVector {
 public:
  /// |0...0>.
  static StateVector zero_state(int n_qubits) {
    StateVector s(n_qubits);
    s.amps_[0] = 1.0;
    return s;
  }

  /// Uniform superposition H^n |0...0>: every amplitude 2^(-n/2).
  static StateVector plus_state(int n_qubits) {
    StateVector s(n_qubits);
    const double a = std::pow(2.0, -0.5 * n_qubits);
    for (auto& amp : s.amps_) amp = a;
    return s;
  }

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const std::complex<double>> amplitudes() const noexcept { return amps_; }
  std::complex<double>& amplitude(std::size_t index) { return amps_.at(index); }

  /// RY(theta) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]] on one qubit.
  void apply_ry(int qubit, double angle) {
    const std::uint64_t bit = check_qubit(qubit);
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if (i & bit) continue;
      const auto a = amps_[i];
      const auto b = amps_[i | bit];
      amps_[i] = c * a - s * b;
      amps_[i | bit] = s * a + c * b;
    }
  }

  void apply_hadamard(int qubit) {
    const std::uint64_t bit = check_qubit(qubit);
    const double inv_sqrt2 = 0.70710678118654752440;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if (i & bit) continue;
      const auto a = amps_[i];
      const auto b = amps_[i | bit];
      amps_[i] = inv_sqrt2 * (a + b);
      amps_[i | bit] = inv_sqrt2 * (a - b);
    }
  }

  /// Flips the target bit wherever the control bit is set.
  void apply_cnot(int control, int target) {
    if (control == target) {
      throw std::invalid_argument("cnot control and target must differ");
    }
    const std::uint64_t cbit = check_qubit(control);
    const std::uint64_t tbit = check_qubit(target);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
    }
  }

  /// Per layer: RY on every qubit (ascending), then the entangling CNOTs
  /// (ascending control). Single-qubit circuits get no entanglers.
  void apply_ansatz(const AnsatzParams& params,
                    EntanglerTopology topology = EntanglerTopology::ring) {
    if (params.n_qubits != n_qubits_ ||
        params.angles.size() !=
            static_cast<std::size_t>(params.layers) * params.n_qubits) {
      throw std::invalid_argument("ansatz shape does not match state");
    }
    for (int layer = 0; layer < params.layers; ++layer) {
      for (int q = 0; q < n_qubits_; ++q) apply_ry(q, params.angle(layer, q));
      if (n_qubits_ < 2) continue;
      const int last = topology == EntanglerTopology::ring ? n_qubits_ : n_qubits_ - 1;
      for (int q = 0; q < last; ++q) apply_cnot(q, (q + 1) % n_qubits_);
    }
  }

  /// <psi| D |psi> for a diagonal observable D.
  double expectation_diagonal(std::span<const double> diag) const {
    if (diag.size() != amps_.size()) {
      throw std::invalid_argument("diagonal length " + std::to_string(diag.size()) +
                                  " does not match state dimension " +
                                  std::to_string(amps_.size()));
    }
    double value = 0.0;
    for (std::size_t x = 0; x < amps_.size(); ++x) {
      value += std::norm(amps_[x]) * diag[x];
    }
    return value;
  }

  double norm() const {
    double sum = 0.0;
    for (const auto& amp : amps_) sum += std::norm(amp);
    return std::sqrt(sum);
  }

 private:
  explicit StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxStateQubits) {
      throw resource_error("statevector qubit count must be in [1, " +
                           std::to_string(kMaxStateQubits) + "], got " +
                           std::to_string(n_qubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, 0.0);
  }

  std::uint64_t check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_) {
      throw std::invalid_argument("qubit " + std::to_string(qubit) +
                                  " out of range for " + std::to_string(n_qubits_) +
                                  "-qubit state");
    }
    return std::uint64_t{1} << qubit;
  }

  int n_qubits_;
  std::vector<std::complex<double>> amps_;
};

/// Product state RY(f_0) x ... x RY(f_{n-1}) |0...0>; one feature per qubit.
inline StateVector angle_encode(std::span<const double> features) {
  if (features.empty()) {
    throw std::invalid_argument("angle encoding needs at least one feature");
  }
  for (double f : features) {
    if (!std::isfinite(f)) {
      throw std::invalid_argument("angle-encoded features must be finite");
    }
  }
  StateVector state = StateVector::zero_state(static_cast<int>(features.size()));
  for (std::size_t q = 0; q < features.size(); ++q) {
    state.apply_ry(static_cast<int>(q), features[q]);
  }
  return state;
}

inline StateVector angle_encode(const std::vector<double>& features, int n_qubits) {
  if (static_cast<int>(features.size()) != n_qubits) {
    throw std::invalid_argument("feature length " + std::to_string(features.size()) +
                                " does not match qubit count " +
                                std::to_string(n_qubits));
  }
  return angle_encode(std::span<const double>(features));
}

}  // namespace egvqc
