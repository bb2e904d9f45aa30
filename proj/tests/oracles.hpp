// Brute-force reference machinery for tests. Everything here builds dense
// 2^N x 2^N operators by explicit Kronecker products and multiplies them
// out, deliberately ignoring the bitmask shortcuts used by the library.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "egvqc/pauli.hpp"
#include "egvqc/simulator.hpp"

namespace oracle {

using Complex = std::complex<double>;

struct Matrix {
  std::size_t dim = 0;
  std::vector<Complex> a;  // row-major dim x dim

  static Matrix identity(std::size_t dim) {
    Matrix m{dim, std::vector<Complex>(dim * dim, 0.0)};
    for (std::size_t i = 0; i < dim; ++i) m.a[i * dim + i] = 1.0;
    return m;
  }

  Complex& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  Complex at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

inline Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out{x.dim * y.dim, std::vector<Complex>(x.dim * y.dim * x.dim * y.dim, 0.0)};
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t j = 0; j < x.dim; ++j)
      for (std::size_t k = 0; k < y.dim; ++k)
        for (std::size_t l = 0; l < y.dim; ++l)
          out.at(i * y.dim + k, j * y.dim + l) = x.at(i, j) * y.at(k, l);
  return out;
}

inline Matrix matmul(const Matrix& x, const Matrix& y) {
  Matrix out{x.dim, std::vector<Complex>(x.dim * x.dim, 0.0)};
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t k = 0; k < x.dim; ++k) {
      const Complex xik = x.at(i, k);
      if (xik == Complex{}) continue;
      for (std::size_t j = 0; j < x.dim; ++j) out.at(i, j) += xik * y.at(k, j);
    }
  return out;
}

inline std::vector<Complex> matvec(const Matrix& m, const std::vector<Complex>& v) {
  std::vector<Complex> out(m.dim, 0.0);
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

inline Matrix pauli_z() {
  Matrix z = Matrix::identity(2);
  z.at(1, 1) = -1.0;
  return z;
}

inline Matrix ry(double theta) {
  Matrix m{2, std::vector<Complex>(4, 0.0)};
  m.at(0, 0) = std::cos(theta / 2);
  m.at(0, 1) = -std::sin(theta / 2);
  m.at(1, 0) = std::sin(theta / 2);
  m.at(1, 1) = std::cos(theta / 2);
  return m;
}

inline Matrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix m{2, std::vector<Complex>(4, 0.0)};
  m.at(0, 0) = s;
  m.at(0, 1) = s;
  m.at(1, 0) = s;
  m.at(1, 1) = -s;
  return m;
}

// Qubit 0 is the least-significant bit, so the full operator is
// factor(n-1) (x) ... (x) factor(0).
inline Matrix embed_single(const Matrix& gate, int qubit, int n_qubits) {
  Matrix out = Matrix::identity(1);
  for (int k = n_qubits - 1; k >= 0; --k) {
    out = kron(out, k == qubit ? gate : Matrix::identity(2));
  }
  return out;
}

inline Matrix dense_zstring(std::uint64_t mask, int n_qubits) {
  Matrix out = Matrix::identity(1);
  for (int k = n_qubits - 1; k >= 0; --k) {
    out = kron(out, (mask >> k) & 1 ? pauli_z() : Matrix::identity(2));
  }
  return out;
}

inline Matrix dense_hamiltonian(const egvqc::GraphHamiltonian& h) {
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  Matrix out{dim, std::vector<Complex>(dim * dim, 0.0)};
  for (const auto& term : h.terms()) {
    Matrix zs = dense_zstring(term.string.mask, h.n_qubits());
    for (std::size_t i = 0; i < dim * dim; ++i) out.a[i] += term.coefficient * zs.a[i];
  }
  return out;
}

inline Matrix dense_cnot(int control, int target, int n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  Matrix out{dim, std::vector<Complex>(dim * dim, 0.0)};
  for (std::size_t in = 0; in < dim; ++in) {
    std::size_t flip = (in >> control) & 1 ? (std::size_t{1} << target) : 0;
    out.at(in ^ flip, in) = 1.0;
  }
  return out;
}

// Same gate order as StateVector::apply_ansatz.
inline Matrix dense_ansatz(const egvqc::AnsatzParams& params,
                           egvqc::EntanglerTopology topology) {
  const int n = params.n_qubits;
  Matrix u = Matrix::identity(std::size_t{1} << n);
  for (int layer = 0; layer < params.layers; ++layer) {
    for (int q = 0; q < n; ++q) {
      u = matmul(embed_single(ry(params.angle(layer, q)), q, n), u);
    }
    if (n < 2) continue;
    const int last = topology == egvqc::EntanglerTopology::ring ? n : n - 1;
    for (int q = 0; q < last; ++q) {
      u = matmul(dense_cnot(q, (q + 1) % n, n), u);
    }
  }
  return u;
}

inline double dense_expectation(const std::vector<Complex>& psi, const Matrix& op) {
  auto op_psi = matvec(op, psi);
  Complex value = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) value += std::conj(psi[i]) * op_psi[i];
  return value.real();
}

// Central finite differences on a scalar function of the angles.
template <typename EvalFn>
std::vector<double> finite_difference_gradient(const EvalFn& eval,
                                               egvqc::AnsatzParams params,
                                               double step = 1e-4) {
  std::vector<double> grad(params.parameter_count());
  for (std::size_t i = 0; i < grad.size(); ++i) {
    const double original = params.angles[i];
    params.angles[i] = original + step;
    const double plus = eval(params);
    params.angles[i] = original - step;
    const double minus = eval(params);
    params.angles[i] = original;
    grad[i] = (plus - minus) / (2.0 * step);
  }
  return grad;
}

}  // namespace oracle
