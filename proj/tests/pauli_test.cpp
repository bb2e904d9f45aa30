#include "egvqc/pauli.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "egvqc/rng.hpp"
#include "oracles.hpp"

using namespace egvqc;

namespace {

GraphHamiltonian random_hamiltonian(SplitMix64& rng, int max_qubits = 6) {
  const int n = 1 + static_cast<int>(rng.next_below(max_qubits));
  const std::uint64_t dim = std::uint64_t{1} << n;
  const int n_terms = static_cast<int>(rng.next_below(2 * dim));
  std::vector<HamiltonianTerm> terms;
  for (int t = 0; t < n_terms; ++t) {
    terms.push_back({4.0 * rng.next_double() - 2.0,
                     PauliZString{rng.next_below(dim), n}});
  }
  return GraphHamiltonian(n, std::move(terms));
}

}  // namespace

TEST(make_zstring, examples) {
  EXPECT_EQ(make_zstring({}, 4).mask, 0u);  // empty product is identity
  EXPECT_EQ(make_zstring({0}, 4).mask, 0b0001u);
  EXPECT_EQ(make_zstring({0, 2}, 3).mask, 0b101u);
  EXPECT_EQ(make_zstring({0, 2}, 3).n_qubits, 3);
}

TEST(make_zstring, rejects_out_of_range_indices) {
  EXPECT_THROW(make_zstring({4}, 4), std::invalid_argument);
  EXPECT_THROW(make_zstring({-1}, 4), std::invalid_argument);
  EXPECT_THROW(make_zstring({}, 0), std::invalid_argument);
}

TEST(multiply_zstrings, examples) {
  auto zs = [](std::uint64_t mask, int n) { return PauliZString{mask, n}; };
  EXPECT_EQ(multiply_zstrings(zs(0b01, 2), zs(0b10, 2)).mask, 0b11u);
  EXPECT_EQ(multiply_zstrings(zs(0b11, 2), zs(0b01, 2)).mask, 0b10u);  // Z*Z = I
  EXPECT_EQ(multiply_zstrings(zs(0b1010, 4), zs(0b1010, 4)).mask, 0u);
  EXPECT_THROW(multiply_zstrings(zs(1, 2), zs(1, 3)), std::invalid_argument);
}

TEST(multiply_zstrings, xor_group_law) {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(16));
    const std::uint64_t dim = std::uint64_t{1} << n;
    PauliZString a{rng.next_below(dim), n};
    PauliZString b{rng.next_below(dim), n};
    PauliZString c{rng.next_below(dim), n};
    EXPECT_EQ(multiply_zstrings(a, b), multiply_zstrings(b, a));
    EXPECT_EQ(multiply_zstrings(multiply_zstrings(a, b), c),
              multiply_zstrings(a, multiply_zstrings(b, c)));
    EXPECT_EQ(multiply_zstrings(a, a).mask, 0u);
    EXPECT_EQ(multiply_zstrings(a, PauliZString{0, n}), a);
  }
}

TEST(diagonal_entry, examples) {
  EXPECT_EQ(diagonal_entry(PauliZString{0b0001, 4}, 0), +1);
  EXPECT_EQ(diagonal_entry(PauliZString{0b0001, 4}, 1), -1);
  EXPECT_EQ(diagonal_entry(PauliZString{0b011, 3}, 0b011), +1);  // even parity
  EXPECT_THROW(diagonal_entry(PauliZString{1, 2}, 4), std::invalid_argument);
}

TEST(diagonal_entry, is_a_homomorphism) {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(12));
    const std::uint64_t dim = std::uint64_t{1} << n;
    PauliZString a{rng.next_below(dim), n};
    PauliZString b{rng.next_below(dim), n};
    const std::uint64_t x = rng.next_below(dim);
    EXPECT_EQ(diagonal_entry(multiply_zstrings(a, b), x),
              diagonal_entry(a, x) * diagonal_entry(b, x));
  }
}

TEST(merge_terms, sums_equal_masks) {
  auto merged = merge_terms({{0.3, {0b01, 2}}, {0.2, {0b01, 2}}});
  ASSERT_EQ(merged.size(), 1u);
  EXPECT_DOUBLE_EQ(merged[0].coefficient, 0.5);
  EXPECT_EQ(merged[0].string.mask, 0b01u);
}

TEST(merge_terms, drops_cancelled_terms) {
  EXPECT_TRUE(merge_terms({{0.5, {0b01, 2}}, {-0.5, {0b01, 2}}}).empty());
}

TEST(merge_terms, sorts_by_mask) {
  auto merged = merge_terms({{0.1, {0b10, 2}}, {0.2, {0b01, 2}}});
  ASSERT_EQ(merged.size(), 2u);
  EXPECT_EQ(merged[0].string.mask, 0b01u);
  EXPECT_DOUBLE_EQ(merged[0].coefficient, 0.2);
  EXPECT_EQ(merged[1].string.mask, 0b10u);
  EXPECT_DOUBLE_EQ(merged[1].coefficient, 0.1);
}

TEST(merge_terms, rejects_mixed_qubit_counts) {
  EXPECT_THROW(merge_terms({{1.0, {0, 2}}, {1.0, {0, 3}}}), std::invalid_argument);
}

TEST(build_diagonal, single_z) {
  GraphHamiltonian h(1, {{1.0, {0b1, 1}}});
  EXPECT_EQ(h.diagonal(), (std::vector<double>{1.0, -1.0}));
}

TEST(build_diagonal, two_qubit_fields) {
  // 0.5 (Z x I) + 0.5 (I x Z): masks 10 and 01
  GraphHamiltonian h(2, {{0.5, {0b10, 2}}, {0.5, {0b01, 2}}});
  EXPECT_EQ(h.diagonal(), (std::vector<double>{1.0, 0.0, 0.0, -1.0}));
}

TEST(build_diagonal, empty_term_list_is_the_zero_operator) {
  GraphHamiltonian h(3, {});
  EXPECT_EQ(h.diagonal(), std::vector<double>(8, 0.0));
}

TEST(build_diagonal, matches_dense_kronecker_oracle) {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    GraphHamiltonian h = random_hamiltonian(rng);
    auto dense = oracle::dense_hamiltonian(h);
    const auto& diag = h.diagonal();
    for (std::size_t x = 0; x < diag.size(); ++x) {
      EXPECT_NEAR(diag[x], dense.at(x, x).real(), 1e-12);
      // and the operator really is diagonal
      for (std::size_t y = 0; y < diag.size(); ++y) {
        if (y != x) EXPECT_EQ(dense.at(x, y), oracle::Complex{});
      }
    }
  }
}

TEST(build_diagonal, refuses_past_the_qubit_cap) {
  GraphHamiltonian h(kMaxDiagonalQubits + 1, {{1.0, {1, kMaxDiagonalQubits + 1}}});
  EXPECT_THROW(h.diagonal(), resource_error);
  EXPECT_THROW(h.spectral_bounds(), resource_error);
}

TEST(spectral_bounds, examples) {
  GraphHamiltonian fields(2, {{0.5, {0b10, 2}}, {0.5, {0b01, 2}}});
  EXPECT_EQ(fields.spectral_bounds(), (std::pair{-1.0, 1.0}));

  GraphHamiltonian scaled(1, {{0.7, {1, 1}}});
  EXPECT_EQ(scaled.spectral_bounds(), (std::pair{-0.7, 0.7}));

  // (1/3)(Z1Z2 + Z2Z3 + Z1Z3): all-zeros basis state gives +1, any mixed
  // parity gives -1/3, so the per-term bound is loose on the low side.
  const double third = 1.0 / 3.0;
  GraphHamiltonian triangle(
      3, {{third, {0b011, 3}}, {third, {0b110, 3}}, {third, {0b101, 3}}});
  auto [lo, hi] = triangle.spectral_bounds();
  EXPECT_NEAR(lo, -third, 1e-15);
  EXPECT_NEAR(hi, 1.0, 1e-15);
}

TEST(spectral_bounds, within_coefficient_l1) {
  SplitMix64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    GraphHamiltonian h = random_hamiltonian(rng);
    auto [lo, hi] = h.spectral_bounds();
    const double l1 = h.coefficient_l1();
    EXPECT_GE(lo, -l1 - 1e-12);
    EXPECT_LE(hi, l1 + 1e-12);
  }
}

TEST(graph_hamiltonian, json_round_trip) {
  SplitMix64 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    GraphHamiltonian h = random_hamiltonian(rng);
    GraphHamiltonian back = GraphHamiltonian::from_json(h.to_json());
    ASSERT_EQ(back.n_qubits(), h.n_qubits());
    ASSERT_EQ(back.terms().size(), h.terms().size());
    for (std::size_t i = 0; i < h.terms().size(); ++i) {
      EXPECT_EQ(back.terms()[i].string, h.terms()[i].string);
      EXPECT_DOUBLE_EQ(back.terms()[i].coefficient, h.terms()[i].coefficient);
    }
  }
}

TEST(graph_hamiltonian, validates_terms) {
  EXPECT_THROW(GraphHamiltonian(2, {{1.0, {0b100, 2}}}), std::invalid_argument);
  EXPECT_THROW(GraphHamiltonian(2, {{1.0, {1, 3}}}), std::invalid_argument);
  const double nan = std::nan("");
  EXPECT_THROW(GraphHamiltonian(2, {{nan, {1, 2}}}), std::invalid_argument);
}
