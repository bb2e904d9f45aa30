#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace egvqc {

/// Deterministic 64-bit generator (splitmix64). All randomness in the
/// project flows through this type so that runs are reproducible from a
/// single root seed independent of platform or standard-library vendor.
/// std::uniform_* distributions are deliberately avoided: their output is
/// not pinned by the standard.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 bits of entropy.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform angle in (-pi, pi].
  double next_angle() noexcept {
    return 3.14159265358979323846 * (1.0 - 2.0 * next_double());
  }

  /// Uniform integer in [0, bound). Lemire multiply-shift; the modulo bias
  /// is below 2^-64 for any bound we use.
  std::uint64_t next_below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  /// Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& values) noexcept {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t state_;
};

/// Expands one root seed into independent stream seeds (split seed, init
/// seed, per-head seeds, ...). Documented contract: stream k of root r is
/// splitmix64(r ^ (k+1) * golden_gamma).next_u64().
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) noexcept {
  return SplitMix64(root ^ ((stream + 1) * 0x9e3779b97f4a7c15ULL)).next_u64();
}

}  // namespace egvqc
