#pragma once

#include <array>
#include <cstdint>

#include "isometrica/matrix.hpp"

namespace isometrica {

/// Philox4x32-10 block function (Salmon et al., counter-based).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Deterministic random stream: the key is the run seed, the upper counter
/// words are the stream id, and the lower words count blocks. Two streams with
/// distinct ids never share a counter, so trial i draws the same numbers no
/// matter which thread runs it.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::size_t uniform_int(std::size_t lo, std::size_t hi);
  /// Standard normal via Box-Muller.
  double normal();
  /// Circular complex normal with E|z|^2 = 1.
  Complex complex_normal();
  ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_{};
  std::uint64_t stream_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace isometrica
