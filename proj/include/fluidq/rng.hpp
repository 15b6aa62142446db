#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace fluidq {

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Stream identifier for replication `replication` of experiment cell `cell`.
constexpr std::uint64_t derive_stream(std::uint32_t cell, std::uint32_t replication) {
  return (static_cast<std::uint64_t>(cell) << 32) | replication;
}

/// Counter-based generator. The output is a pure function of
/// (seed, stream, position), so independent replications need no shared state.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  /// Number of Philox blocks consumed so far.
  std::uint64_t blocks_used() const { return block_; }

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal (Box-Muller, two variates per block).
  double normal();
  void fill_normal(std::span<double> out);

 private:
  std::array<std::uint32_t, 4> next_block();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace fluidq
