#pragma once

#include <array>
#include <cstdint>

namespace dinaq {

using RngSeed = std::uint64_t;

/// Deterministic random stream (xoshiro256++ seeded through splitmix64).
///
/// The same seed always yields the same bit stream for a given build, so
/// runs are reproducible end to end. Independent substreams for parallel
/// chains come from for_stream(seed, stream); one generator must never be
/// shared across concurrent chains.
class Rng {
 public:
  explicit Rng(RngSeed seed);

  /// Generator for substream `stream` of the run seeded with `seed`.
  static Rng for_stream(RngSeed seed, std::uint64_t stream);

  std::uint64_t next_u64();

  /// Uniform draw strictly inside (0, 1).
  double next_uniform();

  /// Standard normal draw via the inverse CDF.
  double next_normal();

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace dinaq
