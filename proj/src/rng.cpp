#include "dinaq/rng.hpp"

#include "dinaq/errors.hpp"
#include "dinaq/special_functions.hpp"

namespace dinaq {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += kGolden);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(RngSeed seed) {
  std::uint64_t sm = seed;
  for (auto& word : state_) word = splitmix64(sm);
}

Rng Rng::for_stream(RngSeed seed, std::uint64_t stream) {
  std::uint64_t sm = seed;
  const std::uint64_t base = splitmix64(sm);
  std::uint64_t sm2 = stream;
  return Rng(base ^ splitmix64(sm2));
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::next_uniform() {
  // 53-bit mantissa shifted to the midpoints of [0,1) cells: never 0 or 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::next_normal() { return normal_quantile(next_uniform()); }

std::uint64_t Rng::next_below(std::uint64_t n) {
  if (n == 0) throw InvalidInputError("next_below: n must be positive");
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

}  // namespace dinaq
