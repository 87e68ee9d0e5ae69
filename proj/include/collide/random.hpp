#pragma once

#include <bit>
#include <cstdint>
#include <limits>

namespace collide::random {

/// One SplitMix64 step; advances state.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept
{
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Key for stream `index` under master `seed`. Distinct (seed, index) pairs
/// give statistically unrelated keys.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) noexcept
{
  std::uint64_t s = seed;
  std::uint64_t k = splitmix64(s);
  s = k ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  splitmix64(s);
  return splitmix64(s);
}

/// xoshiro256** (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256
{
public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256(std::uint64_t seed) noexcept
  {
    std::uint64_t s = seed;
    for (auto& word : state_)
      word = splitmix64(s);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept
  {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept
  {
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

private:
  std::uint64_t state_[4]{};
};

/// Independent generator for trial `trial` of a run seeded with `seed`.
/// Results never depend on which thread executes the trial.
inline Xoshiro256 trial_stream(std::uint64_t seed, std::uint64_t trial) noexcept
{
  return Xoshiro256(stream_key(seed, trial));
}

/// Uniform double in [0, 1) with 53 random bits.
template <class Rng>
double uniform01(Rng& rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace collide::random
