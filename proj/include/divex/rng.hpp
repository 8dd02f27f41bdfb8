#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace divex {

// One splitmix64 step: full-avalanche mixing of a 64-bit word.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Mixes up to three words into one seed. Episode seeds are derived as
// mix64(master_seed, selector_index, repetition); per-episode sub-streams as
// mix64(episode_seed, stream_tag).
constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b = 0,
                              std::uint64_t c = 0) {
  std::uint64_t h = splitmix64(a);
  h = splitmix64(h ^ b);
  h = splitmix64(h ^ c);
  return h;
}

// Deterministic random stream. Doubles come from the top 53 bits of
// mt19937_64 output, so sequences are reproducible across platforms and
// standard-library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform on [0, 1)
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // uniform on [a, b); returns a exactly when the interval is degenerate
  double uniform(double a, double b) { return a + uniform() * (b - a); }

  // uniform index in [0, n); n must be positive
  std::size_t uniform_index(std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace divex
