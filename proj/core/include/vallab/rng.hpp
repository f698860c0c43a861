#pragma once

#include <cstdint>
#include <random>

namespace vallab {

// splitmix64 step; used to derive decorrelated substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seeded random stream. Substreams are derived from (seed, index) so that
/// batch runners can hand each instance its own independent, reproducible
/// stream regardless of evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  std::mt19937_64& engine() { return engine_; }

  double uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }

  double gauss() {
    return std::normal_distribution<double>(0.0, 1.0)(engine_);
  }

  std::uint64_t seed() const { return seed_; }

  Rng substream(std::uint64_t index) const {
    std::uint64_t s = seed_ ^ (0xd1b54a32d192ed03ULL * (index + 1));
    return Rng(splitmix64(s));
  }

 private:
  static std::uint64_t mix(std::uint64_t s) { return splitmix64(s); }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace vallab
