#ifndef STICKYMASS_RANDOM_HPP
#define STICKYMASS_RANDOM_HPP

#include <cstdint>
#include <random>

namespace stickymass {

// splitmix64 finalizer (Steele/Lea/Flood).
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stable combiner for deriving independent per-cell / per-trial seeds from a
// master seed.  Order-sensitive and well mixed; identical inputs always give
// the identical stream, regardless of how work is scheduled.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc908ULL);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  h = splitmix64(h ^ c);
  return h;
}

// Deterministic uniform stream.  Doubles are produced from the raw engine
// output directly (53 high bits), not through std::uniform_real_distribution,
// so sequences are identical across standard library implementations.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1).
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace stickymass

#endif
